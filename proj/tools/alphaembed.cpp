// alphaembed: command-line front end for the alphaembed headers.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "alphaembed/cube_move.hpp"
#include "alphaembed/curves.hpp"
#include "alphaembed/elliptic.hpp"
#include "alphaembed/errors.hpp"
#include "alphaembed/generators.hpp"
#include "alphaembed/geometry.hpp"
#include "alphaembed/io.hpp"
#include "alphaembed/ising.hpp"
#include "alphaembed/propagation.hpp"
#include "alphaembed/suites.hpp"
#include "alphaembed/svg.hpp"

using namespace alphaembed;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitInput = 2;
constexpr int kExitRange = 3;

struct RunConfig {
  std::optional<std::uint64_t> seed_flag;
  std::optional<int> n;
  std::string format = "json";
  std::string out;
  Tolerances tol;

  std::uint64_t seed() const {
    if (seed_flag) return *seed_flag;
    if (const char* env = std::getenv("ALPHAEMBED_SEED")) {
      try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
        return v;
      } catch (const std::exception&) {
        throw DomainError(std::string("ALPHAEMBED_SEED is not an unsigned integer: ") + env);
      }
    }
    return kDefaultSeed;
  }
};

// --tol.<name> VALUE and --tol.<name>=VALUE are pulled out before CLI11 sees
// the arguments.
std::vector<std::string> extract_tolerances(int argc, char** argv, Tolerances& tol) {
  std::vector<std::string> rest;
  const std::string prefix = "--tol.";
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg.rfind(prefix, 0) != 0) {
      rest.push_back(arg);
      continue;
    }
    std::string name = arg.substr(prefix.size()), value;
    if (const auto eq = name.find('='); eq != std::string::npos) {
      value = name.substr(eq + 1);
      name = name.substr(0, eq);
    } else {
      if (i + 1 >= argc) throw DomainError(arg + " needs a value");
      value = argv[++i];
    }
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw DomainError("tolerance '" + name + "' is not a number: " + value);
    }
    tol.set(name, v);
  }
  return rest;
}

std::vector<double> parse_numbers(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::string s = text;
  for (char& c : s)
    if (c == ',' || c == ';') c = ' ';
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size() || !std::isfinite(v)) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw DomainError(what + ": cannot parse '" + tok + "'");
    }
  }
  return out;
}

std::vector<Point> parse_points(const std::string& text, std::size_t count, const std::string& what) {
  const std::vector<double> v = parse_numbers(text, what);
  if (v.size() != 2 * count) throw DomainError(what + ": expected " + std::to_string(count) + " points");
  std::vector<Point> pts;
  for (std::size_t i = 0; i < count; ++i) pts.push_back({v[2 * i], v[2 * i + 1]});
  return pts;
}

ExtendedAlpha parse_alpha(const std::string& text) {
  if (text == "inf" || text == "+inf" || text == "-inf" || text == "zero") return alpha_from_json(Json(text));
  const std::vector<double> v = parse_numbers(text, "alpha");
  if (v.size() != 1) throw DomainError("alpha: expected one value");
  return ExtendedAlpha::from_double(v[0]);
}

void emit(const RunConfig& rc, const std::string& text) {
  if (rc.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(rc.out, std::ios::binary);
  if (!f) throw DomainError("cannot write " + rc.out);
  f << text;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot write " + path);
  f << text;
}

// Drawing shared by flip and render.
std::string draw(const CubeConfig& cfg, const ExtendedAlpha& alpha, const FlipResult* flip) {
  const Rect box = Rect::bounding(cfg.hex().points());
  const Rect view = box.scaled(1.6);
  SvgDocument doc(view);
  const char* fills[3] = {"#4e79a7", "#f28e2b", "#59a14f"};
  const auto quads = cfg.quad_points();
  for (std::size_t i = 0; i < 3; ++i)
    doc.polygon_fill({quads[i].begin(), quads[i].end()}, fills[i], 0.2);
  for (const auto& q : quads) doc.polyline({q.begin(), q.end()}, "#777777", true, 0.6);
  const auto& hp = cfg.hex().points();
  doc.polyline({hp.begin(), hp.end()}, "black", true, 1.4);
  if (flip) {
    for (const ConstructionCurve* c : {&flip->first, &flip->second})
      for (const Polyline& pl : sample(*c, 400, view)) doc.polyline(pl, "#b07aa1", false, 0.8);
  }
  for (int i = 1; i <= 6; ++i) {
    doc.dot(cfg.hex()[i], "black", 2.5);
    doc.label(cfg.hex()[i], "A" + std::to_string(i));
  }
  doc.dot(cfg.center(), "#e15759", 3.0);
  doc.label(cfg.center(), cfg.side() == Side::Star ? "A0" : "A7", "#e15759");
  if (flip)
    for (const Candidate& c : flip->candidates) doc.dot(c.center, c.proper ? "#59a14f" : "#edc948", 3.5);
  doc.label({view.xmin + 0.02 * view.width(), view.ymin + 0.03 * view.height()}, "alpha = " + alpha.to_string());
  return doc.str();
}

// quad

struct QuadArgs {
  std::string quad, sides, alpha, in;
};

Quad quad_from(const QuadArgs& a, std::optional<ExtendedAlpha>& alpha) {
  std::vector<Point> pts;
  if (!a.in.empty()) {
    const Json j = read_json_file(a.in);
    if (!j.is_object() || !j.contains("quad") || !j["quad"].is_array() || j["quad"].size() != 4)
      throw DomainError("quad file: expected {\"quad\": [[x,y] x4]}");
    for (const auto& p : j["quad"]) pts.push_back(point_from_json(p, "quad"));
    if (j.contains("alpha")) alpha = alpha_from_json(j["alpha"]);
  } else {
    if (a.quad.empty()) throw DomainError("quad: give --quad or --in");
    pts = parse_points(a.quad, 4, "quad");
  }
  if (!a.alpha.empty()) alpha = parse_alpha(a.alpha);
  return Quad(pts[0], pts[1], pts[2], pts[3]);
}

Json sides_json(const SideLengths& l) { return Json::array({l[0], l[1], l[2], l[3]}); }

Json roots_json(const AlphaSolution& s) {
  Json roots = Json::array();
  for (const ExtendedAlpha& a : s.values) roots.push_back(to_json(a));
  return roots;
}

int cmd_quad_check(const RunConfig& rc, const QuadArgs& a) {
  std::optional<ExtendedAlpha> alpha;
  const Quad q = quad_from(a, alpha);
  const SideLengths l = q.sides();
  const PolygonCheck pc = is_proper_polygon(q.vertices());
  Json verts = Json::array();
  for (const Point& p : q.vertices()) verts.push_back(to_json(p));
  Json rep{{"vertices", verts},
           {"sides", sides_json(l)},
           {"proper", pc.proper},
           {"orientation", to_string(pc.orientation)},
           {"kite", is_kite(l, 1e-12)},
           {"extremal_pair", has_extremal_pair(l)}};
  const AlphaSolution sol = solve_alpha(l);
  rep["all_alpha"] = sol.all_alpha;
  rep["alpha_roots"] = roots_json(sol);
  bool pass = pc.proper;
  if (alpha) {
    const double rel = relative_alpha_residual(q, *alpha);
    const bool ok = std::abs(rel) <= rc.tol["quad"];
    rep["alpha"] = to_json(*alpha);
    rep["residual"] = alpha_residual(q, *alpha);
    rep["relative_residual"] = rel;
    rep["is_alpha_quad"] = ok;
    pass = pass && ok;
  }
  Json failures = Json::array();
  if (!pc.proper) failures.push_back("quad is not proper");
  if (alpha && !rep["is_alpha_quad"].get<bool>()) failures.push_back("not an alpha-quad for alpha " + alpha->to_string());
  rep["failures"] = failures;
  rep["pass"] = pass;
  emit(rc, to_json_text(rep));
  return pass ? kExitOk : kExitVerify;
}

int cmd_quad_solve(const RunConfig& rc, const QuadArgs& a) {
  SideLengths l(1, 1, 1, 1);
  if (!a.sides.empty()) {
    const auto v = parse_numbers(a.sides, "sides");
    if (v.size() != 4) throw DomainError("sides: expected four lengths");
    for (double x : v)
      if (!(x > 0)) throw DomainError("sides: lengths must be positive");
    l = SideLengths(v[0], v[1], v[2], v[3]);
  } else {
    std::optional<ExtendedAlpha> ignored;
    l = quad_from(a, ignored).sides();
  }
  const AlphaSolution sol = solve_alpha(l);
  Json rep{{"sides", sides_json(l)},
           {"extremal_pair", has_extremal_pair(l)},
           {"all_alpha", sol.all_alpha},
           {"alpha_roots", roots_json(sol)}};
  emit(rc, to_json_text(rep));
  return kExitOk;
}

// curve

struct CurveArgs {
  std::string alpha, foci, through, lambda, window, foci2, through2;
};

ConstructionCurve curve_from(const std::string& foci, const std::string& through, const std::string& lambda,
                             const ExtendedAlpha& alpha) {
  const auto f = parse_points(foci, 2, "foci");
  if (!through.empty()) return curve_through(f[0], f[1], parse_points(through, 1, "through")[0], alpha);
  if (lambda.empty()) throw DomainError("curve: give --through or --lambda");
  const auto v = parse_numbers(lambda, "lambda");
  if (v.size() != 1) throw DomainError("lambda: expected one value");
  return ConstructionCurve::from_level(f[0], f[1], alpha, v[0]);
}

Rect window_from(const std::string& text, const ConstructionCurve& c) {
  if (text.empty()) {
    const Point a = c.focus_a(), b = c.focus_b();
    const double s = distance(a, b);
    const Point m = 0.5 * (a + b);
    return {m.x - 4 * s, m.y - 4 * s, m.x + 4 * s, m.y + 4 * s};
  }
  const auto v = parse_numbers(text, "window");
  if (v.size() != 4 || !(v[2] > v[0]) || !(v[3] > v[1])) throw DomainError("window: expected xmin,ymin,xmax,ymax");
  return {v[0], v[1], v[2], v[3]};
}

Json curve_json(const ConstructionCurve& c) {
  return Json{{"alpha", to_json(c.alpha())},
              {"foci", Json::array({to_json(c.focus_a()), to_json(c.focus_b())})},
              {"lambda", c.lambda()},
              {"empty", is_empty(c)}};
}

int cmd_curve_sample(const RunConfig& rc, const CurveArgs& a) {
  const ConstructionCurve c = curve_from(a.foci, a.through, a.lambda, parse_alpha(a.alpha));
  const Rect w = window_from(a.window, c);
  const int n = rc.n.value_or(400);
  if (n < 2) throw DomainError("n must be at least 2");
  const std::vector<Polyline> pieces = sample(c, n, w);
  if (rc.format == "csv") {
    std::string s = "piece,x,y\n";
    char buf[96];
    for (std::size_t i = 0; i < pieces.size(); ++i)
      for (const Point& p : pieces[i]) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", i, p.x, p.y);
        s += buf;
      }
    emit(rc, s);
  } else if (rc.format == "svg") {
    SvgDocument doc(w);
    for (const Polyline& pl : pieces) doc.polyline(pl, "#4e79a7");
    doc.dot(c.focus_a(), "black");
    doc.dot(c.focus_b(), "black");
    doc.label(c.focus_a(), "A");
    doc.label(c.focus_b(), "B");
    emit(rc, doc.str());
  } else {
    Json rep = curve_json(c);
    rep["window"] = Json::array({w.xmin, w.ymin, w.xmax, w.ymax});
    Json pl = Json::array();
    for (const Polyline& piece : pieces) {
      Json pts = Json::array();
      for (const Point& p : piece) pts.push_back(to_json(p));
      pl.push_back(pts);
    }
    rep["polylines"] = pl;
    emit(rc, to_json_text(rep));
  }
  return kExitOk;
}

int cmd_curve_intersect(const RunConfig& rc, const CurveArgs& a) {
  const ExtendedAlpha alpha = parse_alpha(a.alpha);
  const ConstructionCurve c1 = curve_from(a.foci, a.through, "", alpha);
  const ConstructionCurve c2 = curve_from(a.foci2, a.through2, "", alpha);
  SearchParams sp;
  if (!a.window.empty()) sp.window = window_from(a.window, c1);
  Json pts = Json::array();
  for (const Point& p : intersect(c1, c2, sp)) pts.push_back(to_json(p));
  Json rep{{"first", curve_json(c1)}, {"second", curve_json(c2)}, {"points", pts}};
  emit(rc, to_json_text(rep));
  return kExitOk;
}

// flip

struct FlipArgs {
  std::string in, svg;
};

Instance load_instance(const std::string& path) {
  if (path.empty()) throw StageError("input", "give --in");
  try {
    return instance_from_json(read_json_file(path));
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError("input", e.what());
  }
}

int cmd_flip(const RunConfig& rc, const FlipArgs& a) {
  const Instance inst = load_instance(a.in);
  const CubeConfig& cfg = inst.config;
  const RealizationReport input_rep = verify_realization(cfg, inst.alpha, rc.tol["quad"]);
  if (!input_rep.pass) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", input_rep.max_residual);
    throw StageError("input", std::string("not an alpha-realization, max relative residual ") + buf);
  }
  FlipParams params;
  params.quad_tol = rc.tol["quad"];
  FlipResult res = [&] {
    try {
      return cfg.side() == Side::Star ? solve_forward(cfg, inst.alpha, params) : solve_backward(cfg, inst.alpha, params);
    } catch (const NumericRangeError&) {
      throw;
    } catch (const Error& e) {
      throw StageError("solve", e.what());
    }
  }();
  const Side out_side = cfg.side() == Side::Star ? Side::Triangle : Side::Star;

  Json cands = Json::array();
  int verified = 0, embedded = 0;
  for (const Candidate& c : res.candidates) {
    const CubeConfig out(out_side, cfg.hex(), c.center);
    const RealizationReport rr = verify_realization(out, inst.alpha, rc.tol["quad"]);
    const EmbeddingReport er = verify_embedding(out, inst.alpha, rc.tol["quad"]);
    if (rr.pass) ++verified;
    if (er.pass) ++embedded;
    Json cj = to_json(c);
    cj["realization"] = to_json(rr);
    cj["embedding"] = to_json(er);
    cands.push_back(cj);
  }
  Json rep{{"input", instance_to_json(inst.alpha, cfg)},
           {"input_realization", to_json(input_rep)},
           {"candidates", cands},
           {"verified", verified},
           {"embedded", embedded}};
  if (res.warning) rep["warning"] = *res.warning;

  bool agree = true;
  const ExtendedAlpha& al = inst.alpha;
  if (al.is_finite() && al.value() == 1.0) {
    Json cross{{"route", "propagation"}};
    if (cfg.side() != Side::Star) {
      cross["ran"] = false;
      cross["reason"] = "the propagation pipeline starts from the star side";
    } else if (!verify_embedding(cfg, al, rc.tol["quad"]).pass) {
      cross["ran"] = false;
      cross["reason"] = "input is not a proper 1-embedding";
    } else {
      const OneFlipResult one = cube_move_1embedding(cfg, IsingRoute::Baxter, rc.tol["quad"]);
      double best = std::numeric_limits<double>::infinity();
      for (const Candidate& c : res.candidates) best = std::min(best, distance(c.center, one.output.center()));
      agree = best < rc.tol["center"];
      cross["ran"] = true;
      cross["center"] = to_json(one.output.center());
      cross["boundary_drift"] = one.boundary_drift;
      cross["center_diff"] = best;
      cross["agree"] = agree;
      cross["triangle_corners"] = to_json(one.triangle_corners);
      cross["star_corners"] = to_json(one.star_corners);
    }
    rep["cross_check"] = cross;
  }
  const bool ok = verified >= 1 && agree;
  rep["pass"] = ok;

  const std::string svg = draw(cfg, inst.alpha, &res);
  if (!a.svg.empty()) write_file(a.svg, svg);
  emit(rc, rc.format == "svg" ? svg : to_json_text(rep));
  return ok ? kExitOk : kExitVerify;
}

int cmd_render(const RunConfig& rc, const FlipArgs& a) {
  const Instance inst = load_instance(a.in);
  std::optional<FlipResult> res;
  try {
    res = inst.config.side() == Side::Star ? solve_forward(inst.config, inst.alpha)
                                           : solve_backward(inst.config, inst.alpha);
  } catch (const Error&) {
    res.reset();
  }
  emit(rc, draw(inst.config, inst.alpha, res ? &*res : nullptr));
  return kExitOk;
}

// ising

struct IsingArgs {
  std::string theta, J, x, direction = "star", route = "all", in, json;
};

Json triple_json(const ThetaTriple& t) {
  Json th = Json::array(), J = Json::array(), x = Json::array(), labels = Json::array();
  for (std::size_t i = 0; i < 3; ++i) {
    th.push_back(t[i]);
    J.push_back(J_from_theta(Theta(t[i])));
    x.push_back(x_from_theta(Theta(t[i])));
    labels.push_back(t.labels()[i]);
  }
  return Json{{"role", to_string(t.role())}, {"labels", labels}, {"theta", th}, {"J", J}, {"x", x}};
}

int cmd_ising(const RunConfig& rc, IsingArgs a) {
  std::optional<Json> spec;
  if (!a.in.empty()) spec = read_json_file(a.in);
  if (!a.json.empty()) spec = parse_json_text(a.json);
  std::string kind;
  std::vector<double> vals;
  if (spec) {
    if (!spec->is_object()) throw DomainError("ising: expected a JSON object");
    for (auto it = spec->begin(); it != spec->end(); ++it) {
      const std::string& k = it.key();
      if (k == "theta" || k == "J" || k == "x") {
        if (!kind.empty()) throw DomainError("ising: give exactly one of theta, J, x");
        kind = k;
        if (!it.value().is_array()) throw DomainError("ising: " + k + " must be an array");
        for (const auto& v : it.value()) vals.push_back(number_from_json(v, k));
      } else if (k == "direction" || k == "route") {
        if (!it.value().is_string()) throw DomainError("ising: " + k + " must be a string");
        (k == "direction" ? a.direction : a.route) = it.value().get<std::string>();
      } else {
        throw DomainError("ising: unknown key '" + k + "'");
      }
    }
  } else {
    const int given = !a.theta.empty() + !a.J.empty() + !a.x.empty();
    if (given != 1) throw DomainError("ising: give exactly one of --theta, --J, --x");
    kind = !a.theta.empty() ? "theta" : !a.J.empty() ? "J" : "x";
    vals = parse_numbers(!a.theta.empty() ? a.theta : !a.J.empty() ? a.J : a.x, kind);
  }
  if (kind.empty()) throw DomainError("ising: give one of theta, J, x");
  if (vals.size() != 3) throw DomainError("ising: expected three values");
  std::array<double, 3> th{};
  for (std::size_t i = 0; i < 3; ++i)
    th[i] = kind == "theta" ? Theta(vals[i]).value() : kind == "J" ? theta_from_J(vals[i]).value()
                                                                     : theta_from_x(vals[i]).value();
  if (a.direction != "star" && a.direction != "triangle")
    throw DomainError("ising: direction must be star or triangle");
  std::vector<IsingRoute> routes;
  if (a.route == "all") routes = {IsingRoute::Baxter, IsingRoute::Closed, IsingRoute::Elliptic};
  else if (a.route == "baxter") routes = {IsingRoute::Baxter};
  else if (a.route == "closed") routes = {IsingRoute::Closed};
  else if (a.route == "elliptic") routes = {IsingRoute::Elliptic};
  else throw DomainError("ising: route must be baxter, closed, elliptic or all");

  const bool to_star = a.direction == "star";
  const ThetaTriple input = to_star ? ThetaTriple::triangle(th[0], th[1], th[2]) : ThetaTriple::star(th[0], th[1], th[2]);
  Json results = Json::object();
  std::vector<ThetaTriple> outs;
  for (IsingRoute r : routes) {
    outs.push_back(to_star ? star_from_triangle(input, r) : triangle_from_star(input, r));
    results[to_string(r)] = triple_json(outs.back());
  }
  const ThetaTriple& tri = to_star ? input : outs.front();
  const double kp = baxter_kprime(tri);
  double diff = 0.0;
  for (const ThetaTriple& o : outs)
    for (std::size_t i = 0; i < 3; ++i) diff = std::max(diff, std::abs(o[i] - outs.front()[i]));
  const bool agree = diff < rc.tol["route"];
  Json rep{{"direction", a.direction},
           {"input", triple_json(input)},
           {"kprime", kp},
           {"m", 1.0 - kp * kp},
           {"results", results},
           {"max_route_diff", diff},
           {"agree", agree}};
  emit(rc, to_json_text(rep));
  return agree ? kExitOk : kExitVerify;
}

// elliptic

struct EllipticArgs {
  std::string fn;
  std::optional<double> m, kprime, tau, theta;
};

int cmd_elliptic(const RunConfig& rc, const EllipticArgs& a) {
  if (a.m.has_value() == a.kprime.has_value()) throw DomainError("elliptic: give exactly one of --m, --kprime");
  const Modulus mod = a.m ? Modulus::from_m(*a.m) : Modulus::from_kprime(*a.kprime);
  Json rep{{"fn", a.fn}, {"m", mod.m()}, {"kprime", mod.kprime()}};
  auto need = [&](const std::optional<double>& v, const char* name) {
    if (!v) throw DomainError("elliptic " + a.fn + ": needs --" + name);
    rep[name] = *v;
    return *v;
  };
  if (a.fn == "K") {
    rep["value"] = complete_K(mod);
  } else if (a.fn == "F") {
    rep["value"] = incomplete_F(need(a.theta, "theta"), mod);
  } else if (a.fn == "am") {
    rep["value"] = am(need(a.tau, "tau"), mod);
  } else if (a.fn == "sn" || a.fn == "cn" || a.fn == "dn") {
    const JacobiTriple j = jacobi(need(a.tau, "tau"), mod);
    rep["value"] = a.fn == "sn" ? j.sn : a.fn == "cn" ? j.cn : j.dn;
  } else if (a.fn.size() == 2 && std::string("scdn").find(a.fn[0]) != std::string::npos &&
             std::string("scdn").find(a.fn[1]) != std::string::npos) {
    const auto v = pq(a.fn[0], a.fn[1], need(a.tau, "tau"), mod);
    if (!v) throw NumericRangeError("elliptic " + a.fn + ": pole at tau");
    rep["value"] = *v;
  } else if (a.fn == "jacobi") {
    const JacobiTriple j = jacobi(need(a.tau, "tau"), mod);
    rep["sn"] = j.sn;
    rep["cn"] = j.cn;
    rep["dn"] = j.dn;
  } else {
    throw DomainError("elliptic: unknown function '" + a.fn + "'");
  }
  emit(rc, to_json_text(rep));
  return kExitOk;
}

// verify

int cmd_verify(const RunConfig& rc, const std::string& suite) {
  const int n = rc.n.value_or(100);
  const std::uint64_t seed = rc.seed();
  int code = kExitOk;
  if (suite == "all") {
    Json all = Json::array();
    for (const std::string& name : suite_names()) {
      const SuiteResult r = run_suite(name, n, seed, rc.tol);
      if (!r.pass()) code = kExitVerify;
      all.push_back(r.to_json());
    }
    emit(rc, to_json_text(all));
    return code;
  }
  const SuiteResult r = run_suite(suite, n, seed, rc.tol);
  emit(rc, to_json_text(r.to_json()));
  return r.pass() ? kExitOk : kExitVerify;
}

int report(int code, const std::string& stage, const std::string& what) {
  Json err{{"error", what}, {"exit_code", code}};
  if (!stage.empty()) err["stage"] = stage;
  std::cerr << to_json_text(err);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig rc;
  std::vector<std::string> args;
  try {
    args = extract_tolerances(argc, argv, rc.tol);
  } catch (const Error& e) {
    return report(kExitInput, "", e.what());
  }

  CLI::App app{"alpha-quads, construction curves and cube moves"};
  app.fallthrough();
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  int n = 0;
  app.add_option("--seed", seed, "random seed (falls back to ALPHAEMBED_SEED)");
  app.add_option("--n", n, "instance or sample count");
  app.add_option("--format", rc.format, "output format")->check(CLI::IsMember({"json", "csv", "svg"}));
  app.add_option("--out", rc.out, "write output to this file");

  QuadArgs qa;
  auto* quad = app.add_subcommand("quad", "alpha-quad checks");
  quad->require_subcommand(1);
  auto* qcheck = quad->add_subcommand("check", "properness and alpha residual of a quad");
  auto* qsolve = quad->add_subcommand("solve-alpha", "alpha values making the side lengths an alpha-quad");
  for (auto* s : {qcheck, qsolve}) {
    s->add_option("--quad", qa.quad, "four points: x,y x,y x,y x,y");
    s->add_option("--in", qa.in, "JSON file {\"quad\": [...], \"alpha\": ...}");
  }
  qcheck->add_option("--alpha", qa.alpha, "number, inf, -inf or zero");
  qsolve->add_option("--sides", qa.sides, "AB,BC,CD,DA");

  CurveArgs ca;
  auto* curve = app.add_subcommand("curve", "construction curves");
  curve->require_subcommand(1);
  auto* csample = curve->add_subcommand("sample", "polyline samples of a curve");
  auto* cinter = curve->add_subcommand("intersect", "intersection points of two curves");
  for (auto* s : {csample, cinter}) {
    s->add_option("--alpha", ca.alpha, "number, inf, -inf or zero")->required();
    s->add_option("--foci", ca.foci, "A and B: x,y x,y")->required();
    s->add_option("--through", ca.through, "point on the curve: x,y");
    s->add_option("--window", ca.window, "xmin,ymin,xmax,ymax");
  }
  csample->add_option("--lambda", ca.lambda, "level value instead of --through");
  cinter->add_option("--foci2", ca.foci2, "foci of the second curve")->required();
  cinter->add_option("--through2", ca.through2, "point on the second curve")->required();
  cinter->get_option("--through")->required();

  FlipArgs fa;
  auto* flip = app.add_subcommand("flip", "solve the cube move for an instance");
  flip->add_option("--in", fa.in, "instance JSON")->required();
  flip->add_option("--svg", fa.svg, "also write an SVG drawing here");

  FlipArgs ra;
  auto* render = app.add_subcommand("render", "SVG drawing of an instance");
  render->add_option("--in", ra.in, "instance JSON")->required();

  IsingArgs ia;
  auto* ising = app.add_subcommand("ising", "Ising star-triangle transformation");
  ising->require_subcommand(1);
  auto* itrans = ising->add_subcommand("transform", "transform a weight triple");
  itrans->add_option("--theta", ia.theta, "three angles");
  itrans->add_option("--J", ia.J, "three couplings");
  itrans->add_option("--x", ia.x, "three x = tan(theta/2) values");
  itrans->add_option("--direction", ia.direction, "star or triangle (the side produced)");
  itrans->add_option("--route", ia.route, "baxter, closed, elliptic or all");
  itrans->add_option("--in", ia.in, "JSON file with the same keys");
  itrans->add_option("--json", ia.json, "inline JSON with the same keys");

  EllipticArgs ea;
  auto* ell = app.add_subcommand("elliptic", "elliptic integrals and Jacobi functions");
  ell->require_subcommand(1);
  auto* eeval = ell->add_subcommand("eval", "evaluate one function");
  eeval->add_option("--fn", ea.fn, "K, F, am, sn, cn, dn, jacobi or a pq pair like sc")->required();
  eeval->add_option("--m", ea.m, "parameter m = k^2");
  eeval->add_option("--kprime", ea.kprime, "complementary modulus");
  eeval->add_option("--tau", ea.tau, "argument of am and the Jacobi functions");
  eeval->add_option("--theta", ea.theta, "amplitude for F");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "seeded verification suites");
  std::string names = "all";
  for (const auto& s : suite_names()) names += ", " + s;
  verify->add_option("--suite", suite, names)->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }
  if (app.count("--seed")) rc.seed_flag = seed;
  if (app.count("--n")) rc.n = n;

  try {
    if (*qcheck) return cmd_quad_check(rc, qa);
    if (*qsolve) return cmd_quad_solve(rc, qa);
    if (*csample) return cmd_curve_sample(rc, ca);
    if (*cinter) return cmd_curve_intersect(rc, ca);
    if (*flip) return cmd_flip(rc, fa);
    if (*render) {
      rc.format = "svg";
      return cmd_render(rc, ra);
    }
    if (*itrans) return cmd_ising(rc, ia);
    if (*eeval) return cmd_elliptic(rc, ea);
    if (*verify) return cmd_verify(rc, suite);
  } catch (const StageError& e) {
    return report(e.stage() == "input" ? kExitInput : kExitVerify, e.stage(), e.what());
  } catch (const NumericRangeError& e) {
    return report(kExitRange, "", e.what());
  } catch (const SingularityError& e) {
    return report(kExitRange, "", e.what());
  } catch (const Error& e) {
    return report(kExitInput, "", e.what());
  }
  return kExitInput;
}
