#pragma once

// Seeded verification suites shared by `alphaembed verify` and the
// acceptance runner. Each suite draws its instances from Rng(seed) and
// reports every failing instance by index.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "alphaembed/cube_move.hpp"
#include "alphaembed/curves.hpp"
#include "alphaembed/elliptic.hpp"
#include "alphaembed/generators.hpp"
#include "alphaembed/io.hpp"
#include "alphaembed/ising.hpp"
#include "alphaembed/propagation.hpp"

namespace alphaembed {

/// Named tolerances. Unknown names are rejected.
class Tolerances {
 public:
  Tolerances()
      : v_{{"route", 1e-9},       {"checkpoint", 1e-12}, {"roundtrip", 1e-10}, {"identity", 1e-10},
           {"pythagoras", 1e-12}, {"quad", 1e-8},        {"drift", 1e-8},      {"center", 1e-6},
           {"span", 1e-10},       {"circumradii", 1e-10}, {"kite", 1e-12},     {"asymptotic", 1e-2},
           {"curve", 1e-9}} {}

  double operator[](const std::string& name) const {
    auto it = v_.find(name);
    if (it == v_.end()) throw DomainError("unknown tolerance '" + name + "'");
    return it->second;
  }

  void set(const std::string& name, double value) {
    auto it = v_.find(name);
    if (it == v_.end()) throw DomainError("unknown tolerance '" + name + "'");
    if (!(value > 0.0) || !std::isfinite(value)) throw DomainError("tolerance '" + name + "' must be positive");
    it->second = value;
  }

  const std::map<std::string, double>& all() const noexcept { return v_; }

 private:
  std::map<std::string, double> v_;
};

struct SuiteResult {
  SuiteResult(std::string name, int count, std::uint64_t s) : suite(std::move(name)), n(count), seed(s) {}

  std::string suite;
  int n = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> failures;
  Json metrics = Json::object();

  bool pass() const noexcept { return failures.empty(); }

  void fail(int index, const std::string& what) { failures.push_back("#" + std::to_string(index) + ": " + what); }

  void track_max(const std::string& key, double v) {
    if (!metrics.contains(key) || metrics[key].get<double>() < v) metrics[key] = v;
  }

  Json to_json() const {
    Json f = Json::array();
    for (const auto& s : failures) f.push_back(s);
    return Json{{"suite", suite}, {"n", n}, {"seed", seed}, {"pass", pass()}, {"metrics", metrics}, {"failures", f}};
  }
};

namespace detail {

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

inline double triple_diff(const ThetaTriple& a, const ThetaTriple& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < 3; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace detail

inline SuiteResult suite_ising_routes(int n, std::uint64_t seed, const Tolerances& tol = {}) {
  SuiteResult r{"ising-routes", n, seed};
  Rng rng(seed);
  r.metrics["max_route_diff"] = 0.0;
  for (int i = 0; i < n; ++i) {
    const ThetaTriple t = random_triangle_triple(rng);
    try {
      const ThetaTriple a = star_from_triangle_baxter(t), b = star_from_triangle_closed(t),
                        c = star_from_triangle_elliptic(t);
      const double d = std::max({detail::triple_diff(a, b), detail::triple_diff(a, c), detail::triple_diff(b, c)});
      r.track_max("max_route_diff", d);
      if (!(d < tol["route"])) r.fail(i, "routes disagree by " + detail::fmt(d));
    } catch (const Error& e) {
      r.fail(i, e.what());
    }
  }
  return r;
}

inline SuiteResult suite_symmetric_checkpoint(const Tolerances& tol = {}) {
  SuiteResult r{"symmetric-checkpoint", 1, 0};
  const double s = std::numbers::pi / 6, t = std::numbers::pi / 3;
  const ThetaTriple tri = ThetaTriple::triangle(s, s, s);
  const double kp_baxter = baxter_kprime(tri), kp_elliptic = solve_modulus(tri).kprime();
  r.metrics["kprime_baxter"] = kp_baxter;
  r.metrics["kprime_elliptic"] = kp_elliptic;
  if (!(std::abs(kp_baxter - 1) < tol["checkpoint"])) r.fail(0, "baxter k' = " + detail::fmt(kp_baxter));
  if (!(std::abs(kp_elliptic - 1) < tol["checkpoint"])) r.fail(0, "elliptic k' = " + detail::fmt(kp_elliptic));
  const ThetaTriple want = ThetaTriple::star(t, t, t);
  for (IsingRoute route : {IsingRoute::Baxter, IsingRoute::Closed, IsingRoute::Elliptic}) {
    const double d = detail::triple_diff(star_from_triangle(tri, route), want);
    const double back = detail::triple_diff(triangle_from_star(want, route), tri);
    r.track_max("max_error", std::max(d, back));
    if (!(d < tol["checkpoint"])) r.fail(0, std::string(to_string(route)) + " star error " + detail::fmt(d));
    if (!(back < tol["checkpoint"])) r.fail(0, std::string(to_string(route)) + " triangle error " + detail::fmt(back));
  }
  return r;
}

inline SuiteResult suite_ising_roundtrip(int n, std::uint64_t seed, const Tolerances& tol = {}) {
  SuiteResult r{"ising-roundtrip", n, seed};
  Rng rng(seed);
  r.metrics["max_roundtrip"] = 0.0;
  r.metrics["max_kw"] = 0.0;
  for (int i = 0; i < n; ++i) {
    const ThetaTriple t = random_triangle_triple(rng);
    try {
      const ThetaTriple s = star_from_triangle_closed(t);
      const double rt = detail::triple_diff(triangle_from_star_closed(s), t);
      // Conjugate the closed star-from-triangle map by theta -> pi/2 - theta.
      const ThetaTriple dual = ThetaTriple::triangle(half_pi - s.at(4), half_pi - s.at(6), half_pi - s.at(2));
      const ThetaTriple img = star_from_triangle_closed(dual);
      const ThetaTriple conj = ThetaTriple::triangle(half_pi - img.at(4), half_pi - img.at(6), half_pi - img.at(2));
      const double kw = detail::triple_diff(triangle_from_star_closed(s), conj);
      r.track_max("max_roundtrip", rt);
      r.track_max("max_kw", kw);
      if (!(rt < tol["roundtrip"])) r.fail(i, "round trip error " + detail::fmt(rt));
      if (!(kw < tol["roundtrip"])) r.fail(i, "duality error " + detail::fmt(kw));
    } catch (const Error& e) {
      r.fail(i, e.what());
    }
  }
  return r;
}

inline SuiteResult suite_elliptic_identities(int n, std::uint64_t seed, const Tolerances& tol = {}) {
  SuiteResult r{"elliptic-identities", n, seed};
  Rng rng(seed);
  r.metrics["max_quarter_shift"] = 0.0;
  r.metrics["max_addition"] = 0.0;
  r.metrics["max_pythagoras"] = 0.0;
  for (int i = 0; i < n; ++i) {
    const Modulus mod = Modulus::from_m(rng.uniform(-5.0, 0.99));
    const double K = complete_K(mod);
    const double tau = rng.uniform(0.01, K - 0.01), tau2 = rng.uniform(0.01, K - 0.01);
    try {
      const QuarterShiftResiduals q = quarter_shift_residuals(tau, mod);
      const double qs = std::max({std::abs(q.r_cn), std::abs(q.r_sn), std::abs(q.r_dn)});
      const double add = std::abs(addition_residual(tau, tau2, mod));
      const JacobiTriple j = jacobi(tau, mod);
      const double py = std::max(std::abs(j.sn * j.sn + j.cn * j.cn - 1),
                                 std::abs(j.dn * j.dn + mod.m() * j.sn * j.sn - 1));
      r.track_max("max_quarter_shift", qs);
      r.track_max("max_addition", add);
      r.track_max("max_pythagoras", py);
      if (!(qs < tol["identity"])) r.fail(i, "quarter shift residual " + detail::fmt(qs));
      if (!(add < tol["identity"])) r.fail(i, "addition residual " + detail::fmt(add));
      if (!(py < tol["pythagoras"])) r.fail(i, "pythagorean residual " + detail::fmt(py));
    } catch (const Error& e) {
      r.fail(i, e.what());
    }
  }
  return r;
}

inline SuiteResult suite_flip_alpha1(int n, std::uint64_t seed, const Tolerances& tol = {}, int scan_grid = 200) {
  SuiteResult r{"flip-alpha1", n, seed};
  Rng rng(seed);
  const ExtendedAlpha one = ExtendedAlpha::finite(1.0);
  r.metrics["max_quad_residual"] = 0.0;
  r.metrics["max_drift"] = 0.0;
  r.metrics["max_center_diff"] = 0.0;
  r.metrics["second_centers"] = 0;
  int second = 0;
  for (int i = 0; i < n; ++i) {
    const GeneratedOneEmbedding g = random_star_1embedding(rng);
    try {
      const OneFlipResult out = cube_move_1embedding(g.config, IsingRoute::Baxter, tol["quad"]);
      const EmbeddingReport rep = verify_embedding(out.output, one, tol["quad"]);
      double worst = 0.0;
      for (const QuadCheck& q : rep.quads) {
        worst = std::max(worst, std::abs(q.residual));
        if (!q.proper || q.orientation != Orientation::Positive) r.fail(i, q.name + " not proper and positive");
      }
      r.track_max("max_quad_residual", worst);
      r.track_max("max_drift", out.boundary_drift);
      if (!(worst < tol["quad"])) r.fail(i, "quad residual " + detail::fmt(worst));
      if (!rep.pass) r.fail(i, "verify_embedding failed");
      if (!(out.boundary_drift < tol["drift"])) r.fail(i, "boundary drift " + detail::fmt(out.boundary_drift));

      const FlipResult fw = solve_forward(g.config, one);
      double best = std::numeric_limits<double>::infinity();
      for (const Candidate& c : fw.candidates) best = std::min(best, distance(c.center, out.output.center()));
      r.track_max("max_center_diff", best);
      if (!(best < tol["center"])) r.fail(i, "curve route center differs by " + detail::fmt(best));

      const auto extra = scan_valid_centers(g.config.hex(), Side::Triangle, one, out.output.center(), scan_grid,
                                            tol["quad"]);
      if (!extra.empty()) {
        second += static_cast<int>(extra.size());
        r.fail(i, "grid scan found " + std::to_string(extra.size()) + " other valid centers");
      }
    } catch (const Error& e) {
      r.fail(i, e.what());
    }
  }
  r.metrics["second_centers"] = second;
  return r;
}

inline SuiteResult suite_flip_generic(int n, std::uint64_t seed, const Tolerances& tol = {},
                                      const std::vector<double>& alphas = {1.5, 3.0, 4.0}) {
  SuiteResult r{"flip-generic", n, seed};
  Rng rng(seed);
  r.metrics["max_residual"] = 0.0;
  int index = 0;
  for (double a : alphas) {
    const ExtendedAlpha alpha = ExtendedAlpha::finite(a);
    int empty = 0;
    for (int i = 0; i < n; ++i, ++index) {
      const CubeConfig cfg = random_alpha_star(rng, alpha);
      try {
        FlipParams params;
        params.quad_tol = tol["quad"];
        const FlipResult fw = solve_forward(cfg, alpha, params);
        if (fw.candidates.empty()) {
          ++empty;
          r.fail(index, "alpha " + detail::fmt(a) + ": no candidate");
        }
        for (const Candidate& c : fw.candidates) {
          r.track_max("max_residual", c.max_residual);
          if (!(c.max_residual < tol["quad"])) r.fail(index, "candidate residual " + detail::fmt(c.max_residual));
        }
      } catch (const Error& e) {
        r.fail(index, e.what());
      }
    }
    char key[48];
    std::snprintf(key, sizeof key, "empty_alpha_%g", a);
    r.metrics[key] = empty;
  }
  return r;
}

inline SuiteResult suite_uniqueness_probe(int n, std::uint64_t seed) {
  SuiteResult r{"uniqueness-probe", n, seed};
  Rng rng(seed);
  int worst = 0;
  for (int i = 0; i < n; ++i) {
    const auto [b1, b2] = random_branch_pair(rng);
    try {
      const int count = uniqueness_probe(b1, b2);
      worst = std::max(worst, count);
      if (count > 2) r.fail(i, std::to_string(count) + " intersections");
    } catch (const Error& e) {
      r.fail(i, e.what());
    }
  }
  r.metrics["max_count"] = worst;
  return r;
}

inline SuiteResult suite_asymptotics(const Tolerances& tol = {}) {
  SuiteResult r{"asymptotics", 4, 0};
  int index = 0;
  for (double a : {1.5, 3.0}) {
    for (double lam : {0.5, 2.0}) {
      const ConstructionCurve c = ConstructionCurve::from_level({0, -1}, {0, 1}, ExtendedAlpha::finite(a), lam);
      const double d4 = std::abs(asymptotic_ratio(c, 1e4) - 1), d5 = std::abs(asymptotic_ratio(c, 1e5) - 1);
      char key[48];
      std::snprintf(key, sizeof key, "dev_alpha_%g_lambda_%g", a, lam);
      r.metrics[key] = Json::array({d4, d5});
      if (!(d4 < tol["asymptotic"])) r.fail(index, std::string(key) + " at 1e4 is " + detail::fmt(d4));
      if (!(d5 < d4)) r.fail(index, std::string(key) + " does not decrease");
      ++index;
    }
  }
  return r;
}

namespace detail {

// Kite A, B, C, D with AB = AD and CB = CD, mirrored in the y axis.
inline Quad random_kite(Rng& rng) {
  const double b = rng.uniform(0.2, 2.0), y = rng.uniform(-0.5, 0.5);
  return Quad({0, y + rng.uniform(0.2, 2.0)}, {b, y}, {0, y - rng.uniform(0.2, 2.0)}, {-b, y});
}

}  // namespace detail

inline SuiteResult suite_geometry(int n, std::uint64_t seed, const Tolerances& tol = {}) {
  SuiteResult r{"geometry", n, seed};
  Rng rng(seed);
  r.metrics["max_circumradii"] = 0.0;
  for (int i = 0; i < n; ++i) {
    const Quad q = random_convex_quad(rng);
    try {
      const auto rad = circumradii(q);
      const SideLengths l = q.sides();
      double lo = rad[0] / l[0], hi = lo;
      for (std::size_t k = 1; k < 4; ++k) {
        lo = std::min(lo, rad[k] / l[k]);
        hi = std::max(hi, rad[k] / l[k]);
      }
      const double d = (hi - lo) / hi;
      r.track_max("max_circumradii", d);
      if (!(d < tol["circumradii"])) r.fail(i, "circumradii not proportional, spread " + detail::fmt(d));
    } catch (const Error& e) {
      r.fail(i, e.what());
    }
  }
  int mismatch = 0;
  for (int i = 0; i < n; ++i) {
    const SideLengths l = random_side_lengths(rng);
    const bool solvable = !solve_alpha(l).empty();
    if (solvable != has_extremal_pair(l)) {
      ++mismatch;
      r.fail(n + i, "solve_alpha and extremal pair disagree");
    }
  }
  r.metrics["union_mismatch"] = mismatch;
  r.metrics["max_kite"] = 0.0;
  for (int i = 0; i < n; ++i) {
    const Quad k = detail::random_kite(rng);
    std::vector<ExtendedAlpha> alphas{ExtendedAlpha::zero(), ExtendedAlpha::plus_inf(), ExtendedAlpha::minus_inf()};
    for (int j = 0; j < 4; ++j) alphas.push_back(ExtendedAlpha::from_double(rng.uniform(-6.0, 6.0)));
    for (const ExtendedAlpha& a : alphas) {
      const double res = std::abs(relative_alpha_residual(k, a));
      r.track_max("max_kite", res);
      if (!(res <= tol["kite"])) r.fail(2 * n + i, "kite fails alpha " + a.to_string());
    }
  }
  return r;
}

inline SuiteResult suite_span_equality(int n, std::uint64_t seed, const Tolerances& tol = {}) {
  SuiteResult r{"span-equality", n, seed};
  Rng rng(seed);
  r.metrics["max_span"] = 0.0;
  r.metrics["max_entry"] = 0.0;
  for (int i = 0; i < n; ++i) {
    const ThetaTriple t = random_triangle_triple(rng);
    try {
      const ThetaTriple s = star_from_triangle_baxter(t);
      const double span = span_equality_residual(t, s);
      const auto entry = entry_identities(t, s);
      const double e = std::max(std::abs(entry[0]), std::abs(entry[1]));
      r.track_max("max_span", span);
      r.track_max("max_entry", e);
      if (!(span < tol["span"])) r.fail(i, "span residual " + detail::fmt(span));
      if (!(e < tol["span"])) r.fail(i, "entry identity residual " + detail::fmt(e));
    } catch (const Error& e) {
      r.fail(i, e.what());
    }
  }
  return r;
}

/// Sampled points lie on their curve and mirror points across the focal
/// axis evaluate identically.
inline SuiteResult suite_curves(int n, std::uint64_t seed, const Tolerances& tol = {}) {
  SuiteResult r{"curves", n, seed};
  Rng rng(seed);
  r.metrics["max_sample_residual"] = 0.0;
  r.metrics["max_mirror"] = 0.0;
  const Rect window{-6, -6, 6, 6};
  for (int i = 0; i < n; ++i) {
    const Point a = rng.point(-2, 2), b = rng.point(-2, 2), c = rng.point(-3, 3);
    if (distance(a, b) < 0.2 || distance(a, c) < 0.1 || distance(b, c) < 0.1) continue;
    const double pick = rng.uniform();
    ExtendedAlpha alpha = ExtendedAlpha::from_double(rng.uniform(-3.0, 4.0));
    if (pick < 0.1) alpha = ExtendedAlpha::zero();
    else if (pick < 0.2) alpha = ExtendedAlpha::plus_inf();
    else if (pick < 0.3) alpha = ExtendedAlpha::minus_inf();
    else if (pick < 0.4) alpha = ExtendedAlpha::finite(1.0);
    else if (pick < 0.5) alpha = ExtendedAlpha::finite(2.0);
    try {
      const ConstructionCurve k = curve_through(a, b, c, alpha);
      const CanonicalFrame& f = k.frame();
      for (const Polyline& pl : sample(k, 200, window)) {
        for (const Point& p : pl) {
          const Point t = f.to_canonical(p);
          const double scale = residual_scale(k, t);
          if (!std::isfinite(scale)) continue;
          const double res = std::abs(evaluate(k, p)) / scale;
          r.track_max("max_sample_residual", res);
          if (!(res < tol["curve"])) {
            r.fail(i, alpha.to_string() + ": sample residual " + detail::fmt(res));
            break;
          }
        }
      }
      const Point t = f.to_canonical(c) + Point{0.3, 0.2};
      const double e1 = evaluate_canonical(k, t), e2 = evaluate_canonical(k, {-t.x, t.y});
      const double mirror = std::abs(e1 - e2) / residual_scale(k, t);
      r.track_max("max_mirror", mirror);
      if (!(mirror < tol["curve"])) r.fail(i, alpha.to_string() + ": mirror asymmetry " + detail::fmt(mirror));
    } catch (const DegenerateError&) {
      continue;
    } catch (const Error& e) {
      r.fail(i, e.what());
    }
  }
  return r;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "elliptic-identities", "ising-routes",  "ising-roundtrip",  "symmetric-checkpoint", "flip-alpha1",
      "flip-generic",        "uniqueness-probe", "asymptotics",  "geometry",             "span-equality",
      "curves"};
  return names;
}

inline SuiteResult run_suite(const std::string& name, int n, std::uint64_t seed, const Tolerances& tol = {}) {
  if (n < 1) throw DomainError("n must be positive");
  if (name == "elliptic-identities") return suite_elliptic_identities(n, seed, tol);
  if (name == "ising-routes") return suite_ising_routes(n, seed, tol);
  if (name == "ising-roundtrip") return suite_ising_roundtrip(n, seed, tol);
  if (name == "symmetric-checkpoint") return suite_symmetric_checkpoint(tol);
  if (name == "flip-alpha1") return suite_flip_alpha1(n, seed, tol);
  if (name == "flip-generic") return suite_flip_generic(n, seed, tol);
  if (name == "uniqueness-probe") return suite_uniqueness_probe(n, seed);
  if (name == "asymptotics") return suite_asymptotics(tol);
  if (name == "geometry") return suite_geometry(n, seed, tol);
  if (name == "span-equality") return suite_span_equality(n, seed, tol);
  if (name == "curves") return suite_curves(n, seed, tol);
  throw DomainError("unknown suite '" + name + "'");
}

}  // namespace alphaembed
