#pragma once

// JSON instance I/O and report serialization. Numbers are printed with
// %.17g; keys keep insertion order.

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "alphaembed/cube_move.hpp"
#include "alphaembed/errors.hpp"
#include "alphaembed/geometry.hpp"
#include "alphaembed/propagation.hpp"

namespace alphaembed {

using Json = nlohmann::ordered_json;

namespace detail {

inline void put_number(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

inline void put_string(std::string& out, const std::string& s) {
  out += Json(s).dump();
}

inline void emit(std::string& out, const Json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) { out += "{}"; return; }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        put_string(out, it.key());
        out += indent < 0 ? ":" : ": ";
        emit(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) { out += "[]"; return; }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat || indent < 0 ? (indent < 0 ? "," : ", ") : ",";
        first = false;
        if (!flat) newline(depth + 1);
        emit(out, e, indent, depth + 1);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: put_number(out, j.get<double>()); return;
    default: out += j.dump();
  }
}

}  // namespace detail

inline std::string to_json_text(const Json& j, int indent = 2) {
  std::string out;
  detail::emit(out, j, indent, 0);
  out += '\n';
  return out;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(path + ": " + e.what());
  }
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("json: ") + e.what());
  }
}

// Scalars and points.

inline double number_from_json(const Json& j, const std::string& what) {
  if (!j.is_number()) throw DomainError(what + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw DomainError(what + ": not finite");
  return v;
}

inline Point point_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) throw DomainError(what + ": expected [x, y]");
  return {number_from_json(j[0], what), number_from_json(j[1], what)};
}

inline Json to_json(Point p) { return Json::array({p.x, p.y}); }
inline Json to_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

inline std::complex<double> complex_from_json(const Json& j, const std::string& what) {
  const Point p = point_from_json(j, what);
  return {p.x, p.y};
}

inline ExtendedAlpha alpha_from_json(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return ExtendedAlpha::plus_inf();
    if (s == "-inf") return ExtendedAlpha::minus_inf();
    if (s == "zero") return ExtendedAlpha::zero();
    throw DomainError("alpha: unknown tag '" + s + "'");
  }
  return ExtendedAlpha::from_double(number_from_json(j, "alpha"));
}

inline Json to_json(const ExtendedAlpha& a) {
  switch (a.kind()) {
    case ExtendedAlpha::Kind::Finite: return a.value();
    case ExtendedAlpha::Kind::Zero: return "zero";
    case ExtendedAlpha::Kind::PlusInf: return "inf";
    default: return "-inf";
  }
}

// Instances.

struct Instance {
  ExtendedAlpha alpha;
  CubeConfig config;
  std::optional<CornerSolution> corners;
};

inline Side side_from_json(const Json& j) {
  if (!j.is_string()) throw DomainError("side: expected \"star\" or \"triangle\"");
  const std::string s = j.get<std::string>();
  if (s == "star") return Side::Star;
  if (s == "triangle") return Side::Triangle;
  throw DomainError("side: expected \"star\" or \"triangle\"");
}

inline CornerSolution corners_from_json(const Json& j, Side side) {
  if (!j.is_object() || !j.contains("w") || !j.contains("inner") || !j.contains("theta"))
    throw DomainError("corners: expected {\"w\", \"inner\", \"theta\"}");
  const Json& w = j["w"];
  const Json& in = j["inner"];
  const Json& th = j["theta"];
  if (!w.is_array() || w.size() != 6 || !in.is_array() || in.size() != 3 || !th.is_array() || th.size() != 3)
    throw DomainError("corners: w needs 6 entries, inner and theta need 3");
  const double a = number_from_json(th[0], "corners.theta"), b = number_from_json(th[1], "corners.theta"),
               c = number_from_json(th[2], "corners.theta");
  CornerSolution s{{}, {}, side == Side::Star ? ThetaTriple::triangle(a, b, c) : ThetaTriple::star(a, b, c)};
  for (std::size_t i = 0; i < 6; ++i) s.w[i] = complex_from_json(w[i], "corners.w");
  for (std::size_t i = 0; i < 3; ++i) s.inner[i] = complex_from_json(in[i], "corners.inner");
  return s;
}

inline Json to_json(const CornerSolution& s) {
  Json w = Json::array(), in = Json::array(), th = Json::array();
  for (const auto& z : s.w) w.push_back(to_json(z));
  for (const auto& z : s.inner) in.push_back(to_json(z));
  for (std::size_t i = 0; i < 3; ++i) th.push_back(s.thetas[i]);
  return Json{{"role", to_string(s.thetas.role())}, {"theta", th}, {"w", w}, {"inner", in}};
}

inline Instance instance_from_json(const Json& j) {
  if (!j.is_object()) throw DomainError("instance: expected a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k != "alpha" && k != "hex" && k != "center" && k != "side" && k != "corners")
      throw DomainError("instance: unknown key '" + k + "'");
  }
  for (const char* k : {"alpha", "hex", "center", "side"})
    if (!j.contains(k)) throw DomainError(std::string("instance: missing key '") + k + "'");
  const Json& hj = j["hex"];
  if (!hj.is_array() || hj.size() != 6) throw DomainError("hex: expected six points");
  std::array<Point, 6> pts{};
  for (std::size_t i = 0; i < 6; ++i) pts[i] = point_from_json(hj[i], "hex");
  const Side side = side_from_json(j["side"]);
  Instance inst{alpha_from_json(j["alpha"]), CubeConfig(side, HexBoundary(pts), point_from_json(j["center"], "center")),
                std::nullopt};
  if (j.contains("corners")) inst.corners = corners_from_json(j["corners"], side);
  return inst;
}

inline Json to_json(const CubeConfig& c) {
  Json hex = Json::array();
  for (const Point& p : c.hex().points()) hex.push_back(to_json(p));
  return Json{{"hex", hex}, {"center", to_json(c.center())}, {"side", to_string(c.side())}};
}

inline Json instance_to_json(const ExtendedAlpha& alpha, const CubeConfig& c) {
  Json j{{"alpha", to_json(alpha)}};
  const Json body = to_json(c);
  for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
  return j;
}

// Reports.

inline Json to_json(const RealizationReport& r) {
  Json res = Json::array();
  for (double v : r.residuals) res.push_back(v);
  return Json{{"residuals", res}, {"max_residual", r.max_residual}, {"pass", r.pass}};
}

inline Json to_json(const EmbeddingReport& r) {
  Json quads = Json::array();
  for (const QuadCheck& q : r.quads)
    quads.push_back(Json{{"name", q.name}, {"proper", q.proper}, {"orientation", to_string(q.orientation)},
                         {"residual", q.residual}});
  Json failures = Json::array();
  for (const auto& f : r.failures) failures.push_back(f);
  return Json{{"quads", quads},
              {"hex_proper", r.hex_proper},
              {"hex_orientation", to_string(r.hex_orientation)},
              {"interiors_disjoint", r.interiors_disjoint},
              {"failures", failures},
              {"pass", r.pass}};
}

inline Json to_json(const Candidate& c) {
  Json res = Json::array();
  for (double v : c.residuals) res.push_back(v);
  return Json{{"center", to_json(c.center)}, {"residuals", res}, {"max_residual", c.max_residual},
              {"proper", c.proper}};
}

}  // namespace alphaembed
