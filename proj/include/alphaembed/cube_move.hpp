#pragma once

// The cube move on the six-point boundary A1..A6: the star side has center
// A0 and quads A1A2A3A0, A3A4A5A0, A5A6A1A0; the triangle side has center A7
// and quads A6A1A2A7, A2A3A4A7, A4A5A6A7.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "alphaembed/curves.hpp"
#include "alphaembed/errors.hpp"
#include "alphaembed/geometry.hpp"

namespace alphaembed {

inline constexpr double kCollinearityTol = 1e-10;

namespace detail {

// Points rescaled into the unit box around their bounding-box center.
inline std::vector<Point> normalized(std::span<const Point> pts) {
  const Rect r = Rect::bounding(pts);
  const double s = std::max(r.width(), r.height());
  const Point c = r.center();
  std::vector<Point> out;
  for (const Point& p : pts) out.push_back((p - c) / (s > 0 ? s : 1.0));
  return out;
}

inline bool any_three_aligned(std::span<const Point> pts, double tol) {
  const std::vector<Point> q = normalized(pts);
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = i + 1; j < q.size(); ++j)
      for (std::size_t k = j + 1; k < q.size(); ++k)
        if (std::abs(cross(q[j] - q[i], q[k] - q[i])) <= tol) return true;
  return false;
}

}  // namespace detail

class HexBoundary {
 public:
  explicit HexBoundary(const std::array<Point, 6>& a) : a_(a) {
    for (const Point& p : a_)
      if (!is_finite(p)) throw DomainError("hexagon vertex is not finite");
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j)
        if (a_[i] == a_[j]) throw DomainError("hexagon vertices must be distinct");
    if (detail::any_three_aligned(a_, kCollinearityTol)) throw DegenerateError("three hexagon vertices are aligned");
  }

  // A_i for i in 1..6.
  Point operator[](int i) const {
    if (i < 1 || i > 6) throw ContractError("hexagon index must be in 1..6");
    return a_[static_cast<std::size_t>(i - 1)];
  }
  const std::array<Point, 6>& points() const noexcept { return a_; }

  // A1A2, A2A3, ..., A6A1.
  std::array<double, 6> sides() const {
    std::array<double, 6> s{};
    for (std::size_t i = 0; i < 6; ++i) s[i] = distance(a_[i], a_[(i + 1) % 6]);
    return s;
  }

 private:
  std::array<Point, 6> a_;
};

enum class Side { Star, Triangle };

inline const char* to_string(Side s) { return s == Side::Star ? "star" : "triangle"; }

/// A hexagon and a center with its three quads. Star: center A0; triangle:
/// center A7.
class CubeConfig {
 public:
  CubeConfig(Side side, const HexBoundary& hex, Point center) : side_(side), hex_(hex), center_(center) {
    if (!is_finite(center)) throw DomainError("center is not finite");
    for (const Point& p : hex.points())
      if (p == center) throw DomainError("center coincides with a hexagon vertex");
  }

  Side side() const noexcept { return side_; }
  const HexBoundary& hex() const noexcept { return hex_; }
  Point center() const noexcept { return center_; }

  std::array<std::array<Point, 4>, 3> quad_points() const {
    const auto& h = hex_;
    const Point o = center_;
    if (side_ == Side::Star) return {{{h[1], h[2], h[3], o}, {h[3], h[4], h[5], o}, {h[5], h[6], h[1], o}}};
    return {{{h[6], h[1], h[2], o}, {h[2], h[3], h[4], o}, {h[4], h[5], h[6], o}}};
  }

  std::array<Quad, 3> quads() const {
    const auto q = quad_points();
    return {Quad(q[0][0], q[0][1], q[0][2], q[0][3]), Quad(q[1][0], q[1][1], q[1][2], q[1][3]),
            Quad(q[2][0], q[2][1], q[2][2], q[2][3])};
  }

  std::array<std::string, 3> quad_names() const {
    if (side_ == Side::Star) return {"A1A2A3A0", "A3A4A5A0", "A5A6A1A0"};
    return {"A6A1A2A7", "A2A3A4A7", "A4A5A6A7"};
  }

 private:
  Side side_;
  HexBoundary hex_;
  Point center_;
};

using StarConfig = CubeConfig;
using TriangleConfig = CubeConfig;

inline CubeConfig star_config(const HexBoundary& h, Point a0) { return {Side::Star, h, a0}; }
inline CubeConfig triangle_config(const HexBoundary& h, Point a7) { return {Side::Triangle, h, a7}; }

/// Alternating functional of the six sides; vanishes on the boundary of
/// any realization and equals the sum of the three star-quad residuals.
inline double hex_residual(const HexBoundary& h, const ExtendedAlpha& alpha) {
  const auto s = h.sides();
  switch (alpha.kind()) {
    case ExtendedAlpha::Kind::Finite: {
      double r = 0.0;
      for (std::size_t i = 0; i < 6; ++i) r += (i % 2 == 0 ? 1.0 : -1.0) * std::pow(s[i], alpha.value());
      return r;
    }
    case ExtendedAlpha::Kind::Zero: {
      double r = 0.0;
      for (std::size_t i = 0; i < 6; ++i) r += (i % 2 == 0 ? 1.0 : -1.0) * std::log(s[i]);
      return r;
    }
    case ExtendedAlpha::Kind::PlusInf:
      return std::max({s[0], s[2], s[4]}) - std::max({s[1], s[3], s[5]});
    case ExtendedAlpha::Kind::MinusInf:
      return std::min({s[0], s[2], s[4]}) - std::min({s[1], s[3], s[5]});
  }
  return 0.0;
}

struct RealizationReport {
  std::array<double, 3> residuals{};  // relative alpha residuals per quad
  double max_residual = 0.0;
  bool pass = false;
};

inline RealizationReport verify_realization(const CubeConfig& cfg, const ExtendedAlpha& alpha, double tol) {
  RealizationReport r;
  const auto qs = cfg.quads();
  for (std::size_t i = 0; i < 3; ++i) {
    r.residuals[i] = relative_alpha_residual(qs[i], alpha);
    r.max_residual = std::max(r.max_residual, std::abs(r.residuals[i]));
  }
  r.pass = r.max_residual <= tol;
  return r;
}

namespace detail {

// Strictly inside a proper polygon, at least `margin` away from its edges.
inline bool strictly_inside(Point p, std::span<const Point> poly, double margin) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point a = poly[j], b = poly[i];
    const Point e = b - a;
    const double len = norm(e);
    const double t = std::clamp(dot(p - a, e) / (len * len), 0.0, 1.0);
    if (distance(p, a + t * e) <= margin) return false;
    if ((a.y > p.y) != (b.y > p.y) && p.x < a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x)) inside = !inside;
  }
  return inside;
}

inline bool segments_cross(Point a, Point b, Point c, Point d) {
  const double o1 = cross(b - a, c - a), o2 = cross(b - a, d - a);
  const double o3 = cross(d - c, a - c), o4 = cross(d - c, b - c);
  return ((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0));
}

}  // namespace detail

struct QuadCheck {
  std::string name;
  bool proper = false;
  Orientation orientation = Orientation::Undefined;
  double residual = 0.0;
};

struct EmbeddingReport {
  std::array<QuadCheck, 3> quads;
  bool hex_proper = false;
  Orientation hex_orientation = Orientation::Undefined;
  bool interiors_disjoint = false;
  std::vector<std::string> failures;
  bool pass = false;
};

/// Proper, positively oriented alpha-quads with pairwise disjoint interiors.
/// Disjointness is checked by edge crossings plus a sampled grid.
inline EmbeddingReport verify_embedding(const CubeConfig& cfg, const ExtendedAlpha& alpha, double tol,
                                        int samples = 24) {
  EmbeddingReport rep;
  const auto pts = cfg.quad_points();
  const auto names = cfg.quad_names();
  const auto qs = cfg.quads();
  for (std::size_t i = 0; i < 3; ++i) {
    QuadCheck& qc = rep.quads[i];
    qc.name = names[i];
    const PolygonCheck pc = is_proper_polygon(pts[i]);
    qc.proper = pc.proper;
    qc.orientation = pc.orientation;
    qc.residual = relative_alpha_residual(qs[i], alpha);
    if (!qc.proper) rep.failures.push_back(qc.name + ": not proper");
    else if (qc.orientation != Orientation::Positive) rep.failures.push_back(qc.name + ": negatively oriented");
    if (!(std::abs(qc.residual) <= tol)) rep.failures.push_back(qc.name + ": alpha residual above tolerance");
  }
  const PolygonCheck hc = is_proper_polygon(cfg.hex().points());
  rep.hex_proper = hc.proper;
  rep.hex_orientation = hc.orientation;
  if (!hc.proper) rep.failures.push_back("hexagon: not proper");

  rep.interiors_disjoint = true;
  const Rect box = Rect::bounding(cfg.hex().points());
  const double margin = 1e-9 * std::max(box.width(), box.height());
  for (std::size_t i = 0; i < 3 && rep.interiors_disjoint; ++i) {
    if (!rep.quads[i].proper) continue;
    for (std::size_t j = i + 1; j < 3 && rep.interiors_disjoint; ++j) {
      if (!rep.quads[j].proper) continue;
      bool overlap = false;
      for (std::size_t e = 0; e < 4 && !overlap; ++e)
        for (std::size_t f = 0; f < 4 && !overlap; ++f)
          overlap = detail::segments_cross(pts[i][e], pts[i][(e + 1) % 4], pts[j][f], pts[j][(f + 1) % 4]);
      std::vector<Point> both(pts[i].begin(), pts[i].end());
      both.insert(both.end(), pts[j].begin(), pts[j].end());
      const Rect r = Rect::bounding(both);
      for (int a = 0; a < samples && !overlap; ++a)
        for (int b = 0; b < samples && !overlap; ++b) {
          const Point p{r.xmin + (a + 0.5) * r.width() / samples, r.ymin + (b + 0.5) * r.height() / samples};
          overlap = detail::strictly_inside(p, pts[i], margin) && detail::strictly_inside(p, pts[j], margin);
        }
      if (overlap) {
        rep.interiors_disjoint = false;
        rep.failures.push_back(rep.quads[i].name + " and " + rep.quads[j].name + ": interiors overlap");
      }
    }
  }
  rep.pass = rep.failures.empty();
  return rep;
}

struct FlipParams {
  SearchParams search;
  double quad_tol = 1e-8;  // relative alpha residual accepted for candidates
};

struct Candidate {
  Point center;
  std::array<double, 3> residuals{};
  double max_residual = 0.0;
  bool proper = false;  // passes verify_embedding
};

struct FlipResult {
  std::vector<Candidate> candidates;
  ConstructionCurve first;   // curve through the first new quad
  ConstructionCurve second;  // curve through the second new quad
  std::optional<std::string> warning;
};

namespace detail {

inline FlipResult solve_flip(const CubeConfig& in, const ExtendedAlpha& alpha, const FlipParams& params) {
  const HexBoundary& h = in.hex();
  const bool forward = in.side() == Side::Star;
  // Forward: A6A1A2A7 and A2A3A4A7; backward: A1A2A3A0 and A3A4A5A0.
  ConstructionCurve c1 = forward ? curve_through(h[2], h[6], h[1], alpha) : curve_through(h[1], h[3], h[2], alpha);
  ConstructionCurve c2 = forward ? curve_through(h[2], h[4], h[3], alpha) : curve_through(h[3], h[5], h[4], alpha);
  FlipResult res{{}, c1, c2, std::nullopt};
  const Side out_side = forward ? Side::Triangle : Side::Star;
  const Rect box = Rect::bounding(h.points());
  const double len = std::max(box.width(), box.height());

  for (const Point& p : intersect(c1, c2, params.search)) {
    bool at_vertex = false;
    for (const Point& v : h.points()) at_vertex = at_vertex || distance(p, v) <= 1e-12 * len;
    if (at_vertex) continue;
    const CubeConfig out(out_side, h, p);
    const RealizationReport rr = verify_realization(out, alpha, params.quad_tol);
    if (!rr.pass) continue;
    Candidate c{p, rr.residuals, rr.max_residual, verify_embedding(out, alpha, params.quad_tol).pass};
    res.candidates.push_back(c);
  }
  std::stable_sort(res.candidates.begin(), res.candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.proper != b.proper) return a.proper;
    return a.max_residual < b.max_residual;
  });
  if (res.candidates.empty() && alpha.is_finite() && alpha.value() > 1.0)
    res.warning = "no candidate found although one exists for alpha > 1: solver coverage";
  return res;
}

}  // namespace detail

/// Candidates A7 for a star configuration.
inline FlipResult solve_forward(const CubeConfig& star, const ExtendedAlpha& alpha, const FlipParams& params = {}) {
  if (star.side() != Side::Star) throw ContractError("solve_forward expects a star configuration");
  return detail::solve_flip(star, alpha, params);
}

/// Candidates A0 for a triangle configuration.
inline FlipResult solve_backward(const CubeConfig& tri, const ExtendedAlpha& alpha, const FlipParams& params = {}) {
  if (tri.side() != Side::Triangle) throw ContractError("solve_backward expects a triangle configuration");
  return detail::solve_flip(tri, alpha, params);
}

/// Number of sign changes of branch2's residual along a fine
/// parametrization of branch1 (both alpha = 1, one shared focus).
inline int uniqueness_probe(const ConstructionCurve& b1, const ConstructionCurve& b2, int samples = 200000) {
  if (!b1.alpha().is_finite_value(1.0) || !b2.alpha().is_finite_value(1.0))
    throw ContractError("uniqueness_probe requires alpha = 1 curves");
  const bool aa = b1.focus_a() == b2.focus_a(), ab = b1.focus_a() == b2.focus_b();
  const bool ba = b1.focus_b() == b2.focus_a(), bb = b1.focus_b() == b2.focus_b();
  if ((aa && bb) || (ab && ba)) throw DegenerateError("uniqueness_probe: branches share both foci");
  if (!(aa || ab || ba || bb)) throw ContractError("uniqueness_probe: branches must share one focus");
  if (samples < 2) throw ContractError("uniqueness_probe: need at least two samples");
  if (is_empty(b1) || is_empty(b2)) return 0;

  const double lc = b1.lambda_canonical();
  const double h = std::abs(lc) / 2.0;
  const double sigma = lc < 0 ? -1.0 : 1.0;
  constexpr double T = 40.0;
  auto param = [&](double u) -> Point {
    if (lc == 0.0) return {std::sinh(u), 0.0};
    if (h == 1.0) return {0.0, sigma * (1.0 + std::sinh(std::abs(u)))};
    const double b = std::sqrt((1 - h) * (1 + h));
    return {b * std::sinh(u), sigma * h * std::cosh(u)};
  };
  const double lo = h == 1.0 ? 0.0 : -T;
  int count = 0;
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (int i = 0; i < samples; ++i) {
    const double u = lo + (T - lo) * i / (samples - 1);
    const Point m = b1.frame().from_canonical(param(u));
    const double v = detail::evaluate_or_nan(b2, b2.frame().to_canonical(m));
    if (std::isfinite(prev) && std::isfinite(v) && prev != 0.0 && (v == 0.0 || std::signbit(v) != std::signbit(prev)))
      ++count;
    if (std::isfinite(v)) prev = v;
  }
  return count;
}

/// Centers other than `exclude` that complete the hexagon into a valid
/// embedding of the given side, found on a grid x grid scan of the
/// hexagon's bounding box.
inline std::vector<Point> scan_valid_centers(const HexBoundary& h, Side side, const ExtendedAlpha& alpha,
                                             Point exclude, int grid = 200, double tol = 1e-8) {
  const bool triangle = side == Side::Triangle;
  const ConstructionCurve c1 = triangle ? curve_through(h[2], h[6], h[1], alpha) : curve_through(h[1], h[3], h[2], alpha);
  const ConstructionCurve c2 = triangle ? curve_through(h[2], h[4], h[3], alpha) : curve_through(h[3], h[5], h[4], alpha);
  SearchParams sp;
  sp.window = Rect::bounding(h.points()).scaled(1.2);
  sp.grid = grid;
  sp.trace_samples = 2;
  const double len = std::max(sp.window->width(), sp.window->height());
  std::vector<Point> out;
  for (const Point& p : intersect(c1, c2, sp)) {
    if (distance(p, exclude) <= 1e-7 * len) continue;
    bool at_vertex = false;
    for (const Point& v : h.points()) at_vertex = at_vertex || distance(p, v) <= 1e-12 * len;
    if (at_vertex) continue;
    if (verify_embedding(CubeConfig(side, h, p), alpha, tol).pass) out.push_back(p);
  }
  return out;
}

}  // namespace alphaembed
