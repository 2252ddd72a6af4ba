#pragma once

// Planar points and quads, the alpha-quad family of predicates, and the
// characterizations built on them (extremal pairs, kites, circumradii,
// generic f-quadrilaterals, proper polygons).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "alphaembed/errors.hpp"

namespace alphaembed {

struct Point {
  double x = 0.0;
  double y = 0.0;

  constexpr Point() = default;
  constexpr Point(double x_, double y_) : x(x_), y(y_) {}
  explicit Point(std::complex<double> z) : x(z.real()), y(z.imag()) {}

  std::complex<double> complex() const { return {x, y}; }

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator-(Point a) { return {-a.x, -a.y}; }
  friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend constexpr Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr Point operator/(Point a, double s) { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(Point a, Point b) = default;
};

inline constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Parameter selecting the quad family: a nonzero real, or one of the
/// three symbolic values 0, +inf, -inf.
class ExtendedAlpha {
 public:
  enum class Kind { Finite, Zero, PlusInf, MinusInf };

  static ExtendedAlpha finite(double a) {
    if (!std::isfinite(a) || a == 0.0)
      throw DomainError("ExtendedAlpha::finite requires a finite nonzero value");
    return ExtendedAlpha(Kind::Finite, a);
  }
  static ExtendedAlpha zero() { return ExtendedAlpha(Kind::Zero, 0.0); }
  static ExtendedAlpha plus_inf() { return ExtendedAlpha(Kind::PlusInf, 0.0); }
  static ExtendedAlpha minus_inf() { return ExtendedAlpha(Kind::MinusInf, 0.0); }

  // Maps 0 and +-infinity onto their tags.
  static ExtendedAlpha from_double(double a) {
    if (std::isnan(a)) throw DomainError("alpha is NaN");
    if (a == 0.0) return zero();
    if (std::isinf(a)) return a > 0 ? plus_inf() : minus_inf();
    return finite(a);
  }

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  bool is_zero() const noexcept { return kind_ == Kind::Zero; }
  bool is_infinite() const noexcept {
    return kind_ == Kind::PlusInf || kind_ == Kind::MinusInf;
  }

  // Finite value; 0 for Zero and +-inf for the infinite tags.
  double value() const noexcept {
    switch (kind_) {
      case Kind::Finite: return value_;
      case Kind::Zero: return 0.0;
      case Kind::PlusInf: return std::numeric_limits<double>::infinity();
      case Kind::MinusInf: return -std::numeric_limits<double>::infinity();
    }
    return value_;
  }

  bool is_finite_value(double a) const noexcept { return is_finite() && value_ == a; }

  std::string to_string() const {
    switch (kind_) {
      case Kind::Zero: return "zero";
      case Kind::PlusInf: return "inf";
      case Kind::MinusInf: return "-inf";
      case Kind::Finite: break;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value_);
    return buf;
  }

  friend bool operator==(const ExtendedAlpha&, const ExtendedAlpha&) = default;

 private:
  ExtendedAlpha(Kind k, double v) : kind_(k), value_(v) {}
  Kind kind_;
  double value_;
};

/// f_alpha(x, y): x^a + y^a, x*y, max or min depending on the tag.
inline double f_alpha(double x, double y, const ExtendedAlpha& alpha) {
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError("f_alpha requires positive arguments");
  switch (alpha.kind()) {
    case ExtendedAlpha::Kind::Finite: return std::pow(x, alpha.value()) + std::pow(y, alpha.value());
    case ExtendedAlpha::Kind::Zero: return x * y;
    case ExtendedAlpha::Kind::PlusInf: return std::max(x, y);
    case ExtendedAlpha::Kind::MinusInf: return std::min(x, y);
  }
  return 0.0;
}

/// Four positive side lengths in cyclic order.
class SideLengths {
 public:
  SideLengths(double l1, double l2, double l3, double l4) : l_{l1, l2, l3, l4} {
    for (double v : l_)
      if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("side lengths must be positive and finite");
  }
  double operator[](std::size_t i) const { return l_[i]; }
  const std::array<double, 4>& values() const noexcept { return l_; }
  double max() const { return *std::max_element(l_.begin(), l_.end()); }
  double min() const { return *std::min_element(l_.begin(), l_.end()); }

 private:
  std::array<double, 4> l_;
};

/// Ordered quadrilateral ABCD with pairwise distinct vertices.
class Quad {
 public:
  Quad(Point a, Point b, Point c, Point d) : v_{a, b, c, d} {
    for (const Point& p : v_)
      if (!is_finite(p)) throw DomainError("quad vertex is not finite");
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (v_[i] == v_[j]) throw DomainError("quad vertices must be pairwise distinct");
  }

  Point a() const { return v_[0]; }
  Point b() const { return v_[1]; }
  Point c() const { return v_[2]; }
  Point d() const { return v_[3]; }
  const std::array<Point, 4>& vertices() const noexcept { return v_; }

  // (AB, BC, CD, DA)
  SideLengths sides() const {
    return {distance(v_[0], v_[1]), distance(v_[1], v_[2]), distance(v_[2], v_[3]),
            distance(v_[3], v_[0])};
  }

 private:
  std::array<Point, 4> v_;
};

/// f_alpha(AB, CD) - f_alpha(AD, BC); zero exactly for alpha-quads.
inline double alpha_residual(const SideLengths& l, const ExtendedAlpha& alpha) {
  return f_alpha(l[0], l[2], alpha) - f_alpha(l[3], l[1], alpha);
}
inline double alpha_residual(const Quad& q, const ExtendedAlpha& alpha) {
  return alpha_residual(q.sides(), alpha);
}

// Scale used by every relative residual comparison: the larger of the two
// sides of the defining equation.
inline double alpha_scale(const SideLengths& l, const ExtendedAlpha& alpha) {
  return std::max(f_alpha(l[0], l[2], alpha), f_alpha(l[3], l[1], alpha));
}

inline double relative_alpha_residual(const Quad& q, const ExtendedAlpha& alpha) {
  const SideLengths l = q.sides();
  return alpha_residual(l, alpha) / alpha_scale(l, alpha);
}

inline bool is_alpha_quad(const Quad& q, const ExtendedAlpha& alpha, double tol) {
  if (!(tol > 0.0)) throw ContractError("is_alpha_quad: tolerance must be positive");
  return std::abs(relative_alpha_residual(q, alpha)) <= tol;
}

/// True iff one pair of opposite sides holds both the maximum and the
/// minimum length.
inline bool has_extremal_pair(const SideLengths& l) {
  const double hi = l.max();
  const double lo = l.min();
  auto extremal = [&](double p, double q) {
    return std::max(p, q) == hi && std::min(p, q) == lo;
  };
  return extremal(l[0], l[2]) || extremal(l[1], l[3]);
}

inline bool is_kite(const SideLengths& l, double tol) {
  if (!(tol > 0.0)) throw ContractError("is_kite: tolerance must be positive");
  const double scale = l.max();
  const double p0 = std::min(l[0], l[2]), p1 = std::max(l[0], l[2]);
  const double q0 = std::min(l[1], l[3]), q1 = std::max(l[1], l[3]);
  return std::abs(p0 - q0) <= tol * scale && std::abs(p1 - q1) <= tol * scale;
}

// Scan window and resolution for the finite roots of the alpha equation.
struct AlphaScan {
  double lo = -50.0;
  double hi = 50.0;
  double step = 0.01;
  double tol = 1e-13;
};

/// All alpha for which a quad with the given cyclic sides is an alpha-quad.
/// Kites satisfy every equation, reported through `all_alpha`.
struct AlphaSolution {
  bool all_alpha = false;
  std::vector<ExtendedAlpha> values;

  bool empty() const noexcept { return !all_alpha && values.empty(); }
};

namespace detail {

// Sign-preserving evaluation of g(a) = (l1^a + l3^a - l2^a - l4^a) / a,
// continuously extended at 0 by ln(l1 l3 / (l2 l4)).
inline double alpha_equation(const SideLengths& l, double a) {
  if (a == 0.0) return std::log(l[0]) + std::log(l[2]) - std::log(l[1]) - std::log(l[3]);
  const double ref = a > 0 ? l.max() : l.min();
  auto p = [&](std::size_t i) { return std::pow(l[i] / ref, a); };
  return (p(0) + p(2) - p(1) - p(3)) / a;
}

inline bool rel_equal(double a, double b, double tol = 1e-12) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace detail

inline AlphaSolution solve_alpha(const SideLengths& l, const AlphaScan& scan = {}) {
  const auto& v = l.values();
  for (std::size_t i = 0; i < 4; ++i) {
    const double others = v[(i + 1) % 4] + v[(i + 2) % 4] + v[(i + 3) % 4];
    if (!(v[i] < others)) throw DomainError("solve_alpha: side lengths are not realizable");
  }

  AlphaSolution out;
  if (is_kite(l, 1e-12)) {
    out.all_alpha = true;
    return out;
  }
  if (!has_extremal_pair(l)) return out;

  using detail::rel_equal;
  if (rel_equal(std::min(l[0], l[2]), std::min(l[1], l[3])))
    out.values.push_back(ExtendedAlpha::minus_inf());
  if (rel_equal(std::max(l[0], l[2]), std::max(l[1], l[3])))
    out.values.push_back(ExtendedAlpha::plus_inf());
  const bool zero_root = rel_equal(l[0] * l[2], l[1] * l[3]);
  if (zero_root) out.values.push_back(ExtendedAlpha::zero());

  auto g = [&](double a) { return detail::alpha_equation(l, a); };
  auto keep = [&](double a) {
    if (zero_root && std::abs(a) < 1e-9) return;
    if (a == 0.0) return;
    out.values.push_back(ExtendedAlpha::finite(a));
  };

  auto bisect = [&](double lo, double hi, double glo) {
    while (hi - lo > scan.tol * std::max(1.0, std::abs(lo))) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      const double gm = g(mid);
      if (gm == 0.0) { lo = hi = mid; break; }
      if (std::signbit(gm) == std::signbit(glo)) { lo = mid; glo = gm; } else { hi = mid; }
    }
    keep(0.5 * (lo + hi));
  };

  const auto steps = static_cast<long>(std::ceil((scan.hi - scan.lo) / scan.step));
  double a_prev = scan.lo;
  double g_prev = g(a_prev);
  if (g_prev == 0.0) keep(a_prev);
  for (long k = 1; k <= steps; ++k) {
    const double a = std::min(scan.hi, scan.lo + static_cast<double>(k) * scan.step);
    const double ga = g(a);
    if (ga == 0.0) {
      keep(a);
    } else if (g_prev != 0.0 && std::signbit(ga) != std::signbit(g_prev)) {
      bisect(a_prev, a, g_prev);
    }
    a_prev = a;
    g_prev = ga;
  }

  // Beyond the window g keeps the sign of its limit unless one more root
  // lies further out; double the window edge until the signs match.
  const double p_max = std::max(l[0], l[2]), q_max = std::max(l[1], l[3]);
  const double p_min = std::min(l[0], l[2]), q_min = std::min(l[1], l[3]);
  auto extend = [&](double edge, double limit_sign) {
    if (limit_sign == 0.0) return;
    double a = edge, ga = g(a);
    while (ga != 0.0 && (ga > 0) != (limit_sign > 0) && std::abs(a) < 1e6) {
      const double b = 2 * a, gb = g(b);
      if (gb == 0.0) { keep(b); return; }
      if ((gb > 0) != (ga > 0)) {
        edge > 0 ? bisect(a, b, ga) : bisect(b, a, gb);
        return;
      }
      a = b;
      ga = gb;
    }
  };
  if (!rel_equal(p_max, q_max)) extend(scan.hi, p_max > q_max ? 1.0 : -1.0);
  if (!rel_equal(p_min, q_min)) extend(scan.lo, p_min < q_min ? -1.0 : 1.0);
  return out;
}

/// Circumradii of ABP, BCP, CDP, DAP where P is the diagonal intersection.
inline std::array<double, 4> circumradii(const Quad& q) {
  const Point A = q.a(), B = q.b(), C = q.c(), D = q.d();
  const Point u = C - A, w = D - B;
  const double den = cross(u, w);
  const double scale = norm(u) * norm(w);
  if (std::abs(den) <= 1e-14 * scale) throw DegenerateError("circumradii: diagonals are parallel");
  const double t = cross(B - A, w) / den;
  const Point P = A + t * u;
  const double diag = std::max(norm(u), norm(w));
  for (const Point& v : q.vertices())
    if (distance(v, P) <= 1e-12 * diag)
      throw DegenerateError("circumradii: diagonal intersection coincides with a vertex");

  auto radius = [&](Point p1, Point p2) {
    const double a = distance(p1, p2), b = distance(p2, P), c = distance(P, p1);
    const double area2 = std::abs(cross(p2 - p1, P - p1));
    return a * b * c / (2.0 * area2);
  };
  return {radius(A, B), radius(B, C), radius(C, D), radius(D, A)};
}

inline double circumradii_residual(const Quad& q, const ExtendedAlpha& alpha) {
  const auto r = circumradii(q);
  return f_alpha(r[0], r[2], alpha) - f_alpha(r[1], r[3], alpha);
}

namespace detail {

// Randomized-free spot check that f is symmetric and homogeneous: the
// ratio f(lx, ly) / f(x, y) must not depend on (x, y).
template <class F>
void check_homogeneous_symmetric(F& f) {
  static constexpr std::array<std::pair<double, double>, 5> samples{
      {{1.0, 2.0}, {0.3, 0.7}, {2.5, 1.1}, {4.0, 0.25}, {1.7, 1.7}}};
  static constexpr std::array<double, 3> scales{0.5, 2.0, 3.7};
  for (const auto& [x, y] : samples) {
    const double fxy = f(x, y);
    if (std::abs(fxy - f(y, x)) > 1e-10 * std::max(1.0, std::abs(fxy)))
      throw ContractError("f_quad_residual: f is not symmetric");
  }
  for (double s : scales) {
    const double ref = f(s * samples[0].first, s * samples[0].second) / f(samples[0].first, samples[0].second);
    for (const auto& [x, y] : samples) {
      const double ratio = f(s * x, s * y) / f(x, y);
      if (!std::isfinite(ratio) || std::abs(ratio - ref) > 1e-9 * std::max(1.0, std::abs(ref)))
        throw ContractError("f_quad_residual: f is not homogeneous");
    }
  }
}

}  // namespace detail

/// f(AB, CD) - f(BC, AD) for a caller-supplied symmetric homogeneous f.
template <class F>
double f_quad_residual(const Quad& q, F&& f) {
  detail::check_homogeneous_symmetric(f);
  const SideLengths l = q.sides();
  return f(l[0], l[2]) - f(l[1], l[3]);
}

/// Same functional applied to the circumradii quadruple.
template <class F>
double f_circumradii_residual(const Quad& q, F&& f) {
  detail::check_homogeneous_symmetric(f);
  const auto r = circumradii(q);
  return f(r[0], r[2]) - f(r[1], r[3]);
}

enum class Orientation { Positive, Negative, Undefined };

inline const char* to_string(Orientation o) {
  switch (o) {
    case Orientation::Positive: return "positive";
    case Orientation::Negative: return "negative";
    case Orientation::Undefined: return "undefined";
  }
  return "undefined";
}

struct PolygonCheck {
  bool proper = false;
  Orientation orientation = Orientation::Undefined;
};

inline double signed_area(std::span<const Point> pts) {
  double s = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) s += cross(pts[i], pts[(i + 1) % pts.size()]);
  return 0.5 * s;
}

/// Jordan-curve test for the closed broken line through `pts`. Near
/// degenerate contacts (within 1e-12 after normalization) are reported as
/// improper with undefined orientation.
inline PolygonCheck is_proper_polygon(std::span<const Point> pts) {
  const std::size_t n = pts.size();
  if (n < 3) throw DomainError("is_proper_polygon: need at least three points");
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_finite(pts[i])) throw DomainError("is_proper_polygon: non-finite point");
    for (std::size_t j = i + 1; j < n; ++j)
      if (pts[i] == pts[j]) throw DomainError("is_proper_polygon: duplicate points");
  }

  Point lo = pts[0], hi = pts[0];
  for (const Point& p : pts) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  const Point mid = 0.5 * (lo + hi);
  const double scale = std::max(hi.x - lo.x, hi.y - lo.y);
  std::vector<Point> q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = (pts[i] - mid) / scale;

  constexpr double eps = 1e-12;
  auto orient = [&](Point a, Point b, Point c) {
    const double d = cross(b - a, c - a);
    return d > eps ? 1 : (d < -eps ? -1 : 0);
  };
  auto on_segment = [&](Point p, Point a, Point b) {
    return std::min(a.x, b.x) - eps <= p.x && p.x <= std::max(a.x, b.x) + eps &&
           std::min(a.y, b.y) - eps <= p.y && p.y <= std::max(a.y, b.y) + eps;
  };

  const PolygonCheck improper{false, Orientation::Undefined};
  // Consecutive vertices must turn: an aligned triple is either a fold-back
  // or a degenerate vertex.
  for (std::size_t i = 0; i < n; ++i)
    if (orient(q[i], q[(i + 1) % n], q[(i + 2) % n]) == 0) return improper;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      const Point a = q[i], b = q[(i + 1) % n], c = q[j], d = q[(j + 1) % n];
      const int o1 = orient(a, b, c), o2 = orient(a, b, d);
      const int o3 = orient(c, d, a), o4 = orient(c, d, b);
      if (o1 * o2 < 0 && o3 * o4 < 0) return improper;
      if ((o1 == 0 && on_segment(c, a, b)) || (o2 == 0 && on_segment(d, a, b)) ||
          (o3 == 0 && on_segment(a, c, d)) || (o4 == 0 && on_segment(b, c, d)))
        return improper;
    }
  }
  const double area = signed_area(q);
  return {true, area > 0 ? Orientation::Positive : Orientation::Negative};
}

inline PolygonCheck is_proper_polygon(std::initializer_list<Point> pts) {
  return is_proper_polygon(std::span<const Point>(pts.begin(), pts.size()));
}

}  // namespace alphaembed
