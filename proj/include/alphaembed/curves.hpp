#pragma once

// Construction curves {M : MA^a - MB^a = lambda} and their relatives for the
// symbolic alphas. All numerics run in the canonical frame where the foci
// sit at (0, -1) and (0, 1).

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "alphaembed/errors.hpp"
#include "alphaembed/geometry.hpp"

namespace alphaembed {

struct Rect {
  double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;

  bool contains(Point p) const { return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax; }
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  Point center() const { return {0.5 * (xmin + xmax), 0.5 * (ymin + ymax)}; }

  // Same center, sides multiplied by `f`.
  Rect scaled(double f) const {
    const Point c = center();
    const double hw = 0.5 * f * width(), hh = 0.5 * f * height();
    return {c.x - hw, c.y - hh, c.x + hw, c.y + hh};
  }

  static Rect bounding(std::span<const Point> pts) {
    if (pts.empty()) throw DomainError("Rect::bounding of an empty set");
    Rect r{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
    for (const Point& p : pts) {
      r.xmin = std::min(r.xmin, p.x);
      r.ymin = std::min(r.ymin, p.y);
      r.xmax = std::max(r.xmax, p.x);
      r.ymax = std::max(r.ymax, p.y);
    }
    return r;
  }
};

/// Similarity T(M) = omega (M - mid) sending the foci to (0, -1), (0, 1).
class CanonicalFrame {
 public:
  CanonicalFrame(Point a, Point b) {
    if (a == b) throw DomainError("canonical frame needs distinct foci");
    mid_ = 0.5 * (a + b);
    scale_ = 0.5 * distance(a, b);
    const std::complex<double> u = (b - a).complex() / (2.0 * scale_);
    omega_ = std::complex<double>(0.0, 1.0) * std::conj(u) / scale_;
  }

  Point to_canonical(Point m) const { return Point(omega_ * (m - mid_).complex()); }
  Point from_canonical(Point t) const { return mid_ + Point(t.complex() / omega_); }
  // Gradient of a canonical-frame function, expressed in world coordinates.
  Point gradient_to_world(Point g) const { return Point(std::conj(omega_) * g.complex()); }

  double scale() const noexcept { return scale_; }
  Point mid() const noexcept { return mid_; }

 private:
  Point mid_;
  double scale_ = 1.0;
  std::complex<double> omega_;
};

namespace detail {

// Canonical F for finite alpha. D_B^{a/2} expm1((a/2) log1p(4y / D_B)) avoids
// the cancellation between the two powers far from the foci.
inline double F_finite(double x, double y, double a) {
  const double DB = x * x + (y - 1) * (y - 1);
  const double DA = x * x + (y + 1) * (y + 1);
  if (DB == 0.0) {
    if (a > 0) return std::pow(2.0, a);
    throw SingularityError("F evaluated at focus B with alpha < 0");
  }
  if (DA == 0.0 && a < 0) throw SingularityError("F evaluated at focus A with alpha < 0");
  return std::pow(DB, 0.5 * a) * std::expm1(0.5 * a * std::log1p(4.0 * y / DB));
}

inline double F_zero(double x, double y) {
  const double DB = x * x + (y - 1) * (y - 1);
  const double DA = x * x + (y + 1) * (y + 1);
  if (DB == 0.0 || DA == 0.0) throw SingularityError("log-ratio evaluated at a focus");
  return 0.5 * std::log1p(4.0 * y / DB);
}

}  // namespace detail

/// The canonical F for a finite or zero alpha.
inline double F_alpha_canonical(double x, double y, const ExtendedAlpha& alpha) {
  if (alpha.is_zero()) return detail::F_zero(x, y);
  if (alpha.is_finite()) return detail::F_finite(x, y, alpha.value());
  throw ContractError("F_alpha_canonical: no level function for infinite alpha");
}

class ConstructionCurve {
 public:
  /// Locus of M with ACBM an alpha-quad.
  static ConstructionCurve through(Point a, Point b, Point c, const ExtendedAlpha& alpha) {
    if (a == b || a == c || b == c) throw DomainError("curve_through: points must be pairwise distinct");
    ConstructionCurve k(a, b, alpha);
    const double ca = distance(c, a), cb = distance(c, b);
    k.through_ = c;
    switch (alpha.kind()) {
      case ExtendedAlpha::Kind::Finite: {
        k.lambda_ = std::pow(ca, alpha.value()) - std::pow(cb, alpha.value());
        const Point t = k.frame_.to_canonical(c);
        k.lambda_c_ = detail::F_finite(t.x, t.y, alpha.value());
        break;
      }
      case ExtendedAlpha::Kind::Zero:
        k.lambda_ = std::log(ca / cb);
        k.lambda_c_ = k.lambda_;
        break;
      default:
        if (detail::rel_equal(ca, cb, 1e-14))
          throw DegenerateError("curve_through: infinite alpha with C on the bisector spans a region");
        k.lambda_ = ca - cb;
        k.lambda_c_ = k.lambda_ / k.frame_.scale();
        k.ra_ = ca / k.frame_.scale();
        k.rb_ = cb / k.frame_.scale();
        break;
    }
    return k;
  }

  /// Curve at an explicit world level lambda (finite or zero alpha).
  static ConstructionCurve from_level(Point a, Point b, const ExtendedAlpha& alpha, double lambda) {
    if (alpha.is_infinite()) throw ContractError("from_level: infinite alpha needs a through-point");
    if (!std::isfinite(lambda)) throw DomainError("from_level: level must be finite");
    ConstructionCurve k(a, b, alpha);
    k.lambda_ = lambda;
    k.lambda_c_ = alpha.is_zero() ? lambda : lambda / std::pow(k.frame_.scale(), alpha.value());
    return k;
  }

  Point focus_a() const noexcept { return a_; }
  Point focus_b() const noexcept { return b_; }
  const ExtendedAlpha& alpha() const noexcept { return alpha_; }
  double lambda() const noexcept { return lambda_; }
  double lambda_canonical() const noexcept { return lambda_c_; }
  const CanonicalFrame& frame() const noexcept { return frame_; }
  const std::optional<Point>& through_point() const noexcept { return through_; }

  // Canonical radii CA, CB for the infinite alphas.
  double radius_a() const noexcept { return ra_; }
  double radius_b() const noexcept { return rb_; }

 private:
  ConstructionCurve(Point a, Point b, const ExtendedAlpha& alpha) : a_(a), b_(b), alpha_(alpha), frame_(a, b) {}

  Point a_, b_;
  ExtendedAlpha alpha_;
  CanonicalFrame frame_;
  double lambda_ = 0.0;
  double lambda_c_ = 0.0;
  double ra_ = 0.0, rb_ = 0.0;
  std::optional<Point> through_;
};

inline ConstructionCurve curve_through(Point a, Point b, Point c, const ExtendedAlpha& alpha) {
  return ConstructionCurve::through(a, b, c, alpha);
}

/// F(T) - lambda in the canonical frame, T already canonical.
inline double evaluate_canonical(const ConstructionCurve& c, Point t) {
  const auto& al = c.alpha();
  switch (al.kind()) {
    case ExtendedAlpha::Kind::Finite:
      return detail::F_finite(t.x, t.y, al.value()) - c.lambda_canonical();
    case ExtendedAlpha::Kind::Zero:
      return detail::F_zero(t.x, t.y) - c.lambda_canonical();
    case ExtendedAlpha::Kind::PlusInf: {
      const double ta = std::hypot(t.x, t.y + 1), tb = std::hypot(t.x, t.y - 1);
      return std::max(ta, c.radius_b()) - std::max(c.radius_a(), tb);
    }
    case ExtendedAlpha::Kind::MinusInf: {
      const double ta = std::hypot(t.x, t.y + 1), tb = std::hypot(t.x, t.y - 1);
      return std::min(ta, c.radius_b()) - std::min(c.radius_a(), tb);
    }
  }
  return 0.0;
}

/// Residual of the world point M, measured in canonical units.
inline double evaluate(const ConstructionCurve& c, Point m) {
  return evaluate_canonical(c, c.frame().to_canonical(m));
}

/// Magnitude of the terms entering the residual at T; used to turn
/// absolute residual tolerances into relative ones.
inline double residual_scale(const ConstructionCurve& c, Point t) {
  const double ta = std::hypot(t.x, t.y + 1), tb = std::hypot(t.x, t.y - 1);
  const auto& al = c.alpha();
  switch (al.kind()) {
    case ExtendedAlpha::Kind::Finite:
      if (ta == 0.0 || tb == 0.0) return std::numeric_limits<double>::infinity();
      return std::max({1.0, std::pow(ta, al.value()) + std::pow(tb, al.value()), std::abs(c.lambda_canonical())});
    case ExtendedAlpha::Kind::Zero:
      return std::max({1.0, std::abs(std::log(ta)) + std::abs(std::log(tb)), std::abs(c.lambda_canonical())});
    default:
      return std::max({1.0, ta, tb, c.radius_a(), c.radius_b()});
  }
}

namespace detail {

inline double evaluate_or_nan(const ConstructionCurve& c, Point t) {
  try {
    return evaluate_canonical(c, t);
  } catch (const SingularityError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

inline Point canonical_gradient_fd(const ConstructionCurve& c, Point t) {
  const double h = 1e-7 * std::max(1.0, norm(t));
  const double gx = (evaluate_or_nan(c, {t.x + h, t.y}) - evaluate_or_nan(c, {t.x - h, t.y})) / (2 * h);
  const double gy = (evaluate_or_nan(c, {t.x, t.y + h}) - evaluate_or_nan(c, {t.x, t.y - h})) / (2 * h);
  return {gx, gy};
}

}  // namespace detail

/// Gradient of evaluate_canonical with respect to the canonical point.
inline Point gradient_canonical(const ConstructionCurve& c, Point t) {
  const auto& al = c.alpha();
  if (al.is_infinite()) return detail::canonical_gradient_fd(c, t);
  const double x = t.x, y = t.y;
  const double DA = x * x + (y + 1) * (y + 1);
  const double DB = x * x + (y - 1) * (y - 1);
  if (DA < 1e-16 || DB < 1e-16) return detail::canonical_gradient_fd(c, t);
  if (al.is_zero()) return {x / DA - x / DB, (y + 1) / DA - (y - 1) / DB};
  const double a = al.value();
  const double pa = std::pow(DA, 0.5 * a - 1), pb = std::pow(DB, 0.5 * a - 1);
  return {a * x * (pa - pb), a * ((y + 1) * pa - (y - 1) * pb)};
}

/// Gradient of evaluate(c, .) with respect to the world point.
inline Point gradient(const ConstructionCurve& c, Point m) {
  return c.frame().gradient_to_world(gradient_canonical(c, c.frame().to_canonical(m)));
}

namespace detail {

// Safeguarded Newton for an increasing g on [lo, hi] with g(lo) <= 0 <= g(hi).
template <class G, class DG>
double monotone_root(G&& g, DG&& dg, double lo, double hi) {
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 300; ++it) {
    const double v = g(x);
    if (v == 0.0) return x;
    if (v < 0) lo = x; else hi = x;
    const double d = dg(x);
    double next = (d > 0 && std::isfinite(d)) ? x - v / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 4 * std::numeric_limits<double>::epsilon() * std::abs(x) || next == lo || next == hi)
      return next;
    x = next;
  }
  return x;
}

// Bisection for a monotone g with a sign change on [lo, hi].
template <class G>
double bisect(G&& g, double lo, double hi) {
  double glo = g(lo);
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if (std::signbit(gm) == std::signbit(glo)) { lo = mid; glo = gm; } else { hi = mid; }
  }
  return 0.5 * (lo + hi);
}

// Curves with alpha * lambda < 0 are the mirror images (y -> -y) of the
// positive case.
inline double branch_sign(const ConstructionCurve& c) {
  const double a = c.alpha().is_zero() ? 1.0 : c.alpha().value();
  return a * c.lambda_canonical() < 0 ? -1.0 : 1.0;
}

}  // namespace detail

/// True when no point satisfies the equation.
inline bool is_empty(const ConstructionCurve& c) {
  const auto& al = c.alpha();
  if (!al.is_finite()) return false;
  const double a = al.value(), l = std::abs(c.lambda_canonical());
  if (a == 1.0) return l > 2.0;
  if (a > 0 && a < 1) return l >= std::pow(2.0, a);
  return false;
}

/// The unique y with (x, y) on the curve, canonical frame, alpha > 1.
inline double height_at(const ConstructionCurve& c, double x) {
  const auto& al = c.alpha();
  if (!al.is_finite() || !(al.value() > 1.0)) throw ContractError("height_at requires finite alpha > 1");
  if (!std::isfinite(x)) throw DomainError("height_at: x must be finite");
  const double a = al.value();
  const double lc = c.lambda_canonical();
  if (lc == 0.0) return 0.0;
  const double sigma = lc < 0 ? -1.0 : 1.0;
  const double target = std::abs(lc);
  auto g = [&](double y) { return detail::F_finite(x, y, a) - target; };
  auto dg = [&](double y) {
    const double DA = x * x + (y + 1) * (y + 1), DB = x * x + (y - 1) * (y - 1);
    if (DB < 1e-16) return std::numeric_limits<double>::quiet_NaN();
    return a * ((y + 1) * std::pow(DA, 0.5 * a - 1) - (y - 1) * std::pow(DB, 0.5 * a - 1));
  };
  double hi = 1.0;
  for (int k = 0; g(hi) < 0; ++k) {
    if (k > 2000) throw NumericRangeError("height_at: no upper bracket");
    hi *= 2.0;
  }
  return sigma * detail::monotone_root(g, dg, 0.0, hi);
}

struct AxisCrossings {
  double y_minus;
  double y_plus;
};

namespace detail {

// Magnitude of F on the canonical half-plane containing the curve,
// after the mirror that makes alpha * lambda positive.
inline double axis_G(double y, double a) {
  if (y == 1.0) return a > 0 ? std::pow(2.0, a) : std::numeric_limits<double>::infinity();
  return (a > 0 ? 1.0 : -1.0) * detail::F_finite(0.0, y, a);
}

inline void require_bounded_finite(const ConstructionCurve& c, const char* what) {
  const auto& al = c.alpha();
  if (!al.is_finite() || !(al.value() < 1.0)) throw ContractError(std::string(what) + " requires finite alpha < 1, alpha != 0");
  if (c.lambda_canonical() == 0.0) throw ContractError(std::string(what) + ": lambda = 0 gives the unbounded bisector");
  if (is_empty(c)) throw EmptyCurveError(std::string(what) + ": curve is empty");
}

}  // namespace detail

/// Intersections (0, y-) and (0, y+) of a bounded curve with the focal axis,
/// returned for the mirrored (positive) branch: 0 < y- < 1 < y+.
inline AxisCrossings axis_crossings(const ConstructionCurve& c) {
  detail::require_bounded_finite(c, "axis_crossings");
  const double a = c.alpha().value();
  const double t = std::abs(c.lambda_canonical());
  auto g_low = [&](double y) { return detail::axis_G(y, a) - t; };
  const double ym = detail::bisect(g_low, 0.0, 1.0);
  double hi = 2.0;
  for (int k = 0; detail::axis_G(hi, a) > t; ++k) {
    if (k > 2000) throw NumericRangeError("axis_crossings: no upper bracket");
    hi *= 2.0;
  }
  auto g_high = [&](double y) { return detail::axis_G(y, a) - t; };
  const double yp = detail::bisect(g_high, 1.0, hi);
  return {ym, yp};
}

/// The unique g(y) >= 0 with (g(y), y) on the curve, canonical frame,
/// finite alpha < 1. Returns nullopt outside the axis interval.
inline std::optional<double> width_at(const ConstructionCurve& c, double y) {
  detail::require_bounded_finite(c, "width_at");
  const double a = c.alpha().value();
  const double sigma = detail::branch_sign(c);
  const double yy = sigma * y;
  const AxisCrossings ax = axis_crossings(c);
  if (!(yy >= ax.y_minus && yy <= ax.y_plus)) return std::nullopt;
  if (yy == ax.y_minus || yy == ax.y_plus) return 0.0;
  const double t = std::abs(c.lambda_canonical());
  const double s = a > 0 ? 1.0 : -1.0;
  auto g = [&](double x) {
    if (x == 0.0 && yy == 1.0) return std::numeric_limits<double>::infinity();
    return s * detail::F_finite(x, yy, a) - t;
  };
  if (g(0.0) <= 0.0) return 0.0;
  double hi = 1.0;
  for (int k = 0; g(hi) > 0; ++k) {
    if (k > 2000) throw NumericRangeError("width_at: no bracket");
    hi *= 2.0;
  }
  // g decreases in x; negate for the increasing-root helper.
  auto ng = [&](double x) { return -g(x); };
  auto dng = [&](double x) {
    const double DA = x * x + (yy + 1) * (yy + 1), DB = x * x + (yy - 1) * (yy - 1);
    if (DB < 1e-16) return std::numeric_limits<double>::quiet_NaN();
    return -s * a * x * (std::pow(DA, 0.5 * a - 1) - std::pow(DB, 0.5 * a - 1));
  };
  return detail::monotone_root(ng, dng, 0.0, hi);
}

/// f(x) / ((lambda / (2 alpha)) |x|^{2 - alpha}); tends to 1 as |x| grows.
inline double asymptotic_ratio(const ConstructionCurve& c, double x) {
  const auto& al = c.alpha();
  if (!al.is_finite() || !(al.value() > 1.0) || al.value() == 2.0)
    throw ContractError("asymptotic_ratio requires finite alpha > 1, alpha != 2");
  if (c.lambda_canonical() == 0.0) throw ContractError("asymptotic_ratio requires lambda != 0");
  const double a = al.value();
  return height_at(c, x) / ((c.lambda_canonical() / (2 * a)) * std::pow(std::abs(x), 2 - a));
}

using Polyline = std::vector<Point>;

namespace detail {

// Canonical pieces of a curve out to canonical radius R.
struct CanonicalPieces {
  std::vector<Polyline> open;
  std::vector<Polyline> closed;
};

inline Polyline line_samples(double y, double R, int n) {
  Polyline p;
  for (int i = 0; i < n; ++i) {
    const double u = std::asinh(R) * (2.0 * i / (n - 1) - 1.0);
    p.push_back({std::sinh(u), y});
  }
  return p;
}

inline CanonicalPieces canonical_pieces(const ConstructionCurve& c, int n, double R) {
  CanonicalPieces out;
  const auto& al = c.alpha();
  const double lc = c.lambda_canonical();
  const double pi = std::numbers::pi;

  if (al.is_infinite()) {
    // Orient so that the focus with the smaller radius is B = (0, 1).
    const bool swap = c.radius_a() < c.radius_b();
    const double sy = swap ? -1.0 : 1.0;
    const double rA = swap ? c.radius_b() : c.radius_a();
    const double rB = swap ? c.radius_a() : c.radius_b();
    auto put = [&](Point p) { return Point{p.x, sy * p.y}; };
    if (al.kind() == ExtendedAlpha::Kind::PlusInf) {
      const double x0 = std::sqrt(std::max(0.0, rA * rA - 1.0));
      const double phi0 = std::acos(std::min(1.0, 1.0 / rA));
      Polyline p;
      const int m = std::max(2, n / 3);
      for (int i = 0; i < m; ++i) {
        const double u = std::asinh(std::max(R, x0 + 1)) * (1.0 - static_cast<double>(i) / (m - 1));
        const double x = -(x0 + std::sinh(u));
        p.push_back(put({x, 0.0}));
      }
      for (int i = 1; i < m - 1; ++i) {
        const double phi = -phi0 + 2 * phi0 * i / (m - 1);
        p.push_back(put({rA * std::sin(phi), -1.0 + rA * std::cos(phi)}));
      }
      for (int i = 0; i < m; ++i) {
        const double u = std::asinh(std::max(R, x0 + 1)) * static_cast<double>(i) / (m - 1);
        p.push_back(put({x0 + std::sinh(u), 0.0}));
      }
      out.open.push_back(std::move(p));
    } else {
      Polyline p;
      if (rB <= 1.0) {
        for (int i = 0; i < n; ++i) {
          const double psi = 2 * pi * i / (n - 1);
          p.push_back(put({rB * std::sin(psi), 1.0 + rB * std::cos(psi)}));
        }
      } else {
        const double x0 = std::sqrt(rB * rB - 1.0);
        const double psi0 = std::acos(-1.0 / rB);
        const int m = std::max(2, n / 2);
        for (int i = 0; i < m; ++i) {
          const double psi = -psi0 + 2 * psi0 * i / (m - 1);
          p.push_back(put({rB * std::sin(psi), 1.0 + rB * std::cos(psi)}));
        }
        for (int i = 1; i < m; ++i) p.push_back(put({x0 - 2 * x0 * i / (m - 1), 0.0}));
      }
      out.closed.push_back(std::move(p));
    }
    return out;
  }

  if (lc == 0.0) {
    out.open.push_back(line_samples(0.0, R, n));
    return out;
  }
  if (is_empty(c)) return out;

  const double sigma = branch_sign(c);
  if (al.is_zero()) {
    const double r = std::exp(lc);
    const double cy = (r * r + 1) / (r * r - 1), rad = 2 * r / std::abs(r * r - 1);
    Polyline p;
    for (int i = 0; i < n; ++i) {
      const double phi = 2 * pi * i / (n - 1);
      p.push_back({rad * std::cos(phi), cy + rad * std::sin(phi)});
    }
    out.closed.push_back(std::move(p));
    return out;
  }

  const double a = al.value();
  if (a == 2.0) {
    out.open.push_back(line_samples(lc / 4.0, R, n));
    return out;
  }
  if (a == 1.0) {
    const double h = std::abs(lc) / 2.0;
    Polyline p;
    if (h == 1.0) {
      for (int i = 0; i < n; ++i) {
        const double u = std::asinh(R) * i / (n - 1);
        p.push_back({0.0, sigma * (1.0 + std::sinh(u))});
      }
    } else {
      const double b = std::sqrt((1 - h) * (1 + h));
      const double T = std::asinh(R / b);
      for (int i = 0; i < n; ++i) {
        const double t = T * (2.0 * i / (n - 1) - 1.0);
        p.push_back({b * std::sinh(t), sigma * h * std::cosh(t)});
      }
    }
    out.open.push_back(std::move(p));
    return out;
  }
  if (a > 1.0) {
    Polyline p;
    for (const Point& q : line_samples(0.0, R, n)) p.push_back({q.x, height_at(c, q.x)});
    out.open.push_back(std::move(p));
    return out;
  }

  // Bounded loop: right half going up, left half coming down.
  const AxisCrossings ax = axis_crossings(c);
  const int m = std::max(2, n / 2);
  Polyline p;
  for (int i = 0; i < m; ++i) {
    const double y = ax.y_minus + (ax.y_plus - ax.y_minus) * 0.5 * (1 - std::cos(pi * i / (m - 1)));
    p.push_back({*width_at(c, sigma * y), sigma * y});
  }
  for (int i = m - 2; i >= 1; --i) p.push_back({-p[static_cast<std::size_t>(i)].x, p[static_cast<std::size_t>(i)].y});
  p.push_back(p.front());
  out.closed.push_back(std::move(p));
  return out;
}

}  // namespace detail

/// Polylines of the curve clipped to the world rectangle `window`.
inline std::vector<Polyline> sample(const ConstructionCurve& c, int n, const Rect& window) {
  if (n < 2) throw ContractError("sample: n must be at least 2");
  const CanonicalFrame& fr = c.frame();
  double R = 1.0;
  for (Point corner : {Point{window.xmin, window.ymin}, Point{window.xmin, window.ymax},
                       Point{window.xmax, window.ymin}, Point{window.xmax, window.ymax}})
    R = std::max(R, norm(fr.to_canonical(corner)));
  R += 1.0;

  const detail::CanonicalPieces pieces = detail::canonical_pieces(c, n, R);
  std::vector<Polyline> out;
  auto clip = [&](const Polyline& canon, bool closed) {
    std::vector<Polyline> parts;
    Polyline cur;
    for (const Point& t : canon) {
      const Point m = fr.from_canonical(t);
      if (window.contains(m)) {
        cur.push_back(m);
      } else {
        if (cur.size() >= 2) parts.push_back(cur);
        cur.clear();
      }
    }
    if (cur.size() >= 2) parts.push_back(cur);
    if (closed && parts.size() >= 2 && window.contains(fr.from_canonical(canon.front())) &&
        window.contains(fr.from_canonical(canon.back()))) {
      Polyline merged = parts.back();
      merged.insert(merged.end(), parts.front().begin() + 1, parts.front().end());
      parts.front() = std::move(merged);
      parts.pop_back();
    }
    for (auto& p : parts) out.push_back(std::move(p));
  };
  for (const auto& p : pieces.open) clip(p, false);
  for (const auto& p : pieces.closed) clip(p, true);
  return out;
}

struct SearchParams {
  std::optional<Rect> window;  // default: 4x bounding box of foci and through-points
  int grid = 256;
  double tol = 1e-11;
  double dedup = 1e-7;
  int trace_samples = 4096;
};

namespace detail {

inline bool same_curve(const ConstructionCurve& c1, const ConstructionCurve& c2) {
  if (!(c1.alpha() == c2.alpha())) return false;
  auto close = [](double u, double v) { return std::abs(u - v) <= 1e-12 * std::max({1.0, std::abs(u), std::abs(v)}); };
  auto close_pt = [&](Point p, Point q) { return close(p.x, q.x) && close(p.y, q.y); };
  const bool direct = close_pt(c1.focus_a(), c2.focus_a()) && close_pt(c1.focus_b(), c2.focus_b());
  const bool swapped = close_pt(c1.focus_a(), c2.focus_b()) && close_pt(c1.focus_b(), c2.focus_a());
  if (c1.alpha().is_infinite()) {
    if (direct) return close(c1.radius_a(), c2.radius_a()) && close(c1.radius_b(), c2.radius_b());
    if (swapped) return close(c1.radius_a(), c2.radius_b()) && close(c1.radius_b(), c2.radius_a());
    return false;
  }
  if (direct) return close(c1.lambda_canonical(), c2.lambda_canonical());
  if (swapped) return close(c1.lambda_canonical(), -c2.lambda_canonical());
  return false;
}

inline bool same_foci(const ConstructionCurve& c1, const ConstructionCurve& c2) {
  return (c1.focus_a() == c2.focus_a() && c1.focus_b() == c2.focus_b()) ||
         (c1.focus_a() == c2.focus_b() && c1.focus_b() == c2.focus_a());
}

inline bool is_bounded(const ConstructionCurve& c) {
  const auto& al = c.alpha();
  if (al.is_zero()) return c.lambda_canonical() != 0.0;
  if (al.kind() == ExtendedAlpha::Kind::MinusInf) return true;
  return al.is_finite() && al.value() < 1.0 && c.lambda_canonical() != 0.0;
}

// World bounding box of a bounded curve.
inline Rect curve_box(const ConstructionCurve& c) {
  const detail::CanonicalPieces pieces = canonical_pieces(c, 512, 1.0);
  std::vector<Point> pts;
  for (const auto& p : pieces.closed)
    for (const Point& t : p) pts.push_back(c.frame().from_canonical(t));
  for (const auto& p : pieces.open)
    for (const Point& t : p) pts.push_back(c.frame().from_canonical(t));
  if (pts.empty()) return {};
  const Rect r = Rect::bounding(pts);
  const double pad = 0.05 * std::max(r.width(), r.height()) + 1e-9 * c.frame().scale();
  return {r.xmin - pad, r.ymin - pad, r.xmax + pad, r.ymax + pad};
}

inline Rect default_window(const ConstructionCurve& c1, const ConstructionCurve& c2) {
  std::vector<Point> pts{c1.focus_a(), c1.focus_b(), c2.focus_a(), c2.focus_b()};
  if (c1.through_point()) pts.push_back(*c1.through_point());
  if (c2.through_point()) pts.push_back(*c2.through_point());
  Rect r = Rect::bounding(pts);
  const double side = std::max(r.width(), r.height());
  const Point ctr = r.center();
  r = {ctr.x - 0.5 * side, ctr.y - 0.5 * side, ctr.x + 0.5 * side, ctr.y + 0.5 * side};
  return r.scaled(4.0);
}

struct NewtonResult {
  Point p;
  bool ok;
};

inline NewtonResult newton2(const ConstructionCurve& c1, const ConstructionCurve& c2, Point m, double tol) {
  auto res = [&](Point q, double& r1, double& r2) {
    r1 = evaluate_or_nan(c1, c1.frame().to_canonical(q));
    r2 = evaluate_or_nan(c2, c2.frame().to_canonical(q));
    return std::isfinite(r1) && std::isfinite(r2);
  };
  auto converged = [&](Point q, double r1, double r2) {
    return std::abs(r1) <= tol * residual_scale(c1, c1.frame().to_canonical(q)) &&
           std::abs(r2) <= tol * residual_scale(c2, c2.frame().to_canonical(q));
  };
  double r1 = 0, r2 = 0;
  if (!res(m, r1, r2)) return {m, false};
  int polish = 0;
  for (int it = 0; it < 80; ++it) {
    if (converged(m, r1, r2) && ++polish > 2) break;
    const Point g1 = gradient(c1, m), g2 = gradient(c2, m);
    const double det = g1.x * g2.y - g1.y * g2.x;
    if (!std::isfinite(det) || std::abs(det) <= 1e-300 || std::abs(det) <= 1e-14 * norm(g1) * norm(g2)) break;
    const Point step{(-r1 * g2.y + r2 * g1.y) / det, (-g1.x * r2 + g2.x * r1) / det};
    const double merit = r1 * r1 + r2 * r2;
    double t = 1.0;
    Point next = m;
    double n1 = 0, n2 = 0;
    bool moved = false;
    for (int k = 0; k < 40; ++k) {
      next = m + t * step;
      if (res(next, n1, n2) && n1 * n1 + n2 * n2 < merit) { moved = true; break; }
      t *= 0.5;
    }
    if (!moved) break;
    if (next == m) break;
    m = next;
    r1 = n1;
    r2 = n2;
  }
  return {m, converged(m, r1, r2)};
}

}  // namespace detail

/// Common points of two curves inside the search window, sorted by (x, y).
inline std::vector<Point> intersect(const ConstructionCurve& c1, const ConstructionCurve& c2,
                                    const SearchParams& search = {}) {
  if (detail::same_curve(c1, c2)) throw DegenerateError("intersect: identical curves");
  if (detail::same_foci(c1, c2) && c1.alpha() == c2.alpha()) return {};
  if (is_empty(c1) || is_empty(c2)) return {};
  if (search.grid < 2) throw ContractError("intersect: grid must be at least 2");

  Rect window;
  if (search.window) {
    window = *search.window;
  } else if (detail::is_bounded(c1) && detail::is_bounded(c2)) {
    const Rect b1 = detail::curve_box(c1), b2 = detail::curve_box(c2);
    window = {std::max(b1.xmin, b2.xmin), std::max(b1.ymin, b2.ymin), std::min(b1.xmax, b2.xmax),
              std::min(b1.ymax, b2.ymax)};
    if (window.xmin > window.xmax || window.ymin > window.ymax) return {};
  } else if (detail::is_bounded(c1) || detail::is_bounded(c2)) {
    window = detail::curve_box(detail::is_bounded(c1) ? c1 : c2);
  } else {
    window = detail::default_window(c1, c2);
  }
  const double lref = std::max(c1.frame().scale(), c2.frame().scale());

  auto run = [&](const Rect& win) {
    std::vector<Point> seeds;
    const int g = search.grid;
    const double dx = win.width() / g, dy = win.height() / g;
    std::vector<double> v1(static_cast<std::size_t>((g + 1) * (g + 1))), v2(v1.size());
    for (int j = 0; j <= g; ++j)
      for (int i = 0; i <= g; ++i) {
        const Point m{win.xmin + i * dx, win.ymin + j * dy};
        const auto k = static_cast<std::size_t>(j * (g + 1) + i);
        v1[k] = detail::evaluate_or_nan(c1, c1.frame().to_canonical(m));
        v2[k] = detail::evaluate_or_nan(c2, c2.frame().to_canonical(m));
      }
    auto changes = [](double a, double b, double c, double d) {
      const double lo = std::min({a, b, c, d}), hi = std::max({a, b, c, d});
      return std::isfinite(lo) && std::isfinite(hi) && lo <= 0.0 && hi >= 0.0;
    };
    for (int j = 0; j < g; ++j)
      for (int i = 0; i < g; ++i) {
        auto at = [&](const std::vector<double>& v, int ii, int jj) {
          return v[static_cast<std::size_t>(jj * (g + 1) + ii)];
        };
        if (changes(at(v1, i, j), at(v1, i + 1, j), at(v1, i, j + 1), at(v1, i + 1, j + 1)) &&
            changes(at(v2, i, j), at(v2, i + 1, j), at(v2, i, j + 1), at(v2, i + 1, j + 1)))
          seeds.push_back({win.xmin + (i + 0.5) * dx, win.ymin + (j + 0.5) * dy});
      }

    // Sign changes of one residual along the other curve catch crossings
    // thinner than a grid cell.
    auto trace = [&](const ConstructionCurve& along, const ConstructionCurve& other) {
      for (const Polyline& pl : sample(along, search.trace_samples, win)) {
        double prev = detail::evaluate_or_nan(other, other.frame().to_canonical(pl[0]));
        for (std::size_t k = 1; k < pl.size(); ++k) {
          const double cur = detail::evaluate_or_nan(other, other.frame().to_canonical(pl[k]));
          if (std::isfinite(prev) && std::isfinite(cur) && (prev == 0.0 || std::signbit(prev) != std::signbit(cur))) {
            const double t = prev == cur ? 0.5 : prev / (prev - cur);
            seeds.push_back(pl[k - 1] + t * (pl[k] - pl[k - 1]));
          }
          prev = cur;
        }
      }
    };
    trace(c1, c2);
    trace(c2, c1);

    std::vector<Point> found;
    for (const Point& s : seeds) {
      const detail::NewtonResult r = detail::newton2(c1, c2, s, search.tol);
      if (!r.ok) continue;
      bool dup = false;
      for (const Point& f : found)
        if (distance(f, r.p) <= search.dedup * lref) { dup = true; break; }
      if (!dup) found.push_back(r.p);
    }
    return found;
  };

  std::vector<Point> found = run(window);
  const bool unbounded_gt1 = c1.alpha().is_finite() && c1.alpha().value() > 1.0;
  for (int k = 0; found.empty() && unbounded_gt1 && !search.window && k < 3; ++k) {
    window = window.scaled(4.0);
    found = run(window);
  }
  std::sort(found.begin(), found.end(), [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  return found;
}

}  // namespace alphaembed
