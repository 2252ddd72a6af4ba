#pragma once

// Real Jacobi elliptic kernel parametrized by m = k^2 < 1. Imaginary k is
// plain m < 0. The complementary parameter m1 = 1 - m = k'^2 is stored
// alongside m so that moduli close to 1 keep full relative precision.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "alphaembed/errors.hpp"

namespace alphaembed {

class Modulus {
 public:
  static Modulus from_m(double m) {
    if (!std::isfinite(m) || !(m < 1.0)) throw DomainError("modulus requires m < 1");
    return Modulus(m, 1.0 - m);
  }
  // k' = sqrt(1 - m) > 0; keeps m1 exact when k' is tiny.
  static Modulus from_kprime(double kp) {
    if (!std::isfinite(kp) || !(kp > 0.0)) throw DomainError("modulus requires k' > 0");
    const double m1 = kp * kp;
    if (!(m1 > 0.0) || !std::isfinite(m1)) throw NumericRangeError("k' out of representable range");
    return Modulus(1.0 - m1, m1);
  }

  double m() const noexcept { return m_; }
  double m1() const noexcept { return m1_; }
  double kprime() const { return std::sqrt(m1_); }

 private:
  Modulus(double m, double m1) : m_(m), m1_(m1) {}
  double m_;
  double m1_;
};

namespace detail {

// 1 / sqrt(1 - m sin^2 t) written as 1 / sqrt(cos^2 t + m1 sin^2 t).
inline double f_integrand(double t, const Modulus& mod) {
  const double s = std::sin(t), c = std::cos(t);
  return 1.0 / std::sqrt(c * c + mod.m1() * s * s);
}

struct GK15 {
  double value;
  double error;
};

inline GK15 gauss_kronrod15(double a, double b, const Modulus& mod) {
  static constexpr std::array<double, 8> xk{
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr std::array<double, 8> wk{
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr std::array<double, 4> wg{
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f_integrand(c, mod);
  double kron = wk[7] * fc;
  double gauss = wg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double f1 = f_integrand(c - h * xk[j], mod);
    const double f2 = f_integrand(c + h * xk[j], mod);
    kron += wk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += wg[j / 2] * (f1 + f2);
  }
  return {kron * h, std::abs((kron - gauss) * h)};
}

inline double adaptive_f(double a, double b, const Modulus& mod, double tol, int depth) {
  const GK15 r = gauss_kronrod15(a, b, mod);
  if (r.error <= tol || depth >= 40) return r.value;
  const double mid = 0.5 * (a + b);
  return adaptive_f(a, mid, mod, 0.5 * tol, depth + 1) + adaptive_f(mid, b, mod, 0.5 * tol, depth + 1);
}

}  // namespace detail

/// Quarter period K = pi / (2 AGM(1, k')).
inline double complete_K(const Modulus& mod) {
  double a = 1.0, g = mod.kprime();
  for (int it = 0; it < 64 && std::abs(a - g) > 1e-16 * a; ++it) {
    const double an = 0.5 * (a + g);
    g = std::sqrt(a * g);
    a = an;
  }
  return std::numbers::pi / (a + g);
}

/// Incomplete integral of the first kind. Uses F(j pi + r) = 2 j K + F(r)
/// so that quadrature only ever runs on |r| <= pi/2.
inline double incomplete_F(double theta, const Modulus& mod) {
  if (!std::isfinite(theta)) throw DomainError("incomplete_F requires finite theta");
  const double j = std::nearbyint(theta / std::numbers::pi);
  const double r = theta - j * std::numbers::pi;
  double base = 0.0;
  if (j != 0.0) base = 2.0 * j * complete_K(mod);
  if (r == 0.0) return base;
  const double sgn = r < 0 ? -1.0 : 1.0;
  return base + sgn * detail::adaptive_f(0.0, std::abs(r), mod, 1e-14, 0);
}

/// Amplitude: the inverse of incomplete_F(., mod).
inline double am(double tau, const Modulus& mod) {
  if (!std::isfinite(tau)) throw DomainError("am requires finite tau");
  const double K = complete_K(mod);
  const double j = std::nearbyint(tau / (2.0 * K));
  const double r = tau - 2.0 * j * K;  // in [-K, K]
  const double half_pi = 0.5 * std::numbers::pi;

  double lo = -half_pi, hi = half_pi;
  double th = std::clamp(r * half_pi / K, lo, hi);
  for (int it = 0; it < 100; ++it) {
    const double res = incomplete_F(th, mod) - r;
    if (res == 0.0) break;
    if (res > 0) hi = th; else lo = th;
    const double s = std::sin(th), c = std::cos(th);
    const double delta = std::sqrt(c * c + mod.m1() * s * s);
    double next = th - res * delta;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - th) <= 1e-16 * std::max(1.0, std::abs(th)) || hi - lo <= 4e-16) {
      th = next;
      break;
    }
    th = next;
  }
  return th + j * std::numbers::pi;
}

inline double sn(double tau, const Modulus& mod) { return std::sin(am(tau, mod)); }
inline double cn(double tau, const Modulus& mod) { return std::cos(am(tau, mod)); }
inline double dn(double tau, const Modulus& mod) {
  const double a = am(tau, mod);
  const double s = std::sin(a), c = std::cos(a);
  return std::sqrt(c * c + mod.m1() * s * s);
}

struct JacobiTriple {
  double sn, cn, dn;
};

inline JacobiTriple jacobi(double tau, const Modulus& mod) {
  const double a = am(tau, mod);
  const double s = std::sin(a), c = std::cos(a);
  return {s, c, std::sqrt(c * c + mod.m1() * s * s)};
}

namespace detail {
inline double letter_value(char p, const JacobiTriple& j) {
  switch (p) {
    case 's': return j.sn;
    case 'c': return j.cn;
    case 'd': return j.dn;
    case 'n': return 1.0;
  }
  throw DomainError(std::string("unknown Jacobi letter '") + p + "'");
}
}  // namespace detail

/// pn / qn with nn = 1; nullopt marks a pole (|qn| < 1e-14).
inline std::optional<double> pq(char p, char q, double tau, const Modulus& mod) {
  const JacobiTriple j = jacobi(tau, mod);
  const double num = detail::letter_value(p, j);
  const double den = detail::letter_value(q, j);
  if (std::abs(den) < 1e-14) return std::nullopt;
  return num / den;
}

struct QuarterShiftResiduals {
  double r_cn, r_sn, r_dn;
};

inline QuarterShiftResiduals quarter_shift_residuals(double tau, const Modulus& mod) {
  const double K = complete_K(mod);
  const double kp = mod.kprime();
  const JacobiTriple a = jacobi(tau, mod);
  const JacobiTriple b = jacobi(K - tau, mod);
  if (std::abs(a.dn) < 1e-14) throw SingularityError("quarter_shift_residuals: dn vanishes");
  return {b.cn - kp * a.sn / a.dn, b.sn - a.cn / a.dn, b.dn - kp / a.dn};
}

/// cn(t1 + t2) + sn(t1) sn(t2) dn(t1 + t2) - cn(t1) cn(t2).
inline double addition_residual(double tau1, double tau2, const Modulus& mod) {
  const JacobiTriple a = jacobi(tau1, mod);
  const JacobiTriple b = jacobi(tau2, mod);
  const JacobiTriple s = jacobi(tau1 + tau2, mod);
  return s.cn + a.sn * b.sn * s.dn - a.cn * b.cn;
}

}  // namespace alphaembed
