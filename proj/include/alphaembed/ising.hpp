#pragma once

// Ising edge parameters and the star-triangle transformation. Edges carry
// labels 1..6 taken modulo 6: odd labels sit on triangle edges, even labels
// on star edges, and edge i+3 is the one facing edge i.

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "alphaembed/elliptic.hpp"
#include "alphaembed/errors.hpp"

namespace alphaembed {

inline constexpr double half_pi = std::numbers::pi / 2;

/// Angle strictly inside (0, pi/2).
class Theta {
 public:
  explicit Theta(double v) : v_(v) {
    if (!(v > 0.0 && v < half_pi)) throw DomainError("theta must lie in (0, pi/2)");
  }
  double value() const noexcept { return v_; }
  operator double() const noexcept { return v_; }

 private:
  double v_;
};

/// J = (1/2) ln((1 + sin t) / cos t), written as atanh(tan(t/2)).
inline double J_from_theta(Theta t) { return std::atanh(std::tan(0.5 * t.value())); }

inline Theta theta_from_J(double J) {
  if (!(J > 0.0) || !std::isfinite(J)) throw DomainError("coupling J must be positive and finite");
  return Theta(2.0 * std::atan(std::tanh(J)));
}

inline double x_from_theta(Theta t) { return std::tan(0.5 * t.value()); }

inline Theta theta_from_x(double x) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("x must lie in (0, 1)");
  return Theta(2.0 * std::atan(x));
}

enum class TripleRole { Triangle, Star };

inline const char* to_string(TripleRole r) { return r == TripleRole::Triangle ? "triangle" : "star"; }

/// Three edge angles in ascending label order: (t1, t3, t5) for a triangle,
/// (t2, t4, t6) for a star.
class ThetaTriple {
 public:
  ThetaTriple(TripleRole role, double a, double b, double c) : role_(role), t_{a, b, c} {
    for (double v : t_) Theta{v};
  }
  static ThetaTriple triangle(double t1, double t3, double t5) { return {TripleRole::Triangle, t1, t3, t5}; }
  static ThetaTriple star(double t2, double t4, double t6) { return {TripleRole::Star, t2, t4, t6}; }

  TripleRole role() const noexcept { return role_; }
  const std::array<double, 3>& values() const noexcept { return t_; }
  double operator[](std::size_t i) const { return t_[i]; }

  // Angle on edge `label`, any integer taken modulo 6.
  double at(int label) const {
    const int l = ((label - 1) % 6 + 6) % 6 + 1;
    const bool odd = l % 2 == 1;
    if (odd != (role_ == TripleRole::Triangle))
      throw ContractError("label " + std::to_string(l) + " is not carried by a " + to_string(role_) + " triple");
    return t_[static_cast<std::size_t>((l - 1) / 2)];
  }

  // Labels carried by this triple, ascending.
  std::array<int, 3> labels() const {
    return role_ == TripleRole::Triangle ? std::array<int, 3>{1, 3, 5} : std::array<int, 3>{2, 4, 6};
  }

 private:
  TripleRole role_;
  std::array<double, 3> t_;
};

inline double kw_dual(double t) {
  Theta{t};
  return half_pi - t;
}

namespace detail {

inline void require_role(const ThetaTriple& t, TripleRole role, const char* what) {
  if (t.role() != role) throw ContractError(std::string(what) + ": expected a " + to_string(role) + " triple");
}

inline double checked_acos(double v, const char* what) {
  if (!(v > 0.0 && v < 1.0)) throw DomainError(std::string(what) + ": cosine value outside (0, 1)");
  return std::acos(v);
}

inline double checked_asin(double v, const char* what) {
  if (!(v > 0.0 && v < 1.0)) throw DomainError(std::string(what) + ": sine value outside (0, 1)");
  return std::asin(v);
}

}  // namespace detail

/// Complementary modulus k' of the triangle triple.
inline double baxter_kprime(const ThetaTriple& tri) {
  detail::require_role(tri, TripleRole::Triangle, "baxter_kprime");
  const double x1 = x_from_theta(Theta(tri[0]));
  const double x3 = x_from_theta(Theta(tri[1]));
  const double x5 = x_from_theta(Theta(tri[2]));
  const double num = (1 - x1 * x1) * (1 - x3 * x3) * (1 - x5 * x5);
  const double den = 4.0 * std::sqrt((1 + x1 * x3 * x5) * (x1 + x3 * x5) * (x3 + x1 * x5) * (x5 + x1 * x3));
  return num / den;
}

/// tan t_i tan t_{i+3} = 1/k'.
inline ThetaTriple star_from_triangle_baxter(const ThetaTriple& tri) {
  const double kp = baxter_kprime(tri);
  auto facing = [&](int i) { return std::atan(1.0 / (kp * std::tan(tri.at(i)))); };
  return ThetaTriple::star(facing(5), facing(1), facing(3));
}

inline ThetaTriple star_from_triangle_closed(const ThetaTriple& tri) {
  detail::require_role(tri, TripleRole::Triangle, "star_from_triangle_closed");
  auto out = [&](int i) {
    const double a = tri.at(i + 3), b = tri.at(i + 1), c = tri.at(i + 5);
    const double v = std::sin(a) * std::cos(b) * std::cos(c) / (std::sin(a) + std::sin(b) * std::sin(c));
    return detail::checked_acos(v, "star_from_triangle_closed");
  };
  return ThetaTriple::star(out(2), out(4), out(6));
}

inline ThetaTriple triangle_from_star_closed(const ThetaTriple& star) {
  detail::require_role(star, TripleRole::Star, "triangle_from_star_closed");
  auto out = [&](int i) {
    const double a = star.at(i + 3), b = star.at(i + 1), c = star.at(i + 5);
    const double v = std::cos(a) * std::sin(b) * std::sin(c) / (std::cos(a) + std::cos(b) * std::cos(c));
    return detail::checked_asin(v, "triangle_from_star_closed");
  };
  return ThetaTriple::triangle(out(1), out(3), out(5));
}

/// Defect sum_i F(t_i, m) - K(m) of the modulus equation.
inline double modulus_defect(const ThetaTriple& tri, const Modulus& mod) {
  return incomplete_F(tri[0], mod) + incomplete_F(tri[1], mod) + incomplete_F(tri[2], mod) - complete_K(mod);
}

struct ModulusSearch {
  double log_kprime_lo = -20.0;             // m just below 1
  double log_kprime_hi = 0.5 * std::log1p(1e6);  // m = -1e6
  double tol = 1e-14;
};

/// Unique modulus with F(t1) + F(t3) + F(t5) = K. The defect increases with
/// ln k', so bisection runs on ln k' where moduli near 1 stay resolvable.
inline Modulus solve_modulus(const ThetaTriple& tri, const ModulusSearch& search = {}) {
  detail::require_role(tri, TripleRole::Triangle, "solve_modulus");
  auto defect = [&](double u) { return modulus_defect(tri, Modulus::from_kprime(std::exp(u))); };
  double lo = search.log_kprime_lo, hi = search.log_kprime_hi;
  if (tri[0] + tri[1] + tri[2] == half_pi) return Modulus::from_m(0.0);
  double dlo = defect(lo), dhi = defect(hi);
  if (!(dlo < 0.0 && dhi > 0.0)) throw NumericRangeError("solve_modulus: bracket does not contain a root");
  while (hi - lo > search.tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double d = defect(mid);
    if (d == 0.0) return Modulus::from_kprime(std::exp(mid));
    if (d < 0.0) lo = mid; else hi = mid;
  }
  return Modulus::from_kprime(std::exp(0.5 * (lo + hi)));
}

struct EllipticAngles {
  Modulus mod;
  std::array<double, 3> tau;
  std::array<double, 3> thetaprime;
  std::array<int, 3> labels;
};

inline EllipticAngles elliptic_angles(const ThetaTriple& t, const Modulus& mod) {
  const double K = complete_K(mod);
  EllipticAngles e{mod, {}, {}, t.labels()};
  for (std::size_t i = 0; i < 3; ++i) {
    e.tau[i] = incomplete_F(t[i], mod);
    e.thetaprime[i] = std::numbers::pi * e.tau[i] / (2.0 * K);
  }
  return e;
}

/// tau_{i+3} = K - tau_i.
inline ThetaTriple star_from_triangle_elliptic(const ThetaTriple& tri, const Modulus& mod) {
  detail::require_role(tri, TripleRole::Triangle, "star_from_triangle_elliptic");
  const double K = complete_K(mod);
  auto facing = [&](int i) { return am(K - incomplete_F(tri.at(i), mod), mod); };
  return ThetaTriple::star(facing(5), facing(1), facing(3));
}

inline ThetaTriple star_from_triangle_elliptic(const ThetaTriple& tri) {
  return star_from_triangle_elliptic(tri, solve_modulus(tri));
}

enum class IsingRoute { Baxter, Closed, Elliptic };

inline const char* to_string(IsingRoute r) {
  switch (r) {
    case IsingRoute::Baxter: return "baxter";
    case IsingRoute::Closed: return "closed";
    case IsingRoute::Elliptic: return "elliptic";
  }
  return "baxter";
}

inline ThetaTriple star_from_triangle(const ThetaTriple& tri, IsingRoute route) {
  switch (route) {
    case IsingRoute::Baxter: return star_from_triangle_baxter(tri);
    case IsingRoute::Closed: return star_from_triangle_closed(tri);
    case IsingRoute::Elliptic: return star_from_triangle_elliptic(tri);
  }
  throw ContractError("unknown route");
}

/// Kramers-Wannier conjugation: dualize, transform the other way, dualize
/// back. The dual star edge i sits opposite triangle edge i + 3.
inline ThetaTriple triangle_from_star(const ThetaTriple& star, IsingRoute route) {
  detail::require_role(star, TripleRole::Star, "triangle_from_star");
  if (route == IsingRoute::Closed) return triangle_from_star_closed(star);
  const ThetaTriple dual = ThetaTriple::triangle(half_pi - star.at(4), half_pi - star.at(6), half_pi - star.at(2));
  const ThetaTriple img = star_from_triangle(dual, route);
  return ThetaTriple::triangle(half_pi - img.at(4), half_pi - img.at(6), half_pi - img.at(2));
}

}  // namespace alphaembed
