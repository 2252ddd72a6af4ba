#pragma once

// Propagation-equation solutions on the two corner graphs of the cube move,
// the linear map between them, and the s-embeddings they define.
//
// Vertex colors. Black: A1, A3, A5 and A7; white: A0, A2, A4, A6. An
// increment along the corner (u black, f white) is S(f) - S(u) = X^2.
//
// Boundary corners, shared by both sides:
//   w1 = (A1, A2)  w2 = (A3, A2)  w3 = (A3, A4)
//   w4 = (A5, A4)  w5 = (A5, A6)  w6 = (A1, A6)
// Inner corners around A0 (triangle Ising graph):
//   y1 = (A1, A0)  y3 = (A3, A0)  y5 = (A5, A0)
// Inner corners around A7 (star Ising graph):
//   z2 = (A7, A2)  z4 = (A7, A4)  z6 = (A7, A6)
//
// Ising edges. Quad A1A2A3A0 carries t5, A3A4A5A0 carries t1, A5A6A1A0
// carries t3; quad A1A2A7A6 carries t4, A3A4A7A2 carries t6, A5A6A7A4
// carries t2. Solving the propagation equation on each edge gives
//   triangle:  w1 = y1/c5 + y3 t5   w2 = y3/c5 + y1 t5
//              w3 = y3/c1 + y5 t1   w4 = y5/c1 + y3 t1
//              w5 = y5/c3 + y1 t3   w6 = y1/c3 + y5 t3
//   star:      w1 = z2/s4 + z6/t4   w6 = z2/t4 + z6/s4
//              w2 = z2/s6 + z4/t6   w3 = z2/t6 + z4/s6
//              w4 = z4/s2 + z6/t2   w5 = z4/t2 + z6/s2
// with c = cos, s = sin, t = tan of the edge angle.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>

#include "alphaembed/cube_move.hpp"
#include "alphaembed/errors.hpp"
#include "alphaembed/geometry.hpp"
#include "alphaembed/ising.hpp"

namespace alphaembed {

using cplx = std::complex<double>;
using CornerVector = std::array<cplx, 6>;
using RealVector6 = std::array<double, 6>;

/// Corner values of one side. `inner` holds (y1, y3, y5) for the triangle
/// graph (center A0) and (z2, z4, z6) for the star graph (center A7);
/// `thetas` has the matching role.
struct CornerSolution {
  CornerVector w{};
  std::array<cplx, 3> inner{};
  ThetaTriple thetas;

  TripleRole role() const noexcept { return thetas.role(); }
};

namespace detail {

inline CornerVector triangle_boundary(const ThetaTriple& th, const std::array<cplx, 3>& y) {
  const double c1 = std::cos(th.at(1)), c3 = std::cos(th.at(3)), c5 = std::cos(th.at(5));
  const double t1 = std::tan(th.at(1)), t3 = std::tan(th.at(3)), t5 = std::tan(th.at(5));
  return {y[0] / c5 + y[1] * t5, y[1] / c5 + y[0] * t5, y[1] / c1 + y[2] * t1,
          y[2] / c1 + y[1] * t1, y[2] / c3 + y[0] * t3, y[0] / c3 + y[2] * t3};
}

inline CornerVector star_boundary(const ThetaTriple& th, const std::array<cplx, 3>& z) {
  const double s2 = std::sin(th.at(2)), s4 = std::sin(th.at(4)), s6 = std::sin(th.at(6));
  const double t2 = std::tan(th.at(2)), t4 = std::tan(th.at(4)), t6 = std::tan(th.at(6));
  return {z[0] / s4 + z[2] / t4, z[0] / s6 + z[1] / t6, z[0] / t6 + z[1] / s6,
          z[1] / s2 + z[2] / t2, z[1] / t2 + z[2] / s2, z[0] / t4 + z[2] / s4};
}

inline double max_abs(std::span<const cplx> v) {
  double m = 0.0;
  for (const cplx& x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace detail

/// Boundary values forced by the inner values and angles of `sol`.
inline CornerVector propagate(const ThetaTriple& thetas, const std::array<cplx, 3>& inner) {
  return thetas.role() == TripleRole::Triangle ? detail::triangle_boundary(thetas, inner)
                                               : detail::star_boundary(thetas, inner);
}

inline CornerSolution make_corner_solution(const ThetaTriple& thetas, const std::array<cplx, 3>& inner) {
  return {propagate(thetas, inner), inner, thetas};
}

/// Largest propagation residual, relative to the largest corner value.
inline double propagation_residual(const CornerSolution& sol) {
  const CornerVector expect = propagate(sol.thetas, sol.inner);
  double r = 0.0;
  for (std::size_t i = 0; i < 6; ++i) r = std::max(r, std::abs(expect[i] - sol.w[i]));
  const double scale = std::max({1e-300, detail::max_abs(sol.w), detail::max_abs(sol.inner)});
  return r / scale;
}

/// Re and Im of the stacked corner values are independent over the reals.
inline bool has_independent_parts(const CornerSolution& sol, double tol = 1e-12) {
  double rr = 0, ii = 0, ri = 0;
  auto add = [&](cplx x) { rr += x.real() * x.real(); ii += x.imag() * x.imag(); ri += x.real() * x.imag(); };
  for (const cplx& x : sol.w) add(x);
  for (const cplx& x : sol.inner) add(x);
  return rr * ii - ri * ri > tol * (rr + ii) * (rr + ii);
}

using Basis = std::array<RealVector6, 3>;

namespace detail {
inline Basis basis_from(const ThetaTriple& th) {
  Basis b{};
  for (std::size_t k = 0; k < 3; ++k) {
    std::array<cplx, 3> e{};
    e[k] = 1.0;
    const CornerVector w = propagate(th, e);
    for (std::size_t i = 0; i < 6; ++i) b[k][i] = w[i].real();
  }
  return b;
}
}  // namespace detail

/// (u1, u3, u5): boundary values for y = e1, e2, e3.
inline Basis basis_triangle(const ThetaTriple& tri) {
  detail::require_role(tri, TripleRole::Triangle, "basis_triangle");
  return detail::basis_from(tri);
}

/// (v2, v4, v6): boundary values for z = e1, e2, e3.
inline Basis basis_star(const ThetaTriple& star) {
  detail::require_role(star, TripleRole::Star, "basis_star");
  return detail::basis_from(star);
}

/// Max over the three cyclic shifts of |combination - v| where
///   v2 = u1 / (c3 t4) + u3 / (c1 t6) - (t1 / t6) u5.
inline double span_equality_residual(const ThetaTriple& tri, const ThetaTriple& star) {
  const Basis u = basis_triangle(tri), v = basis_star(star);
  auto th = [&](int l) {
    const int m = ((l - 1) % 6 + 6) % 6 + 1;
    return m % 2 ? tri.at(m) : star.at(m);
  };
  double worst = 0.0;
  for (int k = 0; k < 3; ++k) {
    const int s = 2 * k;
    const double a = 1.0 / (std::cos(th(3 + s)) * std::tan(th(4 + s)));
    const double b = 1.0 / (std::cos(th(1 + s)) * std::tan(th(6 + s)));
    const double c = std::tan(th(1 + s)) / std::tan(th(6 + s));
    const auto& u1 = u[static_cast<std::size_t>(k)];
    const auto& u3 = u[static_cast<std::size_t>((k + 1) % 3)];
    const auto& u5 = u[static_cast<std::size_t>((k + 2) % 3)];
    const auto& target = v[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < 6; ++i) {
      const double combo = a * u1[i] + b * u3[i] - c * u5[i];
      worst = std::max(worst, std::abs(combo - target[i]) / std::max(1.0, std::abs(target[i])));
    }
  }
  return worst;
}

/// The first two entries of the v2 combination, left minus right.
inline std::array<double, 2> entry_identities(const ThetaTriple& tri, const ThetaTriple& star) {
  const double c1 = std::cos(tri.at(1)), c3 = std::cos(tri.at(3)), c5 = std::cos(tri.at(5));
  const double t5 = std::tan(tri.at(5));
  const double t4 = std::tan(star.at(4)), t6 = std::tan(star.at(6));
  const double e1 = 1.0 / (c3 * t4 * c5) + t5 / (c1 * t6) - 1.0 / std::sin(star.at(4));
  const double e2 = t5 / (c3 * t4) + 1.0 / (c1 * t6 * c5) - 1.0 / std::sin(star.at(6));
  return {e1, e2};
}

struct CornerMapReport {
  double condition = 0.0;  // 2-norm condition number of the 6x3 basis
  double residual = 0.0;   // relative distance of w from the target span
};

namespace detail {

inline CornerSolution map_corners(const CornerSolution& sol, const ThetaTriple& target, CornerMapReport* report) {
  const Basis basis = detail::basis_from(target);
  Eigen::Matrix<double, 6, 3> V;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 6; ++i) V(i, k) = basis[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
  Eigen::JacobiSVD<Eigen::Matrix<double, 6, 3>> svd(V, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cond = sv(0) / sv(2);
  if (!std::isfinite(cond) || cond > 1e12)
    throw NumericRangeError("corner map: singular basis, condition number " + std::to_string(cond));

  Eigen::Matrix<double, 6, 2> rhs;
  for (int i = 0; i < 6; ++i) {
    rhs(i, 0) = sol.w[static_cast<std::size_t>(i)].real();
    rhs(i, 1) = sol.w[static_cast<std::size_t>(i)].imag();
  }
  const Eigen::Matrix<double, 3, 2> z = svd.solve(rhs);
  std::array<cplx, 3> inner{};
  for (int k = 0; k < 3; ++k) inner[static_cast<std::size_t>(k)] = {z(k, 0), z(k, 1)};

  CornerSolution out{sol.w, inner, target};
  const double res = ((V * z) - rhs).norm() / std::max(1e-300, rhs.norm());
  if (report) *report = {cond, res};
  if (!(res <= 1e-9))
    throw NumericRangeError("corner map: boundary values leave the target span (residual " + std::to_string(res) +
                            "); the angle triples are not related by the star-triangle map");
  return out;
}

}  // namespace detail

inline CornerSolution triangle_to_star_corners(const CornerSolution& sol, const ThetaTriple& star,
                                               CornerMapReport* report = nullptr) {
  detail::require_role(sol.thetas, TripleRole::Triangle, "triangle_to_star_corners");
  detail::require_role(star, TripleRole::Star, "triangle_to_star_corners");
  return detail::map_corners(sol, star, report);
}

inline CornerSolution star_to_triangle_corners(const CornerSolution& sol, const ThetaTriple& tri,
                                               CornerMapReport* report = nullptr) {
  detail::require_role(sol.thetas, TripleRole::Star, "star_to_triangle_corners");
  detail::require_role(tri, TripleRole::Triangle, "star_to_triangle_corners");
  return detail::map_corners(sol, tri, report);
}

/// Images of A0..A7; the triangle graph fills A0..A6 and the star graph
/// A1..A7.
struct SEmbedding {
  std::array<std::optional<Point>, 8> points;
  double closure_residual = 0.0;  // relative, over the redundant incidences

  Point at(int label) const {
    if (label < 0 || label > 7 || !points[static_cast<std::size_t>(label)])
      throw ContractError("s-embedding has no vertex A" + std::to_string(label));
    return *points[static_cast<std::size_t>(label)];
  }
  HexBoundary hex() const { return HexBoundary({at(1), at(2), at(3), at(4), at(5), at(6)}); }
};

/// Integrates S(f) - S(u) = X^2 from the base vertex: A0 for the triangle
/// graph, A1 for the star graph.
inline SEmbedding build_s_embedding(const CornerSolution& sol, Point base, double tol = 1e-10) {
  if (propagation_residual(sol) > 1e-9) throw ContractError("build_s_embedding: corner values violate propagation");
  if (!has_independent_parts(sol)) throw DegenerateError("build_s_embedding: Re and Im of X are dependent");
  auto sq = [](cplx x) { return x * x; };
  const auto& w = sol.w;
  const auto& in = sol.inner;
  std::array<cplx, 8> S{};
  double closure = 0.0;
  SEmbedding e;
  if (sol.role() == TripleRole::Triangle) {
    S[0] = base.complex();
    S[1] = S[0] - sq(in[0]);
    S[3] = S[0] - sq(in[1]);
    S[5] = S[0] - sq(in[2]);
    S[2] = S[1] + sq(w[0]);
    S[4] = S[3] + sq(w[2]);
    S[6] = S[5] + sq(w[4]);
    closure = std::max({std::abs(S[2] - S[3] - sq(w[1])), std::abs(S[4] - S[5] - sq(w[3])),
                        std::abs(S[6] - S[1] - sq(w[5]))});
    for (int i = 0; i <= 6; ++i) e.points[static_cast<std::size_t>(i)] = Point(S[static_cast<std::size_t>(i)]);
  } else {
    S[1] = base.complex();
    S[2] = S[1] + sq(w[0]);
    S[6] = S[1] + sq(w[5]);
    S[3] = S[2] - sq(w[1]);
    S[4] = S[3] + sq(w[2]);
    S[5] = S[4] - sq(w[3]);
    S[7] = S[2] - sq(in[0]);
    closure = std::max({std::abs(S[6] - S[5] - sq(w[4])), std::abs(S[4] - S[7] - sq(in[1])),
                        std::abs(S[6] - S[7] - sq(in[2]))});
    for (int i = 1; i <= 7; ++i) e.points[static_cast<std::size_t>(i)] = Point(S[static_cast<std::size_t>(i)]);
  }
  double scale = 1e-300;
  for (const cplx& x : w) scale = std::max(scale, std::norm(x));
  for (const cplx& x : in) scale = std::max(scale, std::norm(x));
  e.closure_residual = closure / scale;
  if (e.closure_residual > tol) throw NumericRangeError("build_s_embedding: cycle closure fails");
  return e;
}

/// Four corner values around one edge: c = b / cos t + a tan t and
/// d = a / cos t + b tan t.
struct QuadCornerFrame {
  cplx a, b, c, d;

  static QuadCornerFrame solve(cplx a, cplx b, double theta) {
    Theta{theta};
    const double sec = 1.0 / std::cos(theta), tn = std::tan(theta);
    return {a, b, b * sec + a * tn, a * sec + b * tn};
  }
  QuadCornerFrame conj() const { return {std::conj(a), std::conj(b), std::conj(c), std::conj(d)}; }

  // Quad (u, x, v, y) with S(u) = 0, S(x) = a^2, S(v) = S(x) - b^2, S(y) = d^2.
  std::array<Point, 4> quad() const {
    const cplx x = a * a, v = x - b * b, y = d * d;
    return {Point{0.0, 0.0}, Point(x), Point(v), Point(y)};
  }
};

struct OrientationTests {
  Orientation by_ratio = Orientation::Undefined;    // sign of Im(b / a)
  Orientation by_polygon = Orientation::Undefined;  // shoelace sign of the quad
  Orientation by_args = Orientation::Undefined;     // cyclic order of a, d, c, b
  bool agree() const { return by_ratio == by_polygon && by_polygon == by_args; }
};

inline OrientationTests orientation_tests(const QuadCornerFrame& f) {
  const cplx ratio = f.b / f.a;
  if (!(std::abs(ratio.imag()) > 1e-14 * std::abs(ratio)))
    throw DegenerateError("orientation_class: b / a is real");
  OrientationTests t;
  t.by_ratio = ratio.imag() > 0 ? Orientation::Positive : Orientation::Negative;
  const auto q = f.quad();
  double area = 0.0;
  for (std::size_t i = 0; i < 4; ++i) area += cross(q[i], q[(i + 1) % 4]);
  if (area > 0) t.by_polygon = Orientation::Positive;
  else if (area < 0) t.by_polygon = Orientation::Negative;
  auto rel = [&](cplx z) {
    double p = std::arg(z / f.a);
    if (p < 0) p += 2 * std::numbers::pi;
    return p;
  };
  const double pd = rel(f.d), pc = rel(f.c), pb = rel(f.b);
  if (pd < pc && pc < pb) t.by_args = Orientation::Positive;
  else if (pd > pc && pc > pb) t.by_args = Orientation::Negative;
  return t;
}

inline Orientation orientation_class(const QuadCornerFrame& f) {
  const OrientationTests t = orientation_tests(f);
  if (!t.agree()) throw NumericRangeError("orientation_class: the three orientation tests disagree");
  return t.by_ratio;
}

/// Edge angle of a proper 1-quad given as (black u, white x, black v,
/// white y): tan^2 t = (cot b + cot d) / (cot a + cot c) with a, b, c, d
/// the half interior angles at u, x, v, y.
inline double theta_from_embedded_quad(const Quad& q, double tol = 1e-8) {
  if (!(std::abs(relative_alpha_residual(q, ExtendedAlpha::finite(1.0))) <= tol))
    throw ContractError("theta_from_embedded_quad: not a 1-quad");
  const PolygonCheck pc = is_proper_polygon(q.vertices());
  if (!pc.proper) throw ContractError("theta_from_embedded_quad: quad is not proper");
  const auto& v = q.vertices();
  const bool pos = pc.orientation == Orientation::Positive;
  std::array<double, 4> half{};
  for (std::size_t i = 0; i < 4; ++i) {
    const cplx p = v[(i + 3) % 4].complex(), o = v[i].complex(), r = v[(i + 1) % 4].complex();
    double ang = pos ? std::arg((p - o) / (r - o)) : std::arg((r - o) / (p - o));
    if (ang < 0) ang += 2 * std::numbers::pi;
    half[i] = 0.5 * ang;
  }
  auto cot = [](double t) { return std::cos(t) / std::sin(t); };
  const double t2 = (cot(half[1]) + cot(half[3])) / (cot(half[0]) + cot(half[2]));
  if (!(t2 > 0) || !std::isfinite(t2)) throw NumericRangeError("theta_from_embedded_quad: no angle in (0, pi/2)");
  return std::atan(std::sqrt(t2));
}

namespace detail {

inline cplx principal_sqrt(Point p) { return std::sqrt(p.complex()); }

// Choose signs for the unknowns of one edge relation pair so that
//   w_first = p / c + q t,  w_second = q / c + p t
// holds; p is already fixed, q may be flipped when `q_free`.
struct EdgeSigns {
  double sq = 1, s1 = 1, s2 = 1, residual = 0;
};

inline EdgeSigns fit_edge(cplx p, cplx q, cplx w1, cplx w2, double theta, bool q_free) {
  const double c = std::cos(theta), t = std::tan(theta);
  EdgeSigns best{1, 1, 1, std::numeric_limits<double>::infinity()};
  for (double sq : {1.0, -1.0}) {
    if (!q_free && sq < 0) continue;
    const cplx qq = sq * q;
    const cplx e1 = p / c + qq * t, e2 = qq / c + p * t;
    for (double s1 : {1.0, -1.0})
      for (double s2 : {1.0, -1.0}) {
        const double r = std::max(std::abs(e1 - s1 * w1), std::abs(e2 - s2 * w2));
        if (r < best.residual) best = {sq, s1, s2, r};
      }
  }
  return best;
}

}  // namespace detail

/// Corner values of a proper 1-embedding of the star side (center A0). The
/// A0-centered picture is the diamond of the triangle Ising graph, so the
/// result carries (y1, y3, y5) and the triangle angles (t1, t3, t5).
inline CornerSolution corner_solution_from_embedding(const CubeConfig& s, double tol = 1e-9) {
  if (s.side() != Side::Star) throw ContractError("corner_solution_from_embedding expects a star configuration");
  const HexBoundary& h = s.hex();
  const Point A0 = s.center();
  const double t5 = theta_from_embedded_quad(Quad(h[1], h[2], h[3], A0));
  const double t1 = theta_from_embedded_quad(Quad(h[3], h[4], h[5], A0));
  const double t3 = theta_from_embedded_quad(Quad(h[5], h[6], h[1], A0));
  const ThetaTriple th = ThetaTriple::triangle(t1, t3, t5);

  using detail::principal_sqrt;
  cplx y1 = principal_sqrt(A0 - h[1]), y3 = principal_sqrt(A0 - h[3]), y5 = principal_sqrt(A0 - h[5]);
  CornerVector w{principal_sqrt(h[2] - h[1]), principal_sqrt(h[2] - h[3]), principal_sqrt(h[4] - h[3]),
                 principal_sqrt(h[4] - h[5]), principal_sqrt(h[6] - h[5]), principal_sqrt(h[6] - h[1])};

  // Edge t5 fixes y3, w1, w2; edge t1 fixes y5, w3, w4; edge t3 fixes w6, w5
  // and closes the cycle.
  const auto e5 = detail::fit_edge(y1, y3, w[0], w[1], t5, true);
  y3 *= e5.sq; w[0] *= e5.s1; w[1] *= e5.s2;
  const auto e1 = detail::fit_edge(y3, y5, w[2], w[3], t1, true);
  y5 *= e1.sq; w[2] *= e1.s1; w[3] *= e1.s2;
  const auto e3 = detail::fit_edge(y5, y1, w[4], w[5], t3, false);
  w[4] *= e3.s1; w[5] *= e3.s2;

  CornerSolution sol{w, {y1, y3, y5}, th};
  const double r = propagation_residual(sol);
  if (!(r <= tol))
    throw NumericRangeError("corner_solution_from_embedding: no consistent sign assignment (residual " +
                            std::to_string(r) + ")");
  return sol;
}

struct OneFlipResult {
  CubeConfig output;
  CornerSolution triangle_corners;  // input side, center A0
  CornerSolution star_corners;      // output side, center A7
  CornerMapReport map;
  double boundary_drift = 0.0;  // relative to the hexagon diameter
};

/// Cube move of a proper positively oriented star 1-embedding via corner
/// values: extract, transform the angles, map the corners, re-integrate.
inline OneFlipResult cube_move_1embedding(const CubeConfig& s, IsingRoute route = IsingRoute::Baxter,
                                          double tol = 1e-8) {
  const ExtendedAlpha one = ExtendedAlpha::finite(1.0);
  if (s.side() != Side::Star) throw StageError("input", "expected a star configuration");
  const EmbeddingReport in = verify_embedding(s, one, tol);
  if (!in.pass) throw StageError("input", "not a proper positive 1-embedding: " + in.failures.front());

  auto stage = [](const char* name, auto&& fn) {
    try {
      return fn();
    } catch (const StageError&) {
      throw;
    } catch (const Error& e) {
      throw StageError(name, e.what());
    }
  };

  const CornerSolution tri = stage("extract", [&] { return corner_solution_from_embedding(s); });
  const ThetaTriple star_th = stage("ising", [&] { return star_from_triangle(tri.thetas, route); });
  CornerMapReport rep;
  const CornerSolution star = stage("corner-map", [&] { return triangle_to_star_corners(tri, star_th, &rep); });
  const SEmbedding emb = stage("integrate", [&] { return build_s_embedding(star, s.hex()[1]); });

  const HexBoundary& h = s.hex();
  Point shift{0.0, 0.0};
  for (int i = 1; i <= 6; ++i) shift = shift + (h[i] - emb.at(i));
  shift = shift / 6.0;
  const Rect box = Rect::bounding(h.points());
  const double diam = std::max(box.width(), box.height());
  double drift = 0.0;
  for (int i = 1; i <= 6; ++i) drift = std::max(drift, distance(emb.at(i) + shift, h[i]) / diam);
  if (drift > tol) throw StageError("align", "boundary drift " + std::to_string(drift));

  const CubeConfig out = stage("output", [&] { return triangle_config(h, emb.at(7) + shift); });
  const EmbeddingReport vr = verify_embedding(out, one, tol);
  if (!vr.pass) throw StageError("verify", vr.failures.front());
  return {out, tri, star, rep, drift};
}

}  // namespace alphaembed
