#pragma once

// Seeded instance generators for tests, the acceptance suite and the CLI.
// Draws go through Rng so that a seed produces the same instances on every
// standard library.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <utility>

#include "alphaembed/cube_move.hpp"
#include "alphaembed/curves.hpp"
#include "alphaembed/ising.hpp"
#include "alphaembed/propagation.hpp"

namespace alphaembed {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

class Rng {
 public:
  explicit Rng(std::uint64_t seed = kDefaultSeed) : eng_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (spare_) {
      const double v = *spare_;
      spare_.reset();
      return v;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2 * std::numbers::pi * u2);
    return r * std::cos(2 * std::numbers::pi * u2);
  }

  Point point(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi)}; }
  Point polar(double r, double phi) { return {r * std::cos(phi), r * std::sin(phi)}; }

 private:
  std::mt19937_64 eng_;
  std::optional<double> spare_;
};

inline ThetaTriple random_triangle_triple(Rng& rng, double lo = 0.05, double hi = half_pi - 0.05) {
  const double a = rng.uniform(lo, hi), b = rng.uniform(lo, hi), c = rng.uniform(lo, hi);
  return ThetaTriple::triangle(a, b, c);
}

/// Convex quad whose diagonals meet at an interior point.
inline Quad random_convex_quad(Rng& rng) {
  const Point p = rng.point(-1, 1);
  const double phi = rng.uniform(0, 2 * std::numbers::pi);
  const double psi = phi + rng.uniform(0.2, std::numbers::pi - 0.2);
  const Point u = rng.polar(1, phi), v = rng.polar(1, psi);
  return Quad(p + rng.uniform(0.1, 2) * u, p + rng.uniform(0.1, 2) * v, p - rng.uniform(0.1, 2) * u,
              p - rng.uniform(0.1, 2) * v);
}

/// Side lengths of a realizable quad (each below the sum of the others).
inline SideLengths random_side_lengths(Rng& rng) {
  for (;;) {
    std::array<double, 4> l{};
    for (double& x : l) x = rng.uniform(0.1, 1.0);
    bool ok = true;
    for (std::size_t i = 0; i < 4; ++i) ok = ok && l[i] < l[(i + 1) % 4] + l[(i + 2) % 4] + l[(i + 3) % 4];
    if (ok) return {l[0], l[1], l[2], l[3]};
  }
}

struct GeneratedOneEmbedding {
  CubeConfig config;
  CornerSolution corners;
};

/// Proper positively oriented star 1-embedding from random angles and
/// random inner corner values, rejecting until every check passes.
inline GeneratedOneEmbedding random_star_1embedding(Rng& rng, int max_tries = 100000) {
  const ExtendedAlpha one = ExtendedAlpha::finite(1.0);
  for (int k = 0; k < max_tries; ++k) {
    const double t1 = rng.uniform(0.1, 1.45), t3 = rng.uniform(0.1, 1.45), t5 = rng.uniform(0.1, 1.45);
    std::array<cplx, 3> y{};
    for (cplx& v : y) {
      const double re = rng.normal();
      v = {re, rng.normal()};
    }
    const CornerSolution sol = make_corner_solution(ThetaTriple::triangle(t1, t3, t5), y);
    try {
      const SEmbedding e = build_s_embedding(sol, {0.0, 0.0});
      const CubeConfig cfg = star_config(e.hex(), e.at(0));
      const PolygonCheck hc = is_proper_polygon(cfg.hex().points());
      if (!hc.proper || hc.orientation != Orientation::Positive) continue;
      if (!verify_embedding(cfg, one, 1e-10).pass) continue;
      return {cfg, sol};
    } catch (const Error&) {
      continue;
    }
  }
  throw NumericRangeError("random_star_1embedding: no valid sample");
}

namespace detail {

// A point of curve_through(a, b, c) for alpha > 1 at a random canonical
// abscissa.
inline Point random_point_on(Rng& rng, const ConstructionCurve& c) {
  const double x = rng.uniform(-2.0, 2.0);
  return c.frame().from_canonical({x, height_at(c, x)});
}

}  // namespace detail

/// Alpha-realization of the star side for alpha > 1, built quad by quad
/// around A0 = (0, 0).
inline CubeConfig random_alpha_star(Rng& rng, const ExtendedAlpha& alpha, int max_tries = 100000) {
  if (!alpha.is_finite() || !(alpha.value() > 1.0)) throw ContractError("random_alpha_star requires alpha > 1");
  const Point a0{0.0, 0.0};
  for (int k = 0; k < max_tries; ++k) {
    try {
      const double phi1 = rng.uniform(0, 2 * std::numbers::pi);
      const Point a1 = rng.polar(rng.uniform(0.6, 1.4), phi1);
      const Point a2 = rng.polar(rng.uniform(0.8, 1.8), phi1 + rng.uniform(0.5, 1.5));
      const Point a3 = detail::random_point_on(rng, curve_through(a2, a0, a1, alpha));
      const double phi3 = std::atan2(a3.y, a3.x);
      const Point a4 = rng.polar(rng.uniform(0.8, 1.8), phi3 + rng.uniform(0.5, 1.5));
      const Point a5 = detail::random_point_on(rng, curve_through(a4, a0, a3, alpha));
      const Point a6 = detail::random_point_on(rng, curve_through(a5, a1, a0, alpha));
      const std::array<Point, 6> pts{a1, a2, a3, a4, a5, a6};
      bool tame = true;
      for (const Point& p : pts) tame = tame && norm(p) < 20.0;
      if (!tame) continue;
      std::array<Point, 7> all{a0, a1, a2, a3, a4, a5, a6};
      if (detail::any_three_aligned(all, kCollinearityTol)) continue;
      const CubeConfig cfg = star_config(HexBoundary(pts), a0);
      if (!verify_realization(cfg, alpha, 1e-12).pass) continue;
      return cfg;
    } catch (const Error&) {
      continue;
    }
  }
  throw NumericRangeError("random_alpha_star: no valid sample");
}

/// Two alpha = 1 curves sharing exactly one focus.
inline std::pair<ConstructionCurve, ConstructionCurve> random_branch_pair(Rng& rng) {
  const ExtendedAlpha one = ExtendedAlpha::finite(1.0);
  for (;;) {
    const Point f = rng.point(-1, 1), g1 = rng.point(-2, 2), g2 = rng.point(-2, 2);
    const Point c1 = rng.point(-3, 3), c2 = rng.point(-3, 3);
    if (distance(f, g1) < 0.1 || distance(f, g2) < 0.1 || distance(g1, g2) < 0.1) continue;
    try {
      ConstructionCurve b1 = rng.uniform() < 0.5 ? curve_through(f, g1, c1, one) : curve_through(g1, f, c1, one);
      ConstructionCurve b2 = rng.uniform() < 0.5 ? curve_through(f, g2, c2, one) : curve_through(g2, f, c2, one);
      return {b1, b2};
    } catch (const Error&) {
      continue;
    }
  }
}

}  // namespace alphaembed
