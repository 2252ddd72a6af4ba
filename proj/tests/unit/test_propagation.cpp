#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "alphaembed/generators.hpp"
#include "alphaembed/propagation.hpp"

using namespace alphaembed;

namespace {

constexpr double pi = std::numbers::pi;

Eigen::Matrix<double, 6, 3> as_matrix(const Basis& b) {
  Eigen::Matrix<double, 6, 3> m;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 6; ++i) m(i, k) = b[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
  return m;
}

std::array<cplx, 3> random_inner(Rng& rng) {
  std::array<cplx, 3> y{};
  for (cplx& v : y) {
    const double re = rng.normal();
    v = {re, rng.normal()};
  }
  return y;
}

}  // namespace

TEST(Basis, TriangleFirstVector) {
  const Basis u = basis_triangle(ThetaTriple::triangle(0.4, 0.6, pi / 4));
  EXPECT_NEAR(u[0][0], std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(u[0][1], 1.0, 1e-15);
  EXPECT_EQ(u[0][2], 0.0);
  EXPECT_EQ(u[0][3], 0.0);
  EXPECT_NEAR(u[0][4], std::tan(0.6), 1e-15);
  EXPECT_NEAR(u[0][5], 1.0 / std::cos(0.6), 1e-15);
  EXPECT_THROW(basis_triangle(ThetaTriple::star(0.4, 0.6, 0.7)), ContractError);
}

TEST(Basis, RankThree) {
  Rng rng(61);
  for (int i = 0; i < 100; ++i) {
    const ThetaTriple t = random_triangle_triple(rng);
    EXPECT_EQ(as_matrix(basis_triangle(t)).fullPivLu().rank(), 3);
    EXPECT_EQ(as_matrix(basis_star(star_from_triangle_baxter(t))).fullPivLu().rank(), 3);
  }
}

TEST(SpanEquality, Symmetric) {
  const ThetaTriple tri = ThetaTriple::triangle(pi / 6, pi / 6, pi / 6);
  const ThetaTriple star = ThetaTriple::star(pi / 3, pi / 3, pi / 3);
  EXPECT_LT(span_equality_residual(tri, star), 1e-12);
  for (double e : entry_identities(tri, star)) EXPECT_NEAR(e, 0.0, 1e-12);
}

TEST(SpanEquality, RandomAndMismatched) {
  Rng rng(62);
  for (int i = 0; i < 200; ++i) {
    const ThetaTriple t = random_triangle_triple(rng, 0.1, pi / 2 - 0.1);
    const ThetaTriple s = star_from_triangle_baxter(t);
    EXPECT_LT(span_equality_residual(t, s), 1e-10);
    for (double e : entry_identities(t, s)) EXPECT_LT(std::abs(e), 1e-10);
  }
  const ThetaTriple t = ThetaTriple::triangle(0.3, 0.5, 0.4);
  const ThetaTriple wrong = star_from_triangle_baxter(ThetaTriple::triangle(0.5, 0.5, 0.5));
  EXPECT_GT(span_equality_residual(t, wrong), 1e-3);
}

TEST(CornerMap, RoundTrip) {
  Rng rng(63);
  for (int i = 0; i < 100; ++i) {
    const ThetaTriple t = random_triangle_triple(rng, 0.1, pi / 2 - 0.1);
    const CornerSolution tri = make_corner_solution(t, random_inner(rng));
    CornerMapReport rep;
    const CornerSolution star = triangle_to_star_corners(tri, star_from_triangle_baxter(t), &rep);
    EXPECT_LT(rep.residual, 1e-10);
    EXPECT_LT(propagation_residual(star), 1e-10);
    const CornerSolution back = star_to_triangle_corners(star, t);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_LT(std::abs(back.inner[k] - tri.inner[k]), 1e-9 * (1 + std::abs(tri.inner[k])));
  }
}

TEST(CornerMap, MismatchedAnglesRejected) {
  Rng rng(64);
  const ThetaTriple t = ThetaTriple::triangle(0.3, 0.5, 0.4);
  const CornerSolution tri = make_corner_solution(t, random_inner(rng));
  EXPECT_THROW(triangle_to_star_corners(tri, ThetaTriple::star(0.9, 0.9, 0.9)), NumericRangeError);
}

TEST(SEmbeddingTest, ClosureAndRotation) {
  Rng rng(65);
  for (int i = 0; i < 100; ++i) {
    const ThetaTriple t = random_triangle_triple(rng, 0.1, pi / 2 - 0.1);
    const CornerSolution sol = make_corner_solution(t, random_inner(rng));
    const SEmbedding e = build_s_embedding(sol, {0, 0});
    EXPECT_LT(e.closure_residual, 1e-10);
    // Multiplying X by exp(i phi / 2) rotates S by phi.
    const double phi = rng.uniform(0, 2 * pi);
    const cplx r = std::polar(1.0, phi / 2);
    CornerSolution rot = sol;
    for (cplx& x : rot.w) x *= r;
    for (cplx& x : rot.inner) x *= r;
    const SEmbedding f = build_s_embedding(rot, {0, 0});
    for (int k = 0; k <= 6; ++k) {
      const cplx want = e.at(k).complex() * std::polar(1.0, phi);
      EXPECT_LT(std::abs(f.at(k).complex() - want), 1e-10 * (1 + std::abs(want)));
    }
    EXPECT_THROW(e.at(7), ContractError);
  }
}

TEST(QuadCorner, Examples) {
  const QuadCornerFrame f = QuadCornerFrame::solve(1.0, cplx(0, 1), pi / 4);
  EXPECT_LT(std::abs(f.c - cplx(1, std::sqrt(2.0))), 1e-15);
  EXPECT_LT(std::abs(f.d - cplx(std::sqrt(2.0), 1)), 1e-15);
  EXPECT_EQ(orientation_class(f), Orientation::Positive);
  EXPECT_EQ(orientation_class(f.conj()), Orientation::Negative);
  EXPECT_THROW(orientation_class(QuadCornerFrame::solve(1.0, 2.0, pi / 4)), DegenerateError);
  EXPECT_THROW(QuadCornerFrame::solve(1.0, cplx(0, 1), 0.0), DomainError);
}

TEST(QuadCorner, OrientationTestsAgree) {
  Rng rng(66);
  for (int i = 0; i < 300; ++i) {
    const cplx a = std::polar(rng.uniform(0.3, 2), rng.uniform(0, 2 * pi));
    const cplx b = a * std::polar(rng.uniform(0.3, 2), rng.uniform(0.05, pi - 0.05) * (rng.uniform() < 0.5 ? 1 : -1));
    const QuadCornerFrame f = QuadCornerFrame::solve(a, b, rng.uniform(0.05, pi / 2 - 0.05));
    EXPECT_TRUE(orientation_tests(f).agree());
    EXPECT_NE(orientation_class(f), orientation_class(f.conj()));
  }
}

TEST(ThetaFromQuad, Examples) {
  EXPECT_NEAR(theta_from_embedded_quad(Quad({0, 0}, {1, 0}, {1, 1}, {0, 1})), pi / 4, 1e-15);
  for (double th : {0.2, 0.7, 1.3}) {
    const auto q = QuadCornerFrame::solve(1.0, std::polar(1.3, 1.1), th).quad();
    EXPECT_NEAR(theta_from_embedded_quad(Quad(q[0], q[1], q[2], q[3])), th, 1e-12);
  }
  EXPECT_THROW(theta_from_embedded_quad(Quad({0, 0}, {2, 1}, {0, 3}, {-1, 1})), ContractError);
}

TEST(Pipeline, ExtractionRecoversAngles) {
  Rng rng(67);
  for (int i = 0; i < 50; ++i) {
    const auto g = random_star_1embedding(rng);
    const CornerSolution sol = corner_solution_from_embedding(g.config);
    for (int l : {1, 3, 5}) EXPECT_NEAR(sol.thetas.at(l), g.corners.thetas.at(l), 1e-9);
    EXPECT_LT(propagation_residual(sol), 1e-9);
  }
}

TEST(Pipeline, CornerRouteMatchesCurveRoute) {
  Rng rng(68);
  const ExtendedAlpha one = ExtendedAlpha::finite(1.0);
  for (int i = 0; i < 50; ++i) {
    const auto g = random_star_1embedding(rng);
    const OneFlipResult r = cube_move_1embedding(g.config);
    EXPECT_LT(r.boundary_drift, 1e-8);
    EXPECT_TRUE(verify_embedding(r.output, one, 1e-8).pass);
    const FlipResult f = solve_forward(g.config, one);
    ASSERT_FALSE(f.candidates.empty());
    EXPECT_LT(distance(f.candidates.front().center, r.output.center()), 1e-6);
  }
}

TEST(Pipeline, RejectsTriangleInput) {
  const HexBoundary h({Point{1, 0}, Point{0.5, 0.8}, Point{-0.5, 0.8}, Point{-1, 0}, Point{-0.5, -0.8}, Point{0.5, -0.8}});
  EXPECT_THROW(cube_move_1embedding(triangle_config(h, {0, 0})), StageError);
}
