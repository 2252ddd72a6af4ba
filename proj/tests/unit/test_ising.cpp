#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "alphaembed/generators.hpp"
#include "alphaembed/ising.hpp"

using namespace alphaembed;

namespace {

constexpr double pi = std::numbers::pi;

const ThetaTriple kSym6 = ThetaTriple::triangle(pi / 6, pi / 6, pi / 6);
const ThetaTriple kSym4 = ThetaTriple::triangle(pi / 4, pi / 4, pi / 4);
constexpr IsingRoute kRoutes[] = {IsingRoute::Baxter, IsingRoute::Closed, IsingRoute::Elliptic};

}  // namespace

TEST(Parameterizations, Examples) {
  // mpmath: (1/2) ln((1 + sin t) / cos t) at t = pi/6.
  EXPECT_NEAR(J_from_theta(Theta(pi / 6)), 0.27465307216702742285, 1e-15);
  EXPECT_NEAR(x_from_theta(Theta(pi / 6)), std::tan(pi / 12), 1e-15);
  EXPECT_NEAR(theta_from_J(J_from_theta(Theta(0.9))).value(), 0.9, 1e-15);
  EXPECT_NEAR(theta_from_x(x_from_theta(Theta(0.9))).value(), 0.9, 1e-15);
  EXPECT_LT(theta_from_J(1e-9).value(), 1e-8);
  EXPECT_GT(x_from_theta(Theta(pi / 2 - 1e-9)), 1 - 1e-8);
  EXPECT_LT(x_from_theta(Theta(pi / 2 - 1e-9)), 1.0);
  EXPECT_THROW(Theta(0.0), DomainError);
  EXPECT_THROW(Theta(pi / 2), DomainError);
}

TEST(Parameterizations, TanhOfJIsX) {
  Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    const Theta t(rng.uniform(0.01, pi / 2 - 0.01));
    EXPECT_NEAR(std::tanh(J_from_theta(t)), x_from_theta(t), 1e-14);
  }
}

TEST(Triple, Labels) {
  const ThetaTriple t = ThetaTriple::triangle(0.1, 0.2, 0.3);
  EXPECT_DOUBLE_EQ(t.at(1), 0.1);
  EXPECT_DOUBLE_EQ(t.at(3), 0.2);
  EXPECT_DOUBLE_EQ(t.at(5), 0.3);
  EXPECT_DOUBLE_EQ(t.at(7), 0.1);
  EXPECT_THROW(t.at(2), ContractError);
  EXPECT_THROW(star_from_triangle_closed(ThetaTriple::star(0.1, 0.2, 0.3)), ContractError);
}

TEST(KwDual, Examples) {
  EXPECT_NEAR(kw_dual(kw_dual(0.37)), 0.37, 1e-15);
  EXPECT_NEAR(kw_dual(pi / 4), pi / 4, 1e-16);
  EXPECT_NEAR(kw_dual(pi / 6), pi / 3, 1e-15);
}

TEST(Baxter, Kprime) {
  EXPECT_NEAR(baxter_kprime(kSym6), 1.0, 1e-12);
  // mpmath values.
  EXPECT_NEAR(baxter_kprime(kSym4), 0.30632714759886090383, 1e-14);
  EXPECT_NEAR(baxter_kprime(ThetaTriple::triangle(0.3, 0.5, 0.4)), 1.8434279993113172215, 1e-13);
  Rng rng(32);
  for (int i = 0; i < 100; ++i) EXPECT_GT(baxter_kprime(random_triangle_triple(rng)), 0.0);
}

TEST(Baxter, StarTriple) {
  const ThetaTriple s = star_from_triangle_baxter(kSym6);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(s[i], pi / 3, 1e-12);
  const ThetaTriple t = star_from_triangle_baxter(ThetaTriple::triangle(0.3, 0.5, 0.4));
  EXPECT_NEAR(t.at(2), 0.90875011491364749944, 1e-13);
  EXPECT_NEAR(t.at(4), 1.0525473476352774297, 1e-13);
  EXPECT_NEAR(t.at(6), 0.78187597479273466701, 1e-13);
}

TEST(Baxter, TanProductConstant) {
  Rng rng(33);
  for (int i = 0; i < 300; ++i) {
    const ThetaTriple t = random_triangle_triple(rng);
    const ThetaTriple s = star_from_triangle_baxter(t);
    const double kp = baxter_kprime(t);
    for (int l : {1, 3, 5}) EXPECT_NEAR(std::tan(t.at(l)) * std::tan(s.at(l + 3)) * kp, 1.0, 1e-11);
  }
}

TEST(Baxter, MonotoneAtFixedKprime) {
  // theta4 = atan(1 / (k' tan theta1)) decreases in theta1.
  const double kp = 0.7;
  double prev = INFINITY;
  for (double t1 = 0.1; t1 < 1.5; t1 += 0.1) {
    const double t4 = std::atan(1.0 / (kp * std::tan(t1)));
    EXPECT_LT(t4, prev);
    prev = t4;
  }
}

TEST(Closed, HandArithmetic) {
  const ThetaTriple s = star_from_triangle_closed(kSym6);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(s[i], pi / 3, 1e-12);
  const ThetaTriple t = triangle_from_star_closed(ThetaTriple::star(pi / 3, pi / 3, pi / 3));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(t[i], pi / 6, 1e-12);
}

TEST(Closed, LabelOrientation) {
  // Output label 2 uses inputs (theta5, theta3, theta1).
  const ThetaTriple tri = ThetaTriple::triangle(0.3, 0.5, 0.4);
  const double a = tri.at(5), b = tri.at(3), c = tri.at(1);
  const double want = std::acos(std::sin(a) * std::cos(b) * std::cos(c) / (std::sin(a) + std::sin(b) * std::sin(c)));
  EXPECT_NEAR(star_from_triangle_closed(tri).at(2), want, 1e-15);
  EXPECT_NEAR(star_from_triangle_closed(tri).at(2), 0.90875011491364749944, 1e-13);
}

TEST(Elliptic, Modulus) {
  // sum = pi/2: m = 0.
  EXPECT_NEAR(solve_modulus(kSym6).m(), 0.0, 1e-12);
  const Modulus m4 = solve_modulus(kSym4);
  EXPECT_GT(m4.m(), 0.0);
  EXPECT_NEAR(m4.m(), 0.9061636786439456864, 1e-12);
  EXPECT_NEAR(m4.kprime(), baxter_kprime(kSym4), 1e-9);
  EXPECT_LT(solve_modulus(ThetaTriple::triangle(0.3, 0.5, 0.4)).m(), 0.0);
  EXPECT_NEAR(solve_modulus(ThetaTriple::triangle(0.3, 0.5, 0.4)).m(), -2.3982267886449257665, 1e-11);
}

TEST(Elliptic, AnglesAndStar) {
  const ThetaTriple s = star_from_triangle_elliptic(kSym6);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(s[i], pi / 3, 1e-12);
  Rng rng(34);
  for (int i = 0; i < 200; ++i) {
    const ThetaTriple t = random_triangle_triple(rng);
    const Modulus mod = solve_modulus(t);
    const EllipticAngles e = elliptic_angles(t, mod);
    EXPECT_NEAR(e.thetaprime[0] + e.thetaprime[1] + e.thetaprime[2], pi / 2, 1e-11);
    EXPECT_NEAR(e.tau[0] + e.tau[1] + e.tau[2], complete_K(mod), 1e-11);
  }
}

TEST(IsingProperty, RoutesAgree) {
  Rng rng(35);
  for (int i = 0; i < 300; ++i) {
    const ThetaTriple t = random_triangle_triple(rng);
    const ThetaTriple a = star_from_triangle(t, IsingRoute::Baxter);
    for (IsingRoute r : kRoutes) {
      const ThetaTriple b = star_from_triangle(t, r);
      for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(a[k], b[k], 1e-9) << to_string(r);
    }
  }
}

TEST(IsingProperty, RoundTripAllRoutes) {
  Rng rng(36);
  for (int i = 0; i < 300; ++i) {
    const ThetaTriple t = random_triangle_triple(rng);
    for (IsingRoute r : kRoutes) {
      const ThetaTriple back = triangle_from_star(star_from_triangle(t, r), r);
      for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(back[k], t[k], 1e-10) << to_string(r);
    }
  }
}

TEST(IsingProperty, KramersWannierConjugation) {
  Rng rng(37);
  for (int i = 0; i < 300; ++i) {
    const ThetaTriple s = star_from_triangle_closed(random_triangle_triple(rng));
    const ThetaTriple dual = ThetaTriple::triangle(kw_dual(s.at(4)), kw_dual(s.at(6)), kw_dual(s.at(2)));
    const ThetaTriple img = star_from_triangle_closed(dual);
    const ThetaTriple lhs = triangle_from_star_closed(s);
    EXPECT_NEAR(lhs.at(1), kw_dual(img.at(4)), 1e-10);
    EXPECT_NEAR(lhs.at(3), kw_dual(img.at(6)), 1e-10);
    EXPECT_NEAR(lhs.at(5), kw_dual(img.at(2)), 1e-10);
  }
}
