#include <gtest/gtest.h>

#include "alphaembed/generators.hpp"
#include "alphaembed/suites.hpp"

using namespace alphaembed;

TEST(TolerancesTest, DefaultsAndOverrides) {
  Tolerances t;
  EXPECT_DOUBLE_EQ(t["route"], 1e-9);
  EXPECT_DOUBLE_EQ(t["span"], 1e-10);
  t.set("route", 1e-7);
  EXPECT_DOUBLE_EQ(t["route"], 1e-7);
  EXPECT_THROW(t.set("nope", 1.0), DomainError);
  EXPECT_THROW(t.set("route", -1.0), DomainError);
  EXPECT_THROW(t["nope"], DomainError);
}

class SmallSuite : public ::testing::TestWithParam<std::string> {};

TEST_P(SmallSuite, PassesAtSmallN) {
  const SuiteResult r = run_suite(GetParam(), 12, kDefaultSeed);
  EXPECT_TRUE(r.pass()) << to_json_text(r.to_json());
  EXPECT_EQ(r.to_json()["suite"].get<std::string>(), GetParam());
}

INSTANTIATE_TEST_SUITE_P(All, SmallSuite, ::testing::ValuesIn(suite_names()), [](const auto& info) {
  std::string s = info.param;
  for (char& c : s)
    if (c == '-') c = '_';
  return s;
});

TEST(Suites, Deterministic) {
  for (const char* name : {"ising-routes", "geometry", "flip-generic"}) {
    const std::string a = to_json_text(run_suite(name, 8, 99).to_json());
    const std::string b = to_json_text(run_suite(name, 8, 99).to_json());
    EXPECT_EQ(a, b) << name;
  }
}

TEST(Suites, TightToleranceFails) {
  Tolerances t;
  t.set("route", 1e-300);
  EXPECT_FALSE(run_suite("ising-routes", 20, 5, t).pass());
}

TEST(Suites, UnknownName) { EXPECT_THROW(run_suite("nope", 1, 1), DomainError); }
