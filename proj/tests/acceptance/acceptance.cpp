// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "alphaembed/generators.hpp"
#include "alphaembed/suites.hpp"

using namespace alphaembed;

namespace {

struct Criterion {
  int id;
  std::string title;
  std::function<std::vector<SuiteResult>()> run;
  double time_limit = 0.0;  // seconds, 0 = none
};

std::string metrics_text(const std::vector<SuiteResult>& rs) {
  std::string s;
  for (const auto& r : rs) {
    for (auto it = r.metrics.begin(); it != r.metrics.end(); ++it) {
      if (!s.empty()) s += ", ";
      s += it.key() + "=" + to_json_text(it.value(), -1);
      s.pop_back();
    }
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t seed = kDefaultSeed;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  const Tolerances tol;

  const std::vector<Criterion> criteria{
      {1, "ising route agreement (n=1000, tol 1e-9, < 10 s)", [&] { return std::vector{suite_ising_routes(1000, seed, tol)}; },
       10.0},
      {2, "symmetric checkpoint (tol 1e-12)", [&] { return std::vector{suite_symmetric_checkpoint(tol)}; }},
      {3, "closed-form round trip and KW conjugation (n=1000, tol 1e-10)",
       [&] { return std::vector{suite_ising_roundtrip(1000, seed, tol)}; }},
      {4, "elliptic identities (n=1000, tol 1e-10 / 1e-12)",
       [&] { return std::vector{suite_elliptic_identities(1000, seed, tol)}; }},
      {5, "1-embedding cube move (n=500, quad 1e-8, drift 1e-8, center 1e-6, grid 200)",
       [&] { return std::vector{suite_flip_alpha1(500, seed, tol, 200)}; }},
      {6, "generic flip, alpha in {1.5, 3, 4} (n=300 each, tol 1e-8)",
       [&] { return std::vector{suite_flip_generic(300, seed, tol)}; }},
      {7, "uniqueness probe (n=200, count <= 2)", [&] { return std::vector{suite_uniqueness_probe(200, seed)}; }},
      {8, "asymptotics (1% at 1e4, shrinking at 1e5)", [&] { return std::vector{suite_asymptotics(tol)}; }},
      {9, "geometry characterizations (n=1000, tol 1e-10)", [&] { return std::vector{suite_geometry(1000, seed, tol)}; }},
      {10, "span equality (n=500, tol 1e-10)", [&] { return std::vector{suite_span_equality(500, seed, tol)}; }},
  };

  std::printf("acceptance seed=%llu\n", static_cast<unsigned long long>(seed));
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<SuiteResult> rs;
    std::string error;
    try {
      rs = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = error.empty();
    std::size_t nfail = 0;
    for (const auto& r : rs) {
      ok = ok && r.pass();
      nfail += r.failures.size();
    }
    const bool slow = c.time_limit > 0 && secs >= c.time_limit;
    ok = ok && !slow;
    std::printf("[%s] criterion %d: %s | %s | failures=%zu | %.2fs%s\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(),
                metrics_text(rs).c_str(), nfail, secs, slow ? " (over time limit)" : "");
    if (!error.empty()) std::printf("    error: %s\n", error.c_str());
    for (const auto& r : rs)
      for (std::size_t i = 0; i < r.failures.size() && i < 5; ++i)
        std::printf("    %s %s\n", r.suite.c_str(), r.failures[i].c_str());
    failed += !ok;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
