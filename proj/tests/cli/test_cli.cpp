#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "alphaembed/io.hpp"

using namespace alphaembed;

namespace {

struct Proc {
  int status;
  std::string out;
};

Proc run(const std::string& args, bool merge_stderr = false, const std::string& env = "") {
  const std::string cmd = env + std::string(ALPHAEMBED_CLI) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, {}};
  std::string out;
  char buf[4096];
  while (std::size_t k = std::fread(buf, 1, sizeof buf, p)) out.append(buf, k);
  const int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string sample(const char* name) { return std::string(ALPHAEMBED_SAMPLES) + "/" + name; }

}  // namespace

TEST(Cli, IsingSymmetricCheckpoint) {
  const Proc r = run("ising transform --theta 0.5235987755982988,0.5235987755982988,0.5235987755982988 --direction star");
  ASSERT_EQ(r.status, 0) << r.out;
  const Json j = parse_json_text(r.out);
  EXPECT_NEAR(j["kprime"].get<double>(), 1.0, 1e-12);
  for (const auto& [route, res] : j["results"].items())
    for (const auto& t : res["theta"]) EXPECT_NEAR(t.get<double>(), std::numbers::pi / 3, 1e-12) << route;
  EXPECT_TRUE(j["agree"].get<bool>());
}

TEST(Cli, IsingInputForms) {
  const Proc a = run("ising transform --theta 0.3,0.5,0.4 --direction star --route closed");
  const Json ja = parse_json_text(a.out);
  std::string js;
  for (const auto& v : ja["input"]["J"]) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    js += (js.empty() ? "" : ",") + std::string(buf);
  }
  const Proc b = run("ising transform --J " + js + " --direction star --route closed");
  ASSERT_EQ(a.status, 0);
  ASSERT_EQ(b.status, 0);
  const Json jb = parse_json_text(b.out);
  for (std::size_t k = 0; k < 3; ++k)
    EXPECT_NEAR(ja["results"]["closed"]["theta"][k].get<double>(), jb["results"]["closed"]["theta"][k].get<double>(), 1e-12);
}

TEST(Cli, QuadCheckExitCodes) {
  EXPECT_EQ(run("quad check --quad \"0,0 1,0 1,1 0,1\" --alpha 1").status, 0);
  EXPECT_EQ(run("quad check --quad \"0,0 1,1 1,0 0,1\" --alpha 1").status, 1);
  EXPECT_EQ(run("quad check --quad \"0,0 2,1 0,3 -1,1\" --alpha 2").status, 0);
  EXPECT_EQ(run("quad check --quad \"0,0 2,1\" --alpha 2").status, 2);
}

TEST(Cli, EllipticPoleIsRangeError) {
  const Proc r = run("elliptic eval --fn ns --m 0.4 --tau 0", true);
  EXPECT_EQ(r.status, 3);
  EXPECT_NE(r.out.find("\"exit_code\": 3"), std::string::npos) << r.out;
  const Proc k = run("elliptic eval --fn K --m 0.5");
  ASSERT_EQ(k.status, 0);
  EXPECT_NE(k.out.find("1.85407467730137"), std::string::npos) << k.out;
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run("--tol.bogus=1 verify --suite geometry --n 3").status, 2);
  EXPECT_EQ(run("verify --suite nope").status, 2);
  EXPECT_EQ(run("flip --in /nonexistent.json").status, 2);
  EXPECT_EQ(run("no-such-command").status, 2);
}

TEST(Cli, FlipInvalidInstanceReportsStage) {
  const std::string path = testing::TempDir() + "bad_instance.json";
  FILE* f = std::fopen(path.c_str(), "w");
  ASSERT_NE(f, nullptr);
  std::fputs("{\"alpha\": 2, \"hex\": [[1,0],[0.5,0.8],[-0.5,0.8],[-1,0],[-0.5,-0.8],[0.5,-0.8]],"
             " \"center\": [0.3, 0.1], \"side\": \"star\"}", f);
  std::fclose(f);
  const Proc r = run("flip --in " + path, true);
  EXPECT_EQ(r.status, 2) << r.out;
  EXPECT_NE(r.out.find("\"stage\": \"input\""), std::string::npos) << r.out;
}

TEST(Cli, FlipSamples) {
  for (const char* s : {"alpha1_star.json", "alpha2_star.json", "alpha3_star.json"}) {
    const Proc r = run("flip --in " + sample(s));
    ASSERT_EQ(r.status, 0) << s << "\n" << r.out;
    const Json j = parse_json_text(r.out);
    EXPECT_GE(j["verified"].get<int>(), 1) << s;
  }
}

TEST(Cli, Deterministic) {
  for (const char* args : {"verify --suite flip-generic --n 4 --seed 7", "verify --suite ising-routes --n 20",
                           "flip --in " ALPHAEMBED_SAMPLES "/alpha3_star.json"}) {
    const Proc a = run(args), b = run(args);
    EXPECT_EQ(a.status, b.status) << args;
    EXPECT_EQ(a.out, b.out) << args;
    EXPECT_FALSE(a.out.empty()) << args;
  }
}

TEST(Cli, SeedFromEnvironment) {
  const Proc a = run("verify --suite ising-routes --n 5 --seed 123");
  const Proc b = run("verify --suite ising-routes --n 5");
  const Proc c = run("verify --suite ising-routes --n 5", false, "ALPHAEMBED_SEED=123 ");
  EXPECT_EQ(c.out, a.out);
  EXPECT_NE(b.out, a.out);
}

TEST(Cli, CurveSampleCsv) {
  const Proc r = run("--format csv curve sample --alpha 2 --foci \"0,0 0,1\" --through 0,0.75 --window -2,-2,2,2");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("0.75"), std::string::npos);
}
