#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <regex>
#include <string>

namespace {

struct RunResult {
  int exitCode;
  std::string output;
};

RunResult run(const std::string& args) {
  const char* cli = std::getenv("SWJAC_CLI");
  REQUIRE(cli != nullptr);
  std::string cmd = std::string(cli) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  int status = pclose(pipe);
  return RunResult{WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string stripRuntime(std::string s) {
  return std::regex_replace(s, std::regex("\"runtime_ms\":[0-9]+"), "\"runtime_ms\":0");
}

}  // namespace

TEST_CASE("theta eval prints value, radius and certificate") {
  RunResult r = run("theta eval --n 1 --m 1 --omega '{\"re\":[[0]],\"im\":[[1]]}' --z zero --M identity");
  CHECK(r.exitCode == 0);
  CHECK(r.output.find("1.08643481121") != std::string::npos);
  CHECK(r.output.find("\"radius\"") != std::string::npos);
  CHECK(r.output.find("\"certified_tol\"") != std::string::npos);
}

TEST_CASE("theta eval reports an uncertifiable tolerance on exit code 2") {
  RunResult r = run(
      "theta eval --n 1 --m 1 --omega '{\"re\":[[0]],\"im\":[[1]]}' --z zero --M identity --tol 1e-30");
  CHECK(r.exitCode == 2);
}

TEST_CASE("jhalf eval squares to the jacobian determinant") {
  RunResult r = run("jhalf eval --element '{\"kind\":\"inversion\",\"n\":1,\"m\":1}' --omega "
                    "'{\"re\":[[0]],\"im\":[[1]]}'");
  CHECK(r.exitCode == 0);
  // J(sigma_1, i) = i, so the value is a square root of i
  CHECK(r.output.find("0.7071067811865") != std::string::npos);
}

TEST_CASE("verify exits 0 on pass, 1 on fail, 2 on bad invocation") {
  RunResult pass = run("verify cocycle --n 1 --trials 10 --seed 3");
  CHECK(pass.exitCode == 0);
  CHECK(pass.output.find("\"pass\":true") != std::string::npos);

  // residuals around 1e-14 cannot meet a 1e-16 bar: honest failure
  RunResult failing = run("verify cocycle --n 1 --trials 10 --seed 3 --tol 1e-16");
  CHECK(failing.exitCode == 1);
  CHECK(failing.output.find("\"pass\":false") != std::string::npos);

  RunResult bad = run("verify bogus-suite --n 1");
  CHECK(bad.exitCode == 2);
}

TEST_CASE("verify reports are reproducible for a fixed seed") {
  std::string args = "verify theta-transform --n 1 --m 1 --trials 8 --seed 12";
  RunResult a = run(args), b = run(args);
  CHECK(a.exitCode == 0);
  CHECK(stripRuntime(a.output) == stripRuntime(b.output));
  // and the trial fan-out does not depend on the thread count
  RunResult c = run(args + " --jobs 4");
  std::string an = std::regex_replace(stripRuntime(a.output), std::regex("\"jobs\":[0-9]+"), "");
  std::string cn = std::regex_replace(stripRuntime(c.output), std::regex("\"jobs\":[0-9]+"), "");
  CHECK(an == cn);
}

TEST_CASE("counterexample suites pass by failing") {
  RunResult r = run(
      "verify theta-transform --n 1 --m 1 --trials 10 --seed 4 --counterexample odd-diagonal");
  CHECK(r.exitCode == 0);
  CHECK(r.output.find("\"expected_fail\":true") != std::string::npos);
  CHECK(r.output.find("\"pass\":true") != std::string::npos);

  RunResult d = run("verify theta-transform --n 1 --m 1 --trials 10 --seed 4 --counterexample det2");
  CHECK(d.exitCode == 0);
  CHECK(d.output.find("\"expected_fail\":true") != std::string::npos);
}
