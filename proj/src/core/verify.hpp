#pragma once

#include <cstdint>
#include <string>

#include "theta.hpp"

namespace swj {

struct VerifyOptions {
  std::string suite;           // jhalf | cocycle | covariance | theta-transform | poisson | weil-ops
  int n = 1;
  int m = 1;
  IndexMatrix M;               // defaults to I_m when mat is empty
  int trials = 100;
  double tol = 0.0;            // 0 -> per-suite default
  double truncationTol = 1e-12;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string counterexample;  // "", "odd-diagonal", "det2"
};

double suiteDefaultTol(const std::string& suite);

struct Report {
  std::string command;
  VerifyOptions opts;
  double maxAbsErr = 0.0;
  double maxRelErr = 0.0;
  bool pass = false;
  bool expectedFail = false;
  long runtimeMs = 0;
  std::string toJson(bool pretty = false) const;
};

// Runs the named suite; trials fan out over `jobs` threads, each trial seeded by
// an independent fork of the root seed so results do not depend on scheduling.
Report runSuite(const VerifyOptions& opts);

}  // namespace swj
