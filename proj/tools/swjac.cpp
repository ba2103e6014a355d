// Command-line front end; talks to the library exclusively through the C API.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "swjacobi.h"

namespace {

using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInvalid = 2;

[[noreturn]] void die(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  std::exit(kExitInvalid);
}

// Flag values may be inline JSON, a path to a JSON file, or a keyword.
std::string resolveArg(const std::string& arg) {
  if (arg.empty() || arg[0] == '{' || arg[0] == '[') return arg;
  if (arg == "identity" || arg == "zero") return '"' + arg + '"';
  std::ifstream in(arg);
  if (!in) die("cannot read file: " + arg);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string statusText(swj_status st) {
  std::string msg = swj_last_error();
  return msg.empty() ? "status " + std::to_string(st) : msg;
}

struct CommonFlags {
  int n = 1;
  int m = 1;
  std::string M = "identity";
  std::string omega;
  std::string z = "zero";
};

void addMatrixFlags(CLI::App* cmd, CommonFlags& f, bool needOmega) {
  cmd->add_option("--n", f.n, "degree of Omega");
  cmd->add_option("--m", f.m, "rows of Z / degree of the index matrix");
  cmd->add_option("--M", f.M, "index matrix: 'identity', inline JSON, or a file path");
  auto* om = cmd->add_option("--omega", f.omega, "Siegel point as {\"re\":[[..]],\"im\":[[..]]}");
  if (needOmega) om->required();
  cmd->add_option("--z", f.z, "Z matrix ('zero', inline JSON, or a file path)");
}

int runThetaEval(const CommonFlags& f, double tol, int maxRadius, bool pretty) {
  json params{{"n", f.n}, {"m", f.m}, {"truncation_tol", tol}, {"max_radius", maxRadius}};
  params["omega"] = json::parse(resolveArg(f.omega));
  params["z"] = json::parse(resolveArg(f.z));
  params["M"] = json::parse(resolveArg(f.M));
  char* out = nullptr;
  swj_status st = swj_theta_eval(params.dump().c_str(), &out);
  if (st != SWJ_OK) die(statusText(st));
  if (pretty) {
    std::cout << json::parse(out).dump(2) << "\n";
  } else {
    std::cout << out << "\n";
  }
  swj_string_free(out);
  return kExitPass;
}

int runFactorEval(const std::string& which, const CommonFlags& f, const std::string& element) {
  std::string el = resolveArg(element);
  double re = 0.0, im = 0.0;
  swj_status st;
  if (which == "jhalf") {
    st = swj_j_half(el.c_str(), resolveArg(f.omega).c_str(), &re, &im);
  } else {
    json point{{"n", f.n}, {"m", f.m}};
    point["omega"] = json::parse(resolveArg(f.omega));
    point["z"] = json::parse(resolveArg(f.z));
    st = swj_j_m_star(el.c_str(), point.dump().c_str(), resolveArg(f.M).c_str(), &re, &im);
  }
  if (st != SWJ_OK) die(statusText(st));
  std::cout << json{{"value", {re, im}}}.dump() << "\n";
  return kExitPass;
}

int runVerify(const std::string& suite, const CommonFlags& f, int trials, double tol,
              double truncationTol, std::uint64_t seed, int jobs,
              const std::string& counterexample, bool pretty) {
  json opts{{"n", f.n},           {"m", f.m},       {"trials", trials},
            {"tol", tol},         {"seed", seed},   {"truncation_tol", truncationTol},
            {"jobs", jobs},       {"pretty", pretty}};
  opts["M"] = json::parse(resolveArg(f.M));
  if (!counterexample.empty()) opts["counterexample"] = counterexample;
  char* out = nullptr;
  swj_status st = swj_verify(suite.c_str(), opts.dump().c_str(), &out);
  if (st != SWJ_OK) die(statusText(st));
  std::cout << out << "\n";
  bool pass = json::parse(out).at("pass").get<bool>();
  swj_string_free(out);
  return pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jacobi-group / Weil-representation numerical toolkit"};
  app.require_subcommand(1);

  CommonFlags tf;
  double thetaTol = 1e-12;
  int maxRadius = 16;
  bool thetaPretty = false;
  auto* theta = app.add_subcommand("theta", "theta series commands")->require_subcommand(1);
  auto* thetaEval = theta->add_subcommand("eval", "evaluate the theta series");
  addMatrixFlags(thetaEval, tf, true);
  thetaEval->add_option("--tol", thetaTol, "certified truncation tolerance");
  thetaEval->add_option("--max-radius", maxRadius, "truncation radius cap");
  thetaEval->add_flag("--pretty", thetaPretty, "indent the output");

  CommonFlags jf;
  std::string element;
  auto* jhalf = app.add_subcommand("jhalf", "weight-1/2 factor")->require_subcommand(1);
  auto* jhalfEval = jhalf->add_subcommand("eval", "evaluate J_{1/2} of an element");
  addMatrixFlags(jhalfEval, jf, true);
  jhalfEval->add_option("--element", element, "element JSON or file path")->required();

  CommonFlags sf;
  std::string elementStar;
  auto* jmstar = app.add_subcommand("jmstar", "half-integral Jacobi factor")->require_subcommand(1);
  auto* jmstarEval = jmstar->add_subcommand("eval", "evaluate J*_M of an element");
  addMatrixFlags(jmstarEval, sf, true);
  jmstarEval->add_option("--element", elementStar, "element JSON or file path")->required();

  CommonFlags vf;
  std::string suite;
  int trials = 100;
  double tol = 0.0;
  double truncationTol = 1e-12;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string counterexample;
  bool pretty = false;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify
      ->add_option("suite", suite,
                   "one of: jhalf, cocycle, covariance, theta-transform, poisson, weil-ops")
      ->required();
  addMatrixFlags(verify, vf, false);
  verify->add_option("--trials", trials, "number of random trials");
  verify->add_option("--tol", tol, "pass threshold on the max relative error (0 = suite default)");
  verify->add_option("--truncation-tol", truncationTol, "theta truncation tolerance");
  verify->add_option("--seed", seed, "root seed; all trial randomness forks from it");
  verify->add_option("--jobs", jobs, "worker threads for independent trials");
  verify->add_option("--counterexample", counterexample,
                     "hypothesis-violation mode: odd-diagonal or det2");
  verify->add_flag("--pretty", pretty, "indent the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitInvalid;
  }

  try {
    if (thetaEval->parsed()) return runThetaEval(tf, thetaTol, maxRadius, thetaPretty);
    if (jhalfEval->parsed()) return runFactorEval("jhalf", jf, element);
    if (jmstarEval->parsed()) return runFactorEval("jmstar", sf, elementStar);
    if (verify->parsed())
      return runVerify(suite, vf, trials, tol, truncationTol, seed, jobs, counterexample, pretty);
  } catch (const nlohmann::json::exception& e) {
    die(e.what());
  }
  die("no command");
}
