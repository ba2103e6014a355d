#include "verify.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <json.hpp>
#include <mutex>
#include <thread>
#include <vector>

#include "json_io.hpp"

namespace swj {

namespace {

constexpr double kPi = 3.14159265358979323846;

RMatrix randomSym(int n, Rng& rng) {
  RMatrix b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) b(i, j) = b(j, i) = rng.uniform(-1.0, 1.0);
  return b;
}

RMatrix randomInvertibleReal(int n, Rng& rng) {
  for (;;) {
    RMatrix a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
    a += (rng.coin() ? 1.0 : -1.0) * RMatrix::Identity(n, n);
    if (std::abs(a.determinant()) > 0.2) return a;
  }
}

Generator randomRealGenerator(int kind, int n, int m, Rng& rng) {
  double sign = rng.coin() ? 1.0 : -1.0;
  switch (kind) {
    case 0: {
      RMatrix lambda(m, n), mu(m, n);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
          lambda(i, j) = rng.uniform(-1.0, 1.0);
          mu(i, j) = rng.uniform(-1.0, 1.0);
        }
      RMatrix kappa = randomSym(m, rng) - mu * lambda.transpose();
      return genHeisenberg(lambda, mu, kappa, sign);
    }
    case 1:
      return genTranslation(m, randomSym(n, rng), sign);
    case 2: {
      RMatrix alpha = randomInvertibleReal(n, rng);
      cplx eps = metaLift(dilationGen(alpha), 1).eps * sign;
      return genDilation(m, alpha, eps);
    }
    default:
      return genInversion(n, m, inversionPrincipalSheet(n) * sign);
  }
}

// Composite Simpson quadrature of the n=m=1 Gaussian integrand.
cplx gaussQuad1d(cplx omega, cplx z) {
  double y = omega.imag();
  double L = 8.0 / std::sqrt(std::min(y, 1.0)) + 2.0 * std::abs(z.imag());
  int segments = 8000;
  double h = 2.0 * L / segments;
  auto f = [&](double x) { return std::exp(cplx(0.0, kPi) * (omega * x * x + 2.0 * z * x)); };
  cplx acc = f(-L) + f(L);
  for (int i = 1; i < segments; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(-L + i * h);
  return acc * (h / 3.0);
}

std::size_t reversedIndex(const GridFunction& f, std::size_t flat) {
  std::size_t out = 0;
  std::vector<int> idx(f.dims());
  for (int a = f.dims() - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % f.N);
    flat /= f.N;
  }
  for (int a = 0; a < f.dims(); ++a) out = out * f.N + static_cast<std::size_t>(f.N - 1 - idx[a]);
  return out;
}

double parityLeakage(const GridFunction& f, int parity) {
  double peak = 0.0, leak = 0.0;
  for (const cplx& v : f.samples) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    cplx mirrored = f.samples[reversedIndex(f, i)];
    leak = std::max(leak, std::abs(f.samples[i] - static_cast<double>(parity) * mirrored));
  }
  return leak / peak;
}

using TrialFn = std::function<ResidualPair(int, Rng&)>;

ResidualPair runTrials(int trials, int jobs, std::uint64_t seed, const TrialFn& fn) {
  std::vector<ResidualPair> results(trials, ResidualPair{0.0, 0.0});
  Rng root(seed);
  int workers = std::max(1, std::min(jobs, trials));
  std::exception_ptr firstError;
  std::mutex errMutex;
  auto work = [&](int offset) {
    for (int t = offset; t < trials; t += workers) {
      try {
        Rng rng = root.fork(static_cast<std::uint64_t>(t));
        results[t] = fn(t, rng);
      } catch (...) {
        std::lock_guard<std::mutex> lock(errMutex);
        if (!firstError) firstError = std::current_exception();
        return;
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  if (firstError) std::rethrow_exception(firstError);
  ResidualPair agg{0.0, 0.0};
  for (const ResidualPair& r : results) {
    agg.absErr = std::max(agg.absErr, r.absErr);
    agg.relErr = std::max(agg.relErr, r.relErr);
  }
  return agg;
}

ResidualPair jhalfTrial(int idx, Rng& rng, int n) {
  SymplecticWord w = randomSymplecticWord(n, 1 + idx % 4, rng);
  SiegelPoint omega = randomSiegel(n, rng);
  MetaElement gs = metaLift(w.element, rng.coin() ? 1 : -1);
  cplx jh = jHalf(gs, omega);
  cplx det = jMatrixChecked(gs.base, omega).determinant();
  double abs = std::abs(jh * jh - det);
  return ResidualPair{abs, abs / std::abs(det)};
}

ResidualPair cocycleTrial(int idx, Rng& rng, int n) {
  SymplecticWord wg = randomSymplecticWord(n, 1 + idx % 3, rng);
  SymplecticWord wh = randomSymplecticWord(n, 1 + (idx / 2) % 3, rng);
  SiegelPoint omega = randomSiegel(n, rng);
  MetaElement gs = metaLift(wg.element, rng.coin() ? 1 : -1);
  MetaElement hs = metaLift(wh.element, rng.coin() ? 1 : -1);
  MetaElement prod = metaMul(gs, hs);
  cplx lhs = jHalf(prod, omega);
  cplx rhs = jHalf(gs, siegelAction(hs.base, omega)) * jHalf(hs, omega);
  double abs = std::abs(lhs - rhs);
  return ResidualPair{abs, abs / std::max(std::abs(rhs), 1e-300)};
}

ResidualPair covarianceTrial(int idx, Rng& rng, int n, int m) {
  JacobiPoint p = randomJacobiPoint(n, m, rng, 0.3);
  IndexMatrix M = makeIndexMatrix(randomSym(m, rng) * 0.3 + RMatrix::Identity(m, m) * 1.5);
  int kind = idx % 5;
  double rel;
  if (kind == 4) {
    std::vector<Generator> word;
    for (int k = 0; k < 3; ++k) word.push_back(randomRealGenerator(rng.uniformInt(0, 3), n, m, rng));
    rel = covarianceResidualWord(word, p, M, 8, rng);
  } else {
    rel = covarianceResidual(randomRealGenerator(kind, n, m, rng), p, M, 8, rng);
  }
  return ResidualPair{rel, rel};
}

ResidualPair thetaTransformTrial(int idx, Rng& rng, int n, int m, const IndexMatrix& M,
                                 double truncationTol, const std::string& counterexample) {
  for (int attempt = 0;; ++attempt) {
    try {
      if (counterexample == "odd-diagonal") {
        RMatrix b = RMatrix::Zero(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = i; j < n; ++j) b(i, j) = b(j, i) = rng.uniformInt(-1, 1) * 2.0;
        for (int i = 0; i < n; ++i) b(i, i) = 2.0 * rng.uniformInt(-1, 1) + 1.0;
        Generator w = genTranslation(m, b, 1.0);
        JacobiPoint p = randomJacobiPoint(n, m, rng, 0.5);
        // the would-be Case II value: rho = 1
        return thetaTransformResidualWith(cplx(1.0, 0.0), toMetaJacobi(w), p, M, truncationTol);
      }
      if (counterexample == "det2") {
        RMatrix m2 = RMatrix::Identity(m, m);
        m2(0, 0) = 2.0;
        IndexMatrix M2 = makeIndexMatrix(m2);
        Generator w = genInversion(n, m, inversionPrincipalSheet(n));
        JacobiPoint p = randomJacobiPoint(n, m, rng, 0.5);
        cplx rho(1.0, 0.0);
        for (int i = 0; i < m; ++i) rho *= w.eps;
        return thetaTransformResidualWith(rho, toMetaJacobi(w), p, M2, truncationTol);
      }
      std::vector<Generator> word = randomGeneratorWord(n, m, 1 + idx % 5, rng);
      JacobiPoint p = randomJacobiPoint(n, m, rng, 0.5);
      return thetaTransformResidual(word, p, M, truncationTol);
    } catch (const Error& e) {
      bool retryable = e.code() == Errc::ThetaNearZero || e.code() == Errc::RadiusCapExceeded;
      if (!retryable || attempt >= 9) throw;
    }
  }
}

ResidualPair poissonTrial(Rng& rng, int n, int m, const IndexMatrix& M, double truncationTol) {
  JacobiPoint p = randomJacobiPoint(n, m, rng, 0.5);
  PoissonCheck pc = poissonCheck(p.omega, p.z, M, truncationTol);
  return ResidualPair{pc.absErr, pc.relErr};
}

ResidualPair weilOpsTrial(int idx, Rng& rng) {
  int check = idx % 4;
  if (check == 0) {
    // closed-form Gaussian integral vs Simpson quadrature
    JacobiPoint p = randomJacobiPoint(1, 1, rng, 0.5);
    cplx closed = gaussianLatticeIntegral(p.omega, p.z);
    cplx quad = gaussQuad1d(p.omega.omega(0, 0), p.z(0, 0));
    double abs = std::abs(closed - quad);
    return ResidualPair{abs, abs / std::abs(quad)};
  }
  JacobiPoint p = randomJacobiPoint(1, 1, rng, 0.8);
  IndexMatrix M = identityIndex(1);
  Gaussian f = covariantMap(p.omega, CMatrix::Zero(1, 1), M);
  GridFunction grid = sampleGaussian(f, 6.0, 257);
  Generator inv = genInversion(1, 1, inversionPrincipalSheet(1));
  if (check == 1) {
    // inversion: quadrature oracle vs closed-form transport
    Gaussian fz = covariantMap(p.omega, p.z * 0.2, M);
    GridFunction gz = sampleGaussian(fz, 6.0, 257);
    GridFunction numeric = weilActionNumeric(inv, gz, M);
    Gaussian closed = weilAction(inv, fz);
    double worst = 0.0, scale = 0.0;
    // Compare at grid nodes so interpolation error does not mask the
    // quadrature accuracy of the transform itself.
    int mid = (numeric.N - 1) / 2;
    int stride = std::max(1, static_cast<int>(2.0 / numeric.step()) / 20);
    for (int i = -20; i <= 20; ++i) {
      RMatrix x(1, 1);
      x(0, 0) = numeric.axisCoord(mid + i * stride);
      cplx a = numeric.samples[static_cast<std::size_t>(mid + i * stride)];
      cplx b = evalGaussian(closed, x);
      worst = std::max(worst, std::abs(a - b));
      scale = std::max(scale, std::abs(b));
    }
    return ResidualPair{worst, worst / std::max(scale, 1e-300)};
  }
  if (check == 2) {
    // parity: even and odd inputs stay even/odd under the lambda=mu=0 generators
    double leak = parityLeakage(weilActionNumeric(inv, grid, M), 1);
    GridFunction odd = grid;
    for (std::size_t i = 0; i < odd.size(); ++i) {
      double x = odd.axisCoord(static_cast<int>(i));
      odd.samples[i] *= x;
    }
    leak = std::max(leak, parityLeakage(weilActionNumeric(inv, odd, M), -1));
    RMatrix b(1, 1);
    b(0, 0) = rng.uniform(-1.0, 1.0);
    leak = std::max(leak, parityLeakage(weilActionNumeric(genTranslation(1, b, 1.0), odd, M), -1));
    return ResidualPair{leak, leak};
  }
  // Plancherel: the inversion quadrature preserves the L2 norm
  GridFunction out = weilActionNumeric(inv, grid, M);
  double n0 = gridNorm2(grid), n1 = gridNorm2(out);
  double rel = std::abs(n1 - n0) / n0;
  return ResidualPair{rel, rel};
}

ojson indexEcho(const IndexMatrix& M) {
  if (M.mat.isIdentity(1e-15)) return ojson("identity");
  ojson rows = ojson::array();
  for (long i = 0; i < M.mat.rows(); ++i) {
    ojson row = ojson::array();
    for (long j = 0; j < M.mat.cols(); ++j) row.push_back(M.mat(i, j));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

double suiteDefaultTol(const std::string& suite) {
  if (suite == "theta-transform") return 1e-8;
  if (suite == "weil-ops") return 1e-4;
  return 1e-9;
}

std::string Report::toJson(bool pretty) const {
  ojson params{{"n", opts.n},
               {"m", opts.m},
               {"M", indexEcho(opts.M)},
               {"trials", opts.trials},
               {"tol", opts.tol},
               {"truncation_tol", opts.truncationTol}};
  if (!opts.counterexample.empty()) params["counterexample"] = opts.counterexample;
  ojson j{{"command", command},
          {"params", params},
          {"trials", opts.trials},
          {"max_abs_err", maxAbsErr},
          {"max_rel_err", maxRelErr},
          {"pass", pass},
          {"expected_fail", expectedFail},
          {"seed", opts.seed},
          {"runtime_ms", runtimeMs}};
  return pretty ? j.dump(2) : j.dump();
}

Report runSuite(const VerifyOptions& optsIn) {
  VerifyOptions opts = optsIn;
  if (opts.M.degree() == 0) opts.M = identityIndex(opts.m);
  if (opts.tol <= 0.0) opts.tol = suiteDefaultTol(opts.suite);
  if (opts.trials < 1) fail(Errc::InvalidArgument, "trials must be >= 1");
  if (!opts.counterexample.empty() && opts.suite != "theta-transform")
    fail(Errc::InvalidArgument, "counterexample modes apply to the theta-transform suite");

  auto start = std::chrono::steady_clock::now();
  Report rep;
  rep.command = "verify " + opts.suite;
  rep.opts = opts;
  rep.expectedFail = !opts.counterexample.empty();

  int n = opts.n, m = opts.m;
  ResidualPair agg;
  if (opts.suite == "jhalf") {
    agg = runTrials(opts.trials, opts.jobs, opts.seed,
                    [n](int t, Rng& r) { return jhalfTrial(t, r, n); });
  } else if (opts.suite == "cocycle") {
    agg = runTrials(opts.trials, opts.jobs, opts.seed,
                    [n](int t, Rng& r) { return cocycleTrial(t, r, n); });
  } else if (opts.suite == "covariance") {
    if (m % 2 == 0) fail(Errc::EvenM, "covariance suite needs odd m");
    agg = runTrials(opts.trials, opts.jobs, opts.seed,
                    [n, m](int t, Rng& r) { return covarianceTrial(t, r, n, m); });
  } else if (opts.suite == "theta-transform") {
    if (m % 2 == 0) fail(Errc::EvenM, "theta-transform suite needs odd m");
    IndexMatrix M = opts.M;
    double tt = opts.truncationTol;
    std::string ce = opts.counterexample;
    agg = runTrials(opts.trials, opts.jobs, opts.seed, [n, m, M, tt, ce](int t, Rng& r) {
      return thetaTransformTrial(t, r, n, m, M, tt, ce);
    });
  } else if (opts.suite == "poisson") {
    IndexMatrix M = opts.M;
    double tt = opts.truncationTol;
    agg = runTrials(opts.trials, opts.jobs, opts.seed,
                    [n, m, M, tt](int, Rng& r) { return poissonTrial(r, n, m, M, tt); });
  } else if (opts.suite == "weil-ops") {
    agg = runTrials(opts.trials, opts.jobs, opts.seed,
                    [](int t, Rng& r) { return weilOpsTrial(t, r); });
  } else {
    fail(Errc::InvalidArgument, "unknown suite: " + opts.suite);
  }

  rep.maxAbsErr = agg.absErr;
  rep.maxRelErr = agg.relErr;
  bool withinTol = rep.maxRelErr < opts.tol;
  rep.pass = withinTol != rep.expectedFail;
  rep.runtimeMs = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  return rep;
}

}  // namespace swj
