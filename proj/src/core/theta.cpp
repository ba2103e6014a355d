#include "theta.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace swj {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kIntTol = 1e-9;
// Below this, a double-precision shell sum cannot certify its own tail.
constexpr double kCertFloor = 1e-14;

bool isIntegralMat(const RMatrix& a) {
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      if (std::abs(a(i, j) - std::round(a(i, j))) > kIntTol) return false;
  return true;
}

cplx powInt(cplx z, long k) {
  cplx acc(1.0, 0.0);
  cplx base = k < 0 ? cplx(1.0, 0.0) / z : z;
  for (long i = 0; i < std::labs(k); ++i) acc *= base;
  return acc;
}

}  // namespace

int truncationRadius(const IndexMatrix& M, const SiegelPoint& omega, const CMatrix& z,
                     double tol, int maxRadius) {
  if (tol <= 0.0) fail(Errc::InvalidArgument, "truncation tolerance must be positive");
  if (tol < kCertFloor)
    fail(Errc::RadiusCapExceeded, "tolerance below the double-precision certification floor");
  if (z.rows() != M.degree() || z.cols() != omega.degree())
    fail(Errc::ShapeMismatch, "Z must be m x n");
  double a = kPi * minEigSym(M.mat) * minEigSym(omega.imagPart());
  double b = 2.0 * kPi * M.mat.norm() * z.imag().matrix().norm();
  int d = static_cast<int>(z.size());
  double vertex = b / (2.0 * a);
  double sqrtd = std::sqrt(static_cast<double>(d));
  auto shellBound = [&](long r) -> double {
    double cnt = std::pow(2.0 * r + 1.0, d) - std::pow(2.0 * r - 1.0, d);
    double lo = static_cast<double>(r), hi = sqrtd * r;
    double t = std::clamp(vertex, lo, hi);  // argmax of -a t^2 + b t on [lo, hi]
    return cnt * std::exp(-a * t * t + b * t);
  };
  for (int R = 0; R <= maxRadius; ++R) {
    double tail = 0.0;
    for (long r = R + 1;; ++r) {
      double s = shellBound(r);
      tail += s;
      if (tail >= tol) break;
      if (r > vertex && (s < tol * 1e-6 || s < 1e-300)) break;
    }
    if (tail < tol) return R;
  }
  fail(Errc::RadiusCapExceeded, "certified radius exceeds the cap");
}

ThetaResult thetaEvalDetailed(const JacobiPoint& p, const ThetaParams& params) {
  int m = p.degreeM(), n = p.degreeN();
  if (params.M.degree() != m) fail(Errc::ShapeMismatch, "index degree != rows of Z");
  // Half the budget certifies the radius, half covers pruned interior terms.
  double tol = params.truncationTol;
  int R = truncationRadius(params.M, p.omega, p.z, 0.5 * tol, params.maxRadius);
  int d = m * n;
  // Exponent of a term is pi*i (v^T Q v + 2 L . v) in row-major coordinates of xi.
  CMatrix Q(d, d);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      for (int i2 = 0; i2 < m; ++i2)
        for (int j2 = 0; j2 < n; ++j2)
          Q(i * n + j, i2 * n + j2) = params.M.mat(i, i2) * p.omega.omega(j, j2);
  CMatrix lz = params.M.mat.cast<cplx>() * p.z;
  std::vector<std::vector<cplx>> lin(d + 1, std::vector<cplx>(d));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) lin[0][i * n + j] = lz(i, j);

  // |term(v)| = exp(-f(v)) with f(v) = v^T A v + 2 b.v, A = pi * Im Q positive
  // definite. Complete squares in reversed variable order so that after fixing
  // v_0..v_{a-1} the determined squares already lower-bound f over the whole
  // subtree; that makes safe pruning of negligible subtrees possible.
  RMatrix A = kPi * Q.imag();
  Eigen::VectorXd b(d);
  for (int a = 0; a < d; ++a) b(a) = kPi * lin[0][a].imag();
  RMatrix Arev(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) Arev(i, j) = A(d - 1 - i, d - 1 - j);
  Eigen::LLT<RMatrix> llt(Arev);
  if (llt.info() != Eigen::Success) fail(Errc::ImNotPositiveDefinite, "Im part lost definiteness");
  RMatrix Rt = llt.matrixU();  // Arev = Rt^T Rt, Rt upper triangular
  Eigen::VectorXd brev(d);
  for (int i = 0; i < d; ++i) brev(i) = b(d - 1 - i);
  Eigen::VectorXd g = Rt.transpose().triangularView<Eigen::Lower>().solve(brev);
  double gNorm2 = g.squaredNorm();
  double boxCount = std::pow(2.0 * R + 1.0, d);
  double pruneTol = 0.5 * tol / boxCount;
  double pruneLog = pruneTol > 0.0 ? std::log(pruneTol) : -745.0;

  // Lexicographic sweep, terms binned by shell so the final reduction runs in
  // increasing max-entry norm with lexicographic order inside each shell.
  std::vector<cplx> bucket(R + 1, cplx(0.0, 0.0));
  std::vector<int> vfix(d, 0);
  std::function<void(int, cplx, int, double)> rec = [&](int axis, cplx phase, int shell,
                                                        double partialSq) {
    if (axis == d) {
      bucket[shell] += std::exp(cplx(0.0, kPi) * phase);
      return;
    }
    for (int v = -R; v <= R; ++v) {
      double vd = v;
      vfix[axis] = v;
      // square determined by fixing v_axis: reversed row k = d-1-axis
      int k = d - 1 - axis;
      double s = g(k);
      for (int i = 0; i <= axis; ++i) s += Rt(k, d - 1 - i) * vfix[i];
      double sq = partialSq + s * s;
      // every leaf below satisfies f >= sq - |g|^2
      if (-(sq - gNorm2) < pruneLog) continue;
      cplx ph = phase + Q(axis, axis) * (vd * vd) + 2.0 * lin[axis][axis] * vd;
      for (int bb = axis + 1; bb < d; ++bb) lin[axis + 1][bb] = lin[axis][bb] + Q(axis, bb) * vd;
      rec(axis + 1, ph, std::max(shell, std::abs(v)), sq);
    }
  };
  rec(0, cplx(0.0, 0.0), 0, 0.0);
  cplx total(0.0, 0.0);
  for (const cplx& s : bucket) total += s;
  return ThetaResult{total, R, tol};
}

cplx thetaEval(const JacobiPoint& p, const ThetaParams& params) {
  return thetaEvalDetailed(p, params).value;
}

cplx rhoGenerator(const Generator& w, const IndexMatrix& M) {
  if (!M.integral) fail(Errc::NonIntegralParams, "index matrix must be integral");
  cplx epsM = powInt(w.eps, w.m);
  switch (w.kind) {
    case Generator::Kind::Heisenberg: {
      if (!isIntegralMat(w.lambda) || !isIntegralMat(w.mu) || !isIntegralMat(w.kappa))
        fail(Errc::NonIntegralParams, "Heisenberg parameters must be integral");
      double s = (M.mat * (w.kappa + w.mu * w.lambda.transpose())).trace();
      return epsM * std::exp(cplx(0.0, -kPi * s));
    }
    case Generator::Kind::Translation: {
      if (!isIntegralMat(w.b)) fail(Errc::NonIntegralParams, "b must be integral");
      for (long i = 0; i < w.b.rows(); ++i)
        if (std::abs(w.b(i, i) / 2.0 - std::round(w.b(i, i) / 2.0)) > kIntTol)
          fail(Errc::OddDiagonalB, "b must have even diagonal");
      return epsM;
    }
    case Generator::Kind::Dilation: {
      if (!isIntegralMat(w.alpha) || std::abs(std::abs(w.alpha.determinant()) - 1.0) > kIntTol)
        fail(Errc::NonIntegralParams, "alpha must lie in GL(n,Z)");
      return epsM;
    }
    case Generator::Kind::Inversion:
      // matches the derived character under the literal weight-1/2 convention
      return epsM;
  }
  fail(Errc::InvalidArgument, "unknown generator kind");
}

cplx rhoWord(const std::vector<Generator>& word, const IndexMatrix& M) {
  cplx acc(1.0, 0.0);
  for (const Generator& w : word) acc *= rhoGenerator(w, M);
  return acc;
}

CharacterValue derivedCharacter(const MetaJacobiElement& x, const IndexMatrix& M,
                                const std::vector<JacobiPoint>& probes, double truncationTol) {
  if (!M.integral || !M.unimodular) fail(Errc::NonUnimodularM, "index matrix must be unimodular");
  ThetaParams params{M, truncationTol, 16};
  std::vector<cplx> ratios;
  for (const JacobiPoint& p : probes) {
    cplx th0 = thetaEval(p, params);
    if (std::abs(th0) <= 1e-6) continue;
    cplx thx;
    try {
      // the transformed point may sit too close to the real boundary for the
      // truncation certificate; such probes carry no usable ratio
      thx = thetaEval(metaJacobiAction(x, p), params);
    } catch (const Error& e) {
      if (e.code() == Errc::RadiusCapExceeded) continue;
      throw;
    }
    ratios.push_back(thx / (jMStar(x, p, M) * th0));
  }
  if (ratios.empty()) fail(Errc::ThetaNearZero, "no probe point produced a usable ratio");
  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t k = v.size() / 2;
    return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
  };
  std::vector<double> re, im;
  for (const cplx& r : ratios) {
    re.push_back(r.real());
    im.push_back(r.imag());
  }
  CharacterValue out;
  out.value = cplx(median(re), median(im));
  for (const cplx& r : ratios) out.deviation = std::max(out.deviation, std::abs(r - out.value));
  return out;
}

ResidualPair thetaTransformResidualWith(cplx rho, const MetaJacobiElement& x, const JacobiPoint& p,
                                        const IndexMatrix& M, double truncationTol, int maxRadius) {
  ThetaParams params{M, truncationTol, maxRadius};
  cplx th0 = thetaEval(p, params);
  if (std::abs(th0) <= 1e-6) fail(Errc::ThetaNearZero, "|Theta| near zero at the base point");
  cplx thx = thetaEval(metaJacobiAction(x, p), params);
  cplx rhs = rho * jMStar(x, p, M) * th0;
  double absErr = std::abs(thx - rhs);
  double scale = std::max({std::abs(thx), std::abs(rhs), std::abs(th0)});
  return ResidualPair{absErr, absErr / scale};
}

ResidualPair thetaTransformResidual(const std::vector<Generator>& word, const JacobiPoint& p,
                                    const IndexMatrix& M, double truncationTol, int maxRadius) {
  return thetaTransformResidualWith(rhoWord(word, M), wordProduct(word), p, M, truncationTol,
                                    maxRadius);
}

PoissonCheck poissonCheck(const SiegelPoint& omega, const CMatrix& z, const IndexMatrix& M,
                          double truncationTol) {
  if (!M.integral || !M.unimodular) fail(Errc::NonUnimodularM, "index matrix must be unimodular");
  int m = static_cast<int>(z.rows()), n = static_cast<int>(z.cols());
  Gaussian f = covariantMap(omega, z, M);
  PoissonCheck out;
  // Direct side: the Gaussian summed over the lattice = Theta_M itself.
  out.direct = thetaEval(JacobiPoint{omega, z}, ThetaParams{M, truncationTol, 16});
  // Transformed side: its Fourier transform summed over the same lattice; the
  // terms form a Gaussian family at (-Omega^{-1}, Z Omega^{-1}).
  CMatrix omegaInv = omega.omega.inverse();
  SiegelPoint omegaStar = validateSiegel(-omegaInv);
  CMatrix zStar = z * omegaInv;
  cplx lead = fourierOfCovariant(omega, z, M, RMatrix::Zero(m, n));
  double scale = std::max(std::abs(lead), 1e-12);
  int d = m * n;
  if (d <= 3) {
    // Sum the Fourier transforms point by point over a certified box.
    int R = truncationRadius(M, omegaStar, zStar, truncationTol / scale, 16);
    cplx acc(0.0, 0.0);
    std::vector<int> idx(d, 0);
    for (int shell = 0; shell <= R; ++shell) {
      std::function<void(int, bool)> rec = [&](int axis, bool onShell) {
        if (axis == d) {
          if (!onShell) return;
          RMatrix xi(m, n);
          for (int a = 0; a < d; ++a) xi(a / n, a % n) = idx[a];
          acc += fourierOfCovariant(omega, z, M, xi);
          return;
        }
        for (int v = -shell; v <= shell; ++v) {
          idx[axis] = v;
          rec(axis + 1, onShell || std::abs(v) == shell);
        }
      };
      rec(0, shell == 0);
    }
    out.transformed = acc;
  } else {
    // The transforms factor as fourierOfCovariant(0) times the theta family at
    // (-Omega^{-1}, Z Omega^{-1}); reuse the pruned theta summation so large
    // lattice dimensions stay tractable.
    out.transformed =
        lead * thetaEval(JacobiPoint{omegaStar, zStar},
                         ThetaParams{M, truncationTol / scale, 16});
  }
  out.absErr = std::abs(out.direct - out.transformed);
  out.relErr = out.absErr / std::max({std::abs(out.direct), std::abs(out.transformed), 1e-12});
  return out;
}

JacobiPoint randomJacobiPoint(int n, int m, Rng& rng, double imFloor) {
  RMatrix x(n, n), a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) x(i, j) = x(j, i) = rng.uniform(-1.0, 1.0);
  RMatrix y = 0.3 * a.transpose() * a + imFloor * RMatrix::Identity(n, n);
  CMatrix omega = x.cast<cplx>() + cplx(0.0, 1.0) * y.cast<cplx>();
  // Z shrinks with the lattice dimension so the linear term of the truncation
  // bound does not blow up the certified radius at higher (n, m).
  double s = 0.5 / (m * n);
  CMatrix z(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = cplx(rng.uniform(-s, s), rng.uniform(-s, s));
  return JacobiPoint{validateSiegel(omega), z};
}

}  // namespace swj
