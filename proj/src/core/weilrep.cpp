#include "weilrep.hpp"

#include <cmath>

namespace swj {

namespace {

constexpr double kPi = 3.14159265358979323846;

cplx traceSigma(const CMatrix& a) { return a.trace(); }

cplx powInt(cplx z, long k) {
  cplx acc(1.0, 0.0);
  cplx base = k < 0 ? cplx(1.0, 0.0) / z : z;
  for (long i = 0; i < std::labs(k); ++i) acc *= base;
  return acc;
}

void requireSameIndex(const IndexMatrix& a, const IndexMatrix& b) {
  if (a.degree() != b.degree() || (a.mat - b.mat).cwiseAbs().maxCoeff() > 1e-12)
    fail(Errc::ShapeMismatch, "index matrix of the action differs from the Gaussian's");
}

CMatrix invChecked(const CMatrix& a) {
  Eigen::JacobiSVD<CMatrix> svd(a);
  double smin = svd.singularValues().minCoeff();
  double smax = svd.singularValues().maxCoeff();
  if (smin <= 0.0 || smax / smin > kCondLimit) fail(Errc::SingularOmega, "matrix numerically singular");
  return a.inverse();
}

}  // namespace

Gaussian covariantMap(const SiegelPoint& omega, const CMatrix& z, const IndexMatrix& M) {
  if (z.cols() != omega.degree() || z.rows() != M.degree())
    fail(Errc::ShapeMismatch, "Z must be m x n with m = deg M, n = deg Omega");
  return Gaussian{cplx(1.0, 0.0), omega, z, M};
}

cplx evalGaussian(const Gaussian& g, const RMatrix& x) {
  if (x.rows() != g.degreeM() || x.cols() != g.degreeN()) fail(Errc::ShapeMismatch, "x must be m x n");
  CMatrix xc = x.cast<cplx>();
  CMatrix Mc = g.M.mat.cast<cplx>();
  cplx s = traceSigma(Mc * (xc * g.omega.omega * xc.transpose() + 2.0 * xc * g.z.transpose()));
  return g.coeff * std::exp(cplx(0.0, kPi) * s);
}

Gaussian schrodingerAction(const Heisenberg& h, const Gaussian& f, const IndexMatrix& c) {
  requireSameIndex(c, f.M);
  if (h.rows() != f.degreeM() || h.cols() != f.degreeN()) fail(Errc::ShapeMismatch, "Heisenberg shape mismatch");
  CMatrix lambda = h.lambda.cast<cplx>();
  CMatrix mu = h.mu.cast<cplx>();
  CMatrix kappa = h.kappa.cast<cplx>();
  CMatrix Mc = f.M.mat.cast<cplx>();
  // e^{pi i s(c(kappa+mu tl+2x tmu))} F_{Omega,Z}(x+lambda) = coeff' F_{Omega,Z+lambda Omega+mu}(x)
  cplx s = traceSigma(Mc * (kappa + mu * lambda.transpose() + lambda * f.omega.omega * lambda.transpose() +
                            2.0 * lambda * f.z.transpose()));
  Gaussian out = f;
  out.coeff = f.coeff * std::exp(cplx(0.0, kPi) * s);
  out.z = f.z + lambda * f.omega.omega + mu;
  return out;
}

Gaussian weilAction(const Generator& w, const Gaussian& f) {
  if (w.n != f.degreeN() || w.m != f.degreeM()) fail(Errc::ShapeMismatch, "generator/Gaussian shape mismatch");
  cplx epsM = powInt(w.eps, w.m);
  switch (w.kind) {
    case Generator::Kind::Heisenberg: {
      Gaussian out = schrodingerAction(Heisenberg{w.lambda, w.mu, w.kappa}, f, f.M);
      out.coeff *= epsM;
      return out;
    }
    case Generator::Kind::Translation: {
      Gaussian out = f;
      out.coeff *= epsM;
      out.omega = validateSiegel(f.omega.omega + w.b.cast<cplx>());
      return out;
    }
    case Generator::Kind::Dilation: {
      Gaussian out = f;
      CMatrix ac = w.alpha.cast<cplx>();
      double det = w.alpha.determinant();
      out.coeff *= epsM * std::pow(std::abs(det), 0.5 * w.m);
      out.omega = validateSiegel(ac.transpose() * f.omega.omega * ac);
      out.z = f.z * ac;
      return out;
    }
    case Generator::Kind::Inversion: {
      CMatrix omegaInv = invChecked(f.omega.omega);
      CMatrix Mc = f.M.mat.cast<cplx>();
      // eps^m (det Omega/i)^{-m/2} e^{-pi i s(M Z Omega^{-1} tZ)} F_{-Omega^{-1}, Z Omega^{-1}};
      // the scalar normalization is the one that makes the transport match
      // J*^{-1} built from the weight-1/2 factor as defined (the generator-table
      // shortcut value for the inversion disagrees with the square law).
      cplx cdet = detPowHalf(omegaOverI(f.omega), -w.m);
      cplx s = traceSigma(Mc * f.z * omegaInv * f.z.transpose());
      Gaussian out = f;
      out.coeff *= epsM * cdet * std::exp(cplx(0.0, -kPi) * s);
      out.omega = validateSiegel(-omegaInv);
      out.z = f.z * omegaInv;
      return out;
    }
  }
  fail(Errc::InvalidArgument, "unknown generator kind");
}

std::size_t GridFunction::size() const {
  std::size_t s = 1;
  for (int a = 0; a < dims(); ++a) s *= static_cast<std::size_t>(N);
  return s;
}

GridFunction makeGrid(int m, int n, double L, int N) {
  if (N < 3 || N % 2 == 0) fail(Errc::InvalidArgument, "grid N must be odd and >= 3");
  if (L <= 0.0) fail(Errc::InvalidArgument, "grid half-width must be positive");
  GridFunction f;
  f.m = m;
  f.n = n;
  f.L = L;
  f.N = N;
  f.samples.assign(f.size(), cplx(0.0, 0.0));
  return f;
}

namespace {

// decode flat index into per-axis indices
void decode(const GridFunction& f, std::size_t flat, std::vector<int>& idx) {
  int d = f.dims();
  idx.resize(d);
  for (int a = d - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % f.N);
    flat /= f.N;
  }
}

RMatrix nodeMatrix(const GridFunction& f, const std::vector<int>& idx) {
  RMatrix x(f.m, f.n);
  for (int i = 0; i < f.m; ++i)
    for (int j = 0; j < f.n; ++j) x(i, j) = f.axisCoord(idx[i * f.n + j]);
  return x;
}

}  // namespace

GridFunction sampleGaussian(const Gaussian& g, double L, int N) {
  GridFunction f = makeGrid(g.degreeM(), g.degreeN(), L, N);
  std::vector<int> idx;
  for (std::size_t flat = 0; flat < f.size(); ++flat) {
    decode(f, flat, idx);
    f.samples[flat] = evalGaussian(g, nodeMatrix(f, idx));
  }
  return f;
}

double gridNorm2(const GridFunction& f) {
  double s = 0.0;
  for (const cplx& v : f.samples) s += std::norm(v);
  return std::sqrt(s * std::pow(f.step(), f.dims()));
}

double boundaryMass(const GridFunction& f) {
  double worst = 0.0;
  std::vector<int> idx;
  for (std::size_t flat = 0; flat < f.size(); ++flat) {
    decode(f, flat, idx);
    bool boundary = false;
    for (int a = 0; a < f.dims(); ++a)
      if (idx[a] == 0 || idx[a] == f.N - 1) boundary = true;
    if (boundary) worst = std::max(worst, std::abs(f.samples[flat]));
  }
  return worst;
}

cplx gridValue(const GridFunction& f, const RMatrix& x) {
  int d = f.dims();
  double h = f.step();
  std::vector<int> base(d);
  std::vector<double> frac(d);
  for (int a = 0; a < d; ++a) {
    double v = x(a / f.n, a % f.n);
    double t = (v + f.L) / h;
    if (t < 0.0 || t > f.N - 1) return cplx(0.0, 0.0);
    int i0 = static_cast<int>(std::floor(t));
    if (i0 >= f.N - 1) i0 = f.N - 2;
    base[a] = i0;
    frac[a] = t - i0;
  }
  cplx acc(0.0, 0.0);
  for (int corner = 0; corner < (1 << d); ++corner) {
    double weight = 1.0;
    std::size_t flat = 0;
    for (int a = 0; a < d; ++a) {
      int bit = (corner >> a) & 1;
      weight *= bit ? frac[a] : (1.0 - frac[a]);
      flat = flat * f.N + static_cast<std::size_t>(base[a] + bit);
    }
    acc += weight * f.samples[flat];
  }
  return acc;
}

GridFunction schrodingerActionGrid(const Heisenberg& h, const GridFunction& f, const IndexMatrix& c) {
  GridFunction out = makeGrid(f.m, f.n, f.L, f.N);
  RMatrix phaseMat = c.mat * (h.kappa + h.mu * h.lambda.transpose());
  double constPhase = phaseMat.trace();
  std::vector<int> idx;
  for (std::size_t flat = 0; flat < f.size(); ++flat) {
    decode(f, flat, idx);
    RMatrix x = nodeMatrix(f, idx);
    double s = constPhase + 2.0 * (c.mat * x * h.mu.transpose()).trace();
    out.samples[flat] = std::exp(cplx(0.0, kPi * s)) * gridValue(f, x + h.lambda);
  }
  return out;
}

GridFunction weilActionNumeric(const Generator& w, const GridFunction& f, const IndexMatrix& M) {
  if (w.m != f.m || w.n != f.n) fail(Errc::ShapeMismatch, "generator/grid shape mismatch");
  double peak = 0.0;
  for (const cplx& v : f.samples) peak = std::max(peak, std::abs(v));
  if (peak > 0.0 && boundaryMass(f) > 1e-9 * peak)
    fail(Errc::GridTooCoarse, "grid does not resolve the function's decay");
  cplx epsM = powInt(w.eps, w.m);
  switch (w.kind) {
    case Generator::Kind::Heisenberg: {
      GridFunction out = schrodingerActionGrid(Heisenberg{w.lambda, w.mu, w.kappa}, f, M);
      for (cplx& v : out.samples) v *= epsM;
      return out;
    }
    case Generator::Kind::Translation: {
      GridFunction out = f;
      std::vector<int> idx;
      for (std::size_t flat = 0; flat < f.size(); ++flat) {
        decode(f, flat, idx);
        RMatrix x = nodeMatrix(f, idx);
        double s = (M.mat * x * w.b * x.transpose()).trace();
        out.samples[flat] = epsM * std::exp(cplx(0.0, kPi * s)) * f.samples[flat];
      }
      return out;
    }
    case Generator::Kind::Dilation: {
      GridFunction out = makeGrid(f.m, f.n, f.L, f.N);
      double det = w.alpha.determinant();
      cplx pref = epsM * std::pow(std::abs(det), 0.5 * w.m);
      std::vector<int> idx;
      for (std::size_t flat = 0; flat < f.size(); ++flat) {
        decode(f, flat, idx);
        RMatrix x = nodeMatrix(f, idx);
        out.samples[flat] = pref * gridValue(f, x * w.alpha.transpose());
      }
      return out;
    }
    case Generator::Kind::Inversion: {
      GridFunction out = makeGrid(f.m, f.n, f.L, f.N);
      double detM = M.mat.determinant();
      cplx pref = epsM * std::pow(detM, 0.5 * w.n);
      double cell = std::pow(f.step(), f.dims());
      std::size_t total = f.size();
      // cache node coordinate matrices once
      std::vector<RMatrix> nodes(total);
      std::vector<int> idx;
      for (std::size_t flat = 0; flat < total; ++flat) {
        decode(f, flat, idx);
        nodes[flat] = nodeMatrix(f, idx);
      }
      for (std::size_t xi = 0; xi < total; ++xi) {
        RMatrix mx = M.mat * nodes[xi];
        cplx acc(0.0, 0.0);
        for (std::size_t yi = 0; yi < total; ++yi) {
          double s = (mx.array() * nodes[yi].array()).sum();
          acc += f.samples[yi] * std::exp(cplx(0.0, -2.0 * kPi * s));
        }
        out.samples[xi] = pref * acc * cell;
      }
      return out;
    }
  }
  fail(Errc::InvalidArgument, "unknown generator kind");
}

cplx gaussianLatticeIntegral(const SiegelPoint& omega, const CMatrix& z) {
  long m = z.rows();
  CMatrix omegaInv = invChecked(omega.omega);
  cplx s = traceSigma(z * omegaInv * z.transpose());
  return detPowHalf(omegaOverI(omega), -m) * std::exp(cplx(0.0, -kPi) * s);
}

cplx fourierOfCovariant(const SiegelPoint& omega, const CMatrix& z, const IndexMatrix& M,
                        const RMatrix& x) {
  long m = z.rows();
  long n = omega.degree();
  CMatrix omegaInv = invChecked(omega.omega);
  CMatrix w = z - x.cast<cplx>();
  cplx s = traceSigma(M.mat.cast<cplx>() * w * omegaInv * w.transpose());
  return std::pow(M.mat.determinant(), -0.5 * n) * detPowHalf(omegaOverI(omega), -m) *
         std::exp(cplx(0.0, -kPi) * s);
}

namespace {

double compareGaussians(const Gaussian& lhs, const Gaussian& rhs, int samples, int m, int n, Rng& rng) {
  double worst = 0.0;
  for (int t = 0; t < samples; ++t) {
    RMatrix x(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) x(i, j) = rng.uniform(-1.5, 1.5);
    cplx a = evalGaussian(lhs, x);
    cplx b = evalGaussian(rhs, x);
    double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    worst = std::max(worst, std::abs(a - b) / scale);
  }
  return worst;
}

}  // namespace

double covarianceResidual(const Generator& w, const JacobiPoint& p, const IndexMatrix& M,
                          int samples, Rng& rng) {
  Gaussian f = covariantMap(p.omega, p.z, M);
  Gaussian lhs = weilAction(w, f);
  MetaJacobiElement el = toMetaJacobi(w);
  JacobiPoint pStar = metaJacobiAction(el, p);
  Gaussian rhs = covariantMap(pStar.omega, pStar.z, M);
  rhs.coeff = cplx(1.0, 0.0) / jMStar(el, p, M);
  return compareGaussians(lhs, rhs, samples, p.degreeM(), p.degreeN(), rng);
}

double covarianceResidualWord(const std::vector<Generator>& word, const JacobiPoint& p,
                              const IndexMatrix& M, int samples, Rng& rng) {
  Gaussian f = covariantMap(p.omega, p.z, M);
  // omega(w1 w2 ... wk) = omega(w1) ... omega(wk): apply right factor first
  Gaussian lhs = f;
  for (auto it = word.rbegin(); it != word.rend(); ++it) lhs = weilAction(*it, lhs);
  MetaJacobiElement el = wordProduct(word);
  JacobiPoint pStar = metaJacobiAction(el, p);
  Gaussian rhs = covariantMap(pStar.omega, pStar.z, M);
  rhs.coeff = cplx(1.0, 0.0) / jMStar(el, p, M);
  return compareGaussians(lhs, rhs, samples, p.degreeM(), p.degreeN(), rng);
}

}  // namespace swj
