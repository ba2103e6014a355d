#include "matcore.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace swj {

cplx principalSqrt(cplx z) {
  cplx w = std::sqrt(z);  // arg in (-pi/2, pi/2]
  if (w.real() < 0.0 || (w.real() == 0.0 && w.imag() < 0.0)) w = -w;
  return w;
}

cplx halfPower(cplx z, long k) {
  cplx r = principalSqrt(z);
  cplx acc(1.0, 0.0);
  cplx base = (k < 0) ? (cplx(1.0, 0.0) / r) : r;
  long e = std::labs(k);
  for (long i = 0; i < e; ++i) acc *= base;
  return acc;
}

bool isSymmetric(const CMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.transpose()).cwiseAbs().maxCoeff() <= tol;
}

double minEigSym(const RMatrix& a) {
  Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (a + a.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

SiegelPoint validateSiegel(const CMatrix& omega) {
  if (omega.rows() != omega.cols()) fail(Errc::ShapeMismatch, "Siegel point must be square");
  if (!isSymmetric(omega, kSymTol)) fail(Errc::NotSymmetric, "Omega is not symmetric");
  CMatrix sym = 0.5 * (omega + omega.transpose());
  if (minEigSym(sym.imag()) <= kPdTol) fail(Errc::ImNotPositiveDefinite, "Im Omega is not positive definite");
  return SiegelPoint{sym};
}

cplx detSqrtHolo(const CMatrix& s) {
  if (s.rows() != s.cols()) fail(Errc::ShapeMismatch, "detSqrtHolo needs a square matrix");
  if (!isSymmetric(s, 1e-9)) fail(Errc::NotSymmetric, "detSqrtHolo argument is not symmetric");
  CMatrix sym = 0.5 * (s + s.transpose());
  if (minEigSym(sym.real()) <= 0.0) fail(Errc::ReNotPositiveDefinite, "Re S is not positive definite");
  Eigen::ComplexEigenSolver<CMatrix> es(sym, false);
  if (es.info() != Eigen::Success) fail(Errc::DomainViolation, "eigen decomposition failed");
  cplx w(1.0, 0.0);
  for (Eigen::Index i = 0; i < sym.rows(); ++i) w *= principalSqrt(es.eigenvalues()[i]);
  return w;
}

cplx detPowHalf(const CMatrix& s, long k) {
  cplx r = detSqrtHolo(s);
  cplx base = (k < 0) ? (cplx(1.0, 0.0) / r) : r;
  cplx acc(1.0, 0.0);
  long e = std::labs(k);
  for (long i = 0; i < e; ++i) acc *= base;
  return acc;
}

CMatrix omegaOverI(const SiegelPoint& p) { return p.omega / cplx(0.0, 1.0); }

CMatrix pairMatrix(const CMatrix& omegaPrime, const CMatrix& omega) {
  return (omegaPrime - omega.conjugate()) / cplx(0.0, 2.0);
}

IndexMatrix makeIndexMatrix(const RMatrix& m) {
  if (m.rows() != m.cols()) fail(Errc::ShapeMismatch, "index matrix must be square");
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > kSymTol) fail(Errc::NotSymmetric, "index matrix is not symmetric");
  RMatrix sym = 0.5 * (m + m.transpose());
  if (minEigSym(sym) <= 0.0) fail(Errc::ImNotPositiveDefinite, "index matrix is not positive definite");
  IndexMatrix out;
  out.mat = sym;
  out.integral = true;
  for (Eigen::Index i = 0; i < sym.rows() && out.integral; ++i)
    for (Eigen::Index j = 0; j < sym.cols(); ++j)
      if (std::abs(sym(i, j) - std::round(sym(i, j))) > 1e-12) {
        out.integral = false;
        break;
      }
  out.unimodular = std::abs(sym.determinant() - 1.0) <= 1e-9;
  return out;
}

IndexMatrix identityIndex(int m) { return makeIndexMatrix(RMatrix::Identity(m, m)); }

SiegelPoint randomSiegel(int n, Rng& rng) {
  RMatrix x(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) x(i, j) = x(j, i) = rng.uniform(-1.0, 1.0);
  RMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
  RMatrix y = a * a.transpose() + 0.1 * RMatrix::Identity(n, n);
  CMatrix omega = x.cast<cplx>() + cplx(0.0, 1.0) * y.cast<cplx>();
  return SiegelPoint{omega};
}

}  // namespace swj
