#pragma once

#include <Eigen/Dense>
#include <complex>

#include "error.hpp"
#include "rng.hpp"

namespace swj {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kSymTol = 1e-12;
inline constexpr double kPdTol = 1e-12;
inline constexpr double kCondLimit = 1e12;

// Principal branch: -pi/2 < arg(sqrt z) <= pi/2.
cplx principalSqrt(cplx z);

// z^{k/2} := (z^{1/2})^k, any integer k.
cplx halfPower(cplx z, long k);

bool isSymmetric(const CMatrix& a, double tol = kSymTol);

// Smallest eigenvalue of a real symmetric matrix.
double minEigSym(const RMatrix& a);

// Point of the Siegel upper half space: Omega symmetric, Im Omega > 0.
struct SiegelPoint {
  CMatrix omega;
  int degree() const { return static_cast<int>(omega.rows()); }
  RMatrix realPart() const { return omega.real(); }
  RMatrix imagPart() const { return omega.imag(); }
};

SiegelPoint validateSiegel(const CMatrix& omega);

// Holomorphic square root of det on {S = tS, Re S > 0}: product of principal
// square roots of the eigenvalues of S. The numerical range of such S lies in
// the open right half plane, so no eigenvalue crosses the branch cut.
cplx detSqrtHolo(const CMatrix& s);

// detSqrtHolo(S)^k for integer k (negative allowed).
cplx detPowHalf(const CMatrix& s, long k);

CMatrix omegaOverI(const SiegelPoint& p);

// (Omega' - conj(Omega)) / (2i); has positive definite real part for Siegel points.
CMatrix pairMatrix(const CMatrix& omegaPrime, const CMatrix& omega);

// Symmetric positive definite index matrix.
struct IndexMatrix {
  RMatrix mat;
  bool integral = false;
  bool unimodular = false;
  int degree() const { return static_cast<int>(mat.rows()); }
};

IndexMatrix makeIndexMatrix(const RMatrix& m);

IndexMatrix identityIndex(int m);

SiegelPoint randomSiegel(int n, Rng& rng);

}  // namespace swj
