#pragma once

#include <vector>

#include "autfactors.hpp"
#include "groups.hpp"

namespace swj {

// coeff * exp(pi i sigma(M (x Omega tx + 2 x tZ))), the covariant Gaussian family.
struct Gaussian {
  cplx coeff{1.0, 0.0};
  SiegelPoint omega;
  CMatrix z;  // m x n
  IndexMatrix M;
  int degreeN() const { return omega.degree(); }
  int degreeM() const { return static_cast<int>(z.rows()); }
  JacobiPoint point() const { return JacobiPoint{omega, z}; }
};

Gaussian covariantMap(const SiegelPoint& omega, const CMatrix& z, const IndexMatrix& M);
cplx evalGaussian(const Gaussian& g, const RMatrix& x);

// Schroedinger representation of a Heisenberg element on the Gaussian family;
// closed under the action (complete the square).
Gaussian schrodingerAction(const Heisenberg& h, const Gaussian& f, const IndexMatrix& c);

// Metaplectic generator action transported in closed form (Theorem 5.1 cases).
Gaussian weilAction(const Generator& w, const Gaussian& f);

// Uniform grid over [-L,L]^{m*n}, N points per axis (N odd so 0 is a node).
struct GridFunction {
  int m = 1, n = 1;
  double L = 6.0;
  int N = 257;
  std::vector<cplx> samples;  // row-major over the m*n axes
  int dims() const { return m * n; }
  double step() const { return 2.0 * L / (N - 1); }
  std::size_t size() const;
  double axisCoord(int idx) const { return -L + idx * step(); }
};

GridFunction makeGrid(int m, int n, double L, int N);
GridFunction sampleGaussian(const Gaussian& g, double L, int N);
double gridNorm2(const GridFunction& f);           // L2 norm with the cell measure
double boundaryMass(const GridFunction& f);        // max |f| over boundary nodes
cplx gridValue(const GridFunction& f, const RMatrix& x);  // multilinear interpolation

GridFunction schrodingerActionGrid(const Heisenberg& h, const GridFunction& f, const IndexMatrix& c);

// Pointwise formulas for Heisenberg/translation/dilation; trapezoidal quadrature
// of the integral transform for the inversion generator.
GridFunction weilActionNumeric(const Generator& w, const GridFunction& f, const IndexMatrix& M);

// Lemma of the Gaussian integral: (det Omega/i)^{-m/2} e^{-pi i sigma(Z Omega^{-1} tZ)}.
cplx gaussianLatticeIntegral(const SiegelPoint& omega, const CMatrix& z);

// Fourier transform of the covariant Gaussian evaluated at M x (closed form).
cplx fourierOfCovariant(const SiegelPoint& omega, const CMatrix& z, const IndexMatrix& M,
                        const RMatrix& x);

// Max relative deviation of weilAction from the covariance identity
//   omega_M(g~_*) F_{Omega,Z} = J*_M(g~_*,(Omega,Z))^{-1} F_{g~_* . (Omega,Z)}
// over `samples` random real evaluation points.
double covarianceResidual(const Generator& w, const JacobiPoint& p, const IndexMatrix& M,
                          int samples, Rng& rng);
double covarianceResidualWord(const std::vector<Generator>& word, const JacobiPoint& p,
                              const IndexMatrix& M, int samples, Rng& rng);

}  // namespace swj
