#pragma once

#include <vector>

#include "weilrep.hpp"

namespace swj {

struct ThetaParams {
  IndexMatrix M;
  double truncationTol = 1e-12;
  int maxRadius = 16;
};

// Smallest R whose certified tail (terms with max-entry norm > R) is below tol.
// Bound per term: exp(-pi lmin(M) lmin(Y) |xi|^2 + 2 pi |M|_F |Im Z|_F |xi|).
int truncationRadius(const IndexMatrix& M, const SiegelPoint& omega, const CMatrix& z,
                     double tol, int maxRadius = 16);

struct ThetaResult {
  cplx value;
  int radius;
  double certifiedTol;
};

// Lattice sum of the covariant Gaussian over Z^{(m,n)}, summed shell by shell
// (increasing max-entry norm, lexicographic within a shell) for determinism.
ThetaResult thetaEvalDetailed(const JacobiPoint& p, const ThetaParams& params);
cplx thetaEval(const JacobiPoint& p, const ThetaParams& params);

struct CharacterValue {
  cplx value{1.0, 0.0};
  double deviation = 0.0;  // max spread across probes (0 for closed forms)
};

// Closed-form character value on a single generator (integral parameters required;
// translation entries must have even diagonal).
cplx rhoGenerator(const Generator& w, const IndexMatrix& M);
cplx rhoWord(const std::vector<Generator>& word, const IndexMatrix& M);

// Ratio Theta(x.p) / (J*_M(x,p) Theta(p)) across probe points; the median ratio is
// the character value and the spread is the constancy deviation.
CharacterValue derivedCharacter(const MetaJacobiElement& x, const IndexMatrix& M,
                                const std::vector<JacobiPoint>& probes, double truncationTol);

struct ResidualPair {
  double absErr;
  double relErr;
};

// Residual of Theta(x.p) = rho J*_M(x,p) Theta(p) at one point, using the
// closed-form character of the word (or an explicit overriding value).
ResidualPair thetaTransformResidual(const std::vector<Generator>& word, const JacobiPoint& p,
                                    const IndexMatrix& M, double truncationTol, int maxRadius = 16);
ResidualPair thetaTransformResidualWith(cplx rho, const MetaJacobiElement& x, const JacobiPoint& p,
                                        const IndexMatrix& M, double truncationTol,
                                        int maxRadius = 16);

struct PoissonCheck {
  cplx direct;       // lattice sum of the Gaussian itself
  cplx transformed;  // lattice sum of its Fourier transform
  double absErr;
  double relErr;
};

// Both sides of the Poisson identity for the covariant Gaussian; needs det M = 1.
PoissonCheck poissonCheck(const SiegelPoint& omega, const CMatrix& z, const IndexMatrix& M,
                          double truncationTol);

// Random probe point with Im Omega >= imFloor * I (keeps |Theta| away from zero).
JacobiPoint randomJacobiPoint(int n, int m, Rng& rng, double imFloor = 0.5);

}  // namespace swj
