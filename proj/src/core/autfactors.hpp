#pragma once

#include <functional>

#include "groups.hpp"

namespace swj {

// Weight-1/2 factor on the cover: eps^{-1} epsilon(g; Omega, iI_n) |det J(g,Omega)|^{1/2}.
// Squares to det(C Omega + D) and satisfies the cocycle law on G_*.
cplx jHalf(const MetaElement& gs, const SiegelPoint& omega);

struct SlashParams {
  long k = 1;
  IndexMatrix M;
};

// Integral-weight Jacobi factor J_M(x, (Omega,Z)).
cplx jM(const JacobiElement& x, const JacobiPoint& p, const IndexMatrix& M);

// Half-integral factor J*_M on G_*^J; requires m odd.
cplx jMStar(const MetaJacobiElement& x, const JacobiPoint& p, const IndexMatrix& M);

// J_{k,M}(x_*, (Omega,Z)) = (exponential factors of J_M) * J_{1/2}^k.
cplx jkM(const MetaJacobiElement& x, const JacobiPoint& p, const SlashParams& params);

using PointFunction = std::function<cplx(const JacobiPoint&)>;

// Slash operator with rho = det^k: (f |_{k,M} [x])(Omega,Z).
PointFunction slash(const PointFunction& f, const JacobiElement& x, const SlashParams& params);

// Half-integral slash via J_{k,M}: (f |[x_*])(p) = J_{k,M}(x_*,p)^{-1} f(x_* . p).
PointFunction slashHalf(const PointFunction& f, const MetaJacobiElement& x, const SlashParams& params);

}  // namespace swj
