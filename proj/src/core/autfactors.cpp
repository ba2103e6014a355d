#include "autfactors.hpp"

#include <cmath>

namespace swj {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct ExponentPair {
  cplx quad;   // sigma(M (Z+lambda Omega+mu)(C Omega+D)^{-1} C t(Z+lambda Omega+mu))
  cplx shift;  // sigma(M (lambda Omega t(lambda) + 2 lambda tZ + kappa + mu t(lambda)))
};

ExponentPair slashExponents(const Symplectic& g, const Heisenberg& h, const JacobiPoint& p,
                            const IndexMatrix& M) {
  CMatrix lambda = h.lambda.cast<cplx>();
  CMatrix mu = h.mu.cast<cplx>();
  CMatrix kappa = h.kappa.cast<cplx>();
  CMatrix Mc = M.mat.cast<cplx>();
  CMatrix x = p.z + lambda * p.omega.omega + mu;
  CMatrix j = jMatrixChecked(g, p.omega);
  CMatrix c = g.blockC().cast<cplx>();
  ExponentPair out;
  out.quad = (Mc * x * j.inverse() * c * x.transpose()).trace();
  out.shift = (Mc * (lambda * p.omega.omega * lambda.transpose() + 2.0 * lambda * p.z.transpose() +
                     kappa + mu * lambda.transpose()))
                  .trace();
  return out;
}

}  // namespace

cplx jHalf(const MetaElement& gs, const SiegelPoint& omega) {
  cplx det = jMatrixChecked(gs.base, omega).determinant();
  return (cplx(1.0, 0.0) / gs.eps) * epsilonFactor(gs.base, omega, siegelI(gs.degree())) *
         std::sqrt(std::abs(det));
}

cplx jM(const JacobiElement& x, const JacobiPoint& p, const IndexMatrix& M) {
  ExponentPair e = slashExponents(x.base, x.h, p, M);
  // single exp: quad and shift often cancel, and exponentiating them separately
  // can overflow on values that are jointly representable
  return std::exp(cplx(0.0, 2.0 * kPi) * (e.quad - e.shift));
}

cplx jMStar(const MetaJacobiElement& x, const JacobiPoint& p, const IndexMatrix& M) {
  if (M.degree() % 2 == 0) fail(Errc::EvenM, "J*_M requires odd m");
  if (M.degree() != x.h.rows()) fail(Errc::ShapeMismatch, "index degree != Heisenberg rows");
  ExponentPair e = slashExponents(x.base.base, x.h, p, M);
  cplx jh = jHalf(x.base, p.omega);
  cplx jhm(1.0, 0.0);
  for (int i = 0; i < M.degree(); ++i) jhm *= jh;
  return std::exp(cplx(0.0, kPi) * (e.quad - e.shift)) * jhm;
}

cplx jkM(const MetaJacobiElement& x, const JacobiPoint& p, const SlashParams& params) {
  ExponentPair e = slashExponents(x.base.base, x.h, p, params.M);
  cplx jh = jHalf(x.base, p.omega);
  cplx jhk(1.0, 0.0);
  cplx base = params.k < 0 ? cplx(1.0, 0.0) / jh : jh;
  for (long i = 0; i < std::labs(params.k); ++i) jhk *= base;
  return std::exp(cplx(0.0, 2.0 * kPi) * (e.quad - e.shift)) * jhk;
}

PointFunction slash(const PointFunction& f, const JacobiElement& x, const SlashParams& params) {
  IndexMatrix M = params.M;
  long k = params.k;
  return [f, x, M, k](const JacobiPoint& p) -> cplx {
    cplx jm = jM(x, p, M);
    cplx det = jMatrixChecked(x.base, p.omega).determinant();
    cplx detk(1.0, 0.0);
    cplx base = k < 0 ? det : cplx(1.0, 0.0) / det;
    for (long i = 0; i < std::labs(k); ++i) detk *= base;
    return (cplx(1.0, 0.0) / jm) * detk * f(jacobiAction(x, p));
  };
}

PointFunction slashHalf(const PointFunction& f, const MetaJacobiElement& x, const SlashParams& params) {
  IndexMatrix M = params.M;
  SlashParams sp{params.k, M};
  return [f, x, sp](const JacobiPoint& p) -> cplx {
    return (cplx(1.0, 0.0) / jkM(x, p, sp)) * f(metaJacobiAction(x, p));
  };
}

}  // namespace swj
