#include "groups.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace swj {

RMatrix standardJ(int n) {
  RMatrix j = RMatrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = RMatrix::Identity(n, n);
  j.bottomLeftCorner(n, n) = -RMatrix::Identity(n, n);
  return j;
}

Symplectic makeSymplectic(const RMatrix& g) {
  if (g.rows() != g.cols() || g.rows() % 2 != 0) fail(Errc::ShapeMismatch, "symplectic matrix must be 2n x 2n");
  int n = static_cast<int>(g.rows()) / 2;
  RMatrix j = standardJ(n);
  if ((g.transpose() * j * g - j).cwiseAbs().maxCoeff() > kSymplecticTol)
    fail(Errc::NotSymplectic, "tg J g != J");
  return Symplectic{g};
}

Symplectic symplecticIdentity(int n) { return Symplectic{RMatrix::Identity(2 * n, 2 * n)}; }

Symplectic sigmaN(int n) {
  RMatrix g = RMatrix::Zero(2 * n, 2 * n);
  g.topRightCorner(n, n) = -RMatrix::Identity(n, n);
  g.bottomLeftCorner(n, n) = RMatrix::Identity(n, n);
  return Symplectic{g};
}

Symplectic translationGen(const RMatrix& b) {
  if (b.rows() != b.cols() || (b - b.transpose()).cwiseAbs().maxCoeff() > kSymTol)
    fail(Errc::NotSymmetric, "t(b) needs b = tb");
  int n = static_cast<int>(b.rows());
  RMatrix g = RMatrix::Identity(2 * n, 2 * n);
  g.topRightCorner(n, n) = b;
  return Symplectic{g};
}

Symplectic dilationGen(const RMatrix& alpha) {
  int n = static_cast<int>(alpha.rows());
  if (alpha.cols() != n) fail(Errc::ShapeMismatch, "g(alpha) needs square alpha");
  Eigen::FullPivLU<RMatrix> lu(alpha);
  if (!lu.isInvertible()) fail(Errc::SingularJ, "alpha is singular");
  RMatrix g = RMatrix::Zero(2 * n, 2 * n);
  g.topLeftCorner(n, n) = alpha.transpose();
  g.bottomRightCorner(n, n) = lu.inverse();
  return Symplectic{g};
}

Symplectic symplecticMul(const Symplectic& a, const Symplectic& b) {
  if (a.degree() != b.degree()) fail(Errc::ShapeMismatch, "degree mismatch");
  return Symplectic{a.g * b.g};
}

Symplectic symplecticInv(const Symplectic& a) {
  int n = a.degree();
  RMatrix inv(2 * n, 2 * n);
  inv.topLeftCorner(n, n) = a.blockD().transpose();
  inv.topRightCorner(n, n) = -a.blockB().transpose();
  inv.bottomLeftCorner(n, n) = -a.blockC().transpose();
  inv.bottomRightCorner(n, n) = a.blockA().transpose();
  return Symplectic{inv};
}

Heisenberg makeHeisenberg(const RMatrix& lambda, const RMatrix& mu, const RMatrix& kappa) {
  if (lambda.rows() != mu.rows() || lambda.cols() != mu.cols()) fail(Errc::ShapeMismatch, "lambda/mu shapes differ");
  if (kappa.rows() != lambda.rows() || kappa.cols() != lambda.rows()) fail(Errc::ShapeMismatch, "kappa must be m x m");
  RMatrix s = kappa + mu * lambda.transpose();
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-9) fail(Errc::NotSymmetric, "kappa + mu t(lambda) not symmetric");
  return Heisenberg{lambda, mu, kappa};
}

Heisenberg heisenbergIdentity(int n, int m) {
  return Heisenberg{RMatrix::Zero(m, n), RMatrix::Zero(m, n), RMatrix::Zero(m, m)};
}

Heisenberg heisMul(const Heisenberg& a, const Heisenberg& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) fail(Errc::ShapeMismatch, "Heisenberg shape mismatch");
  return Heisenberg{a.lambda + b.lambda, a.mu + b.mu,
                    a.kappa + b.kappa + a.lambda * b.mu.transpose() - a.mu * b.lambda.transpose()};
}

Heisenberg heisInv(const Heisenberg& a) {
  return Heisenberg{-a.lambda, -a.mu,
                    -a.kappa + a.lambda * a.mu.transpose() - a.mu * a.lambda.transpose()};
}

Heisenberg fromBracketCoords(const RMatrix& lambda, const RMatrix& mu, const RMatrix& kappa) {
  return Heisenberg{lambda, mu, kappa - mu * lambda.transpose()};
}

JacobiElement jacobiIdentity(int n, int m) {
  return JacobiElement{symplecticIdentity(n), heisenbergIdentity(n, m)};
}

JacobiElement jacobiMul(const JacobiElement& a, const JacobiElement& b) {
  if (a.base.degree() != b.base.degree()) fail(Errc::ShapeMismatch, "degree mismatch");
  int n = a.base.degree();
  int m = a.h.rows();
  // (lt, mt) = (lambda, mu) g'
  RMatrix lm(m, 2 * n);
  lm.leftCols(n) = a.h.lambda;
  lm.rightCols(n) = a.h.mu;
  RMatrix moved = lm * b.base.g;
  RMatrix lt = moved.leftCols(n);
  RMatrix mt = moved.rightCols(n);
  Heisenberg h{lt + b.h.lambda, mt + b.h.mu,
               a.h.kappa + b.h.kappa + lt * b.h.mu.transpose() - mt * b.h.lambda.transpose()};
  return JacobiElement{symplecticMul(a.base, b.base), h};
}

CMatrix jMatrix(const Symplectic& g, const SiegelPoint& omega) {
  return g.blockC().cast<cplx>() * omega.omega + g.blockD().cast<cplx>();
}

CMatrix jMatrixChecked(const Symplectic& g, const SiegelPoint& omega) {
  CMatrix j = jMatrix(g, omega);
  Eigen::JacobiSVD<CMatrix> svd(j);
  double smin = svd.singularValues().minCoeff();
  double smax = svd.singularValues().maxCoeff();
  if (smin <= 0.0 || smax / smin > kCondLimit) fail(Errc::SingularJ, "C Omega + D is numerically singular");
  return j;
}

SiegelPoint siegelAction(const Symplectic& g, const SiegelPoint& omega) {
  CMatrix j = jMatrixChecked(g, omega);
  CMatrix num = g.blockA().cast<cplx>() * omega.omega + g.blockB().cast<cplx>();
  CMatrix out = num * j.inverse();
  return validateSiegel(0.5 * (out + out.transpose()));
}

JacobiPoint jacobiAction(const JacobiElement& x, const JacobiPoint& p) {
  CMatrix j = jMatrixChecked(x.base, p.omega);
  SiegelPoint omegaStar = siegelAction(x.base, p.omega);
  CMatrix zStar = (p.z + x.h.lambda.cast<cplx>() * p.omega.omega + x.h.mu.cast<cplx>()) * j.inverse();
  return JacobiPoint{omegaStar, zStar};
}

cplx alphaFactor(const SiegelPoint& omega, const Symplectic& g) {
  cplx det = jMatrixChecked(g, omega).determinant();
  return det / std::abs(det);
}

cplx epsilonFactor(const Symplectic& g, const SiegelPoint& omegaPrime, const SiegelPoint& omega) {
  SiegelPoint gOmegaPrime = siegelAction(g, omegaPrime);
  SiegelPoint gOmega = siegelAction(g, omega);
  CMatrix top = pairMatrix(gOmegaPrime.omega, gOmega.omega);
  CMatrix bottom = pairMatrix(omegaPrime.omega, omega.omega);
  if (minEigSym(top.real()) <= 0.0 || minEigSym(bottom.real()) <= 0.0)
    fail(Errc::DomainViolation, "pair matrix left the right half domain");
  cplx v = detPowHalf(top, -1) * detPowHalf(bottom, 1);
  double dj1 = std::abs(jMatrixChecked(g, omegaPrime).determinant());
  double dj2 = std::abs(jMatrixChecked(g, omega).determinant());
  return v / std::sqrt(dj1 * dj2);
}

cplx betaCocycle(const SiegelPoint& omega, const Symplectic& g1, const Symplectic& g2) {
  return epsilonFactor(g1, omega, siegelAction(g2, omega));
}

SiegelPoint siegelI(int n) { return SiegelPoint{cplx(0.0, 1.0) * CMatrix::Identity(n, n)}; }

MetaElement makeMeta(const Symplectic& g, cplx eps) {
  if (std::abs(std::abs(eps) - 1.0) > kSheetTol) fail(Errc::SheetMismatch, "|eps| != 1");
  cplx alpha = alphaFactor(siegelI(g.degree()), g);
  if (std::abs(eps * eps * alpha - 1.0) > kSheetTol) fail(Errc::SheetMismatch, "eps^2 != alpha_{iI}(g)^{-1}");
  return MetaElement{g, eps / std::abs(eps)};
}

MetaElement metaLift(const Symplectic& g, int sign) {
  cplx alpha = alphaFactor(siegelI(g.degree()), g);
  cplx eps = principalSqrt(cplx(1.0, 0.0) / alpha);
  return MetaElement{g, (sign >= 0 ? eps : -eps)};
}

MetaElement metaMul(const MetaElement& a, const MetaElement& b) {
  if (a.degree() != b.degree()) fail(Errc::ShapeMismatch, "degree mismatch");
  cplx beta = betaCocycle(siegelI(a.degree()), a.base, b.base);
  cplx eps = a.eps * b.eps * beta;
  return MetaElement{symplecticMul(a.base, b.base), eps / std::abs(eps)};
}

MetaElement metaIdentity(int n) { return MetaElement{symplecticIdentity(n), cplx(1.0, 0.0)}; }

MetaJacobiElement metaJacobiIdentity(int n, int m) {
  return MetaJacobiElement{metaIdentity(n), heisenbergIdentity(n, m)};
}

MetaJacobiElement metaJacobiMul(const MetaJacobiElement& a, const MetaJacobiElement& b) {
  JacobiElement prod = jacobiMul(a.project(), b.project());
  MetaElement base = metaMul(a.base, b.base);
  return MetaJacobiElement{base, prod.h};
}

JacobiPoint metaJacobiAction(const MetaJacobiElement& x, const JacobiPoint& p) {
  return jacobiAction(x.project(), p);
}

Generator genHeisenberg(const RMatrix& lambda, const RMatrix& mu, const RMatrix& kappa, cplx eps) {
  makeHeisenberg(lambda, mu, kappa);
  if (std::abs(eps - cplx(1, 0)) > kSheetTol && std::abs(eps + cplx(1, 0)) > kSheetTol)
    fail(Errc::SheetMismatch, "Heisenberg generator sheet must be +-1");
  Generator w;
  w.kind = Generator::Kind::Heisenberg;
  w.n = static_cast<int>(lambda.cols());
  w.m = static_cast<int>(lambda.rows());
  w.lambda = lambda;
  w.mu = mu;
  w.kappa = kappa;
  w.eps = eps;
  return w;
}

Generator genTranslation(int m, const RMatrix& b, cplx eps) {
  translationGen(b);  // shape/symmetry check
  if (std::abs(eps - cplx(1, 0)) > kSheetTol && std::abs(eps + cplx(1, 0)) > kSheetTol)
    fail(Errc::SheetMismatch, "translation generator sheet must be +-1");
  Generator w;
  w.kind = Generator::Kind::Translation;
  w.n = static_cast<int>(b.rows());
  w.m = m;
  w.b = b;
  w.eps = eps;
  return w;
}

Generator genDilation(int m, const RMatrix& alpha, cplx eps) {
  Symplectic g = dilationGen(alpha);
  Generator w;
  w.kind = Generator::Kind::Dilation;
  w.n = static_cast<int>(alpha.rows());
  w.m = m;
  w.alpha = alpha;
  w.eps = eps;
  makeMeta(g, eps);  // det alpha > 0 pairs with +-1, det alpha < 0 with +-i
  return w;
}

cplx inversionPrincipalSheet(int n) {
  // eps^2 = (-i)^n
  return halfPower(halfPower(cplx(0.0, -1.0), 2 * n), 1);
}

Generator genInversion(int n, int m, cplx eps) {
  Generator w;
  w.kind = Generator::Kind::Inversion;
  w.n = n;
  w.m = m;
  w.eps = eps;
  makeMeta(sigmaN(n), eps);
  return w;
}

MetaJacobiElement toMetaJacobi(const Generator& w) {
  switch (w.kind) {
    case Generator::Kind::Heisenberg:
      return MetaJacobiElement{MetaElement{symplecticIdentity(w.n), w.eps},
                               makeHeisenberg(w.lambda, w.mu, w.kappa)};
    case Generator::Kind::Translation:
      return MetaJacobiElement{makeMeta(translationGen(w.b), w.eps), heisenbergIdentity(w.n, w.m)};
    case Generator::Kind::Dilation:
      return MetaJacobiElement{makeMeta(dilationGen(w.alpha), w.eps), heisenbergIdentity(w.n, w.m)};
    case Generator::Kind::Inversion:
      return MetaJacobiElement{makeMeta(sigmaN(w.n), w.eps), heisenbergIdentity(w.n, w.m)};
  }
  fail(Errc::InvalidArgument, "unknown generator kind");
}

namespace {

RMatrix randomSymmetric(int n, Rng& rng, bool integral, bool evenDiagonal) {
  RMatrix b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double v = integral ? static_cast<double>(rng.uniformInt(-2, 2)) : rng.uniform(-1.0, 1.0);
      b(i, j) = b(j, i) = v;
    }
  if (integral && evenDiagonal)
    for (int i = 0; i < n; ++i) b(i, i) = 2.0 * rng.uniformInt(-1, 1);
  return b;
}

RMatrix randomInvertible(int n, Rng& rng, bool integral) {
  if (!integral) {
    for (;;) {
      RMatrix a(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
      a += RMatrix::Identity(n, n) * (rng.coin() ? 1.0 : -1.0);
      if (std::abs(a.determinant()) > 0.2) return a;
    }
  }
  // Random element of GL(n,Z) from elementary operations.
  RMatrix a = RMatrix::Identity(n, n);
  int ops = rng.uniformInt(1, 4);
  for (int k = 0; k < ops; ++k) {
    int choice = rng.uniformInt(0, 2);
    if (choice == 0 && n > 1) {
      int i = rng.uniformInt(0, n - 1);
      int j = rng.uniformInt(0, n - 1);
      if (i != j) a.row(i) += static_cast<double>(rng.uniformInt(-2, 2)) * a.row(j);
    } else if (choice == 1 && n > 1) {
      int i = rng.uniformInt(0, n - 1);
      int j = rng.uniformInt(0, n - 1);
      if (i != j) a.row(i).swap(a.row(j));
    } else {
      int i = rng.uniformInt(0, n - 1);
      a.row(i) *= -1.0;
    }
  }
  return a;
}

}  // namespace

SymplecticWord randomSymplecticWord(int n, int length, Rng& rng, bool integral) {
  if (length < 1) fail(Errc::InvalidArgument, "word length must be >= 1");
  SymplecticWord out;
  out.element = symplecticIdentity(n);
  for (int k = 0; k < length; ++k) {
    Generator gen;
    int choice = rng.uniformInt(0, 2);
    if (choice == 0) {
      gen = genTranslation(1, randomSymmetric(n, rng, integral, integral));
    } else if (choice == 1) {
      RMatrix alpha = randomInvertible(n, rng, integral);
      cplx eps = metaLift(dilationGen(alpha), 1).eps;
      gen = genDilation(1, alpha, eps);
    } else {
      gen = genInversion(n, 1, inversionPrincipalSheet(n));
    }
    out.word.push_back(gen);
    out.element = symplecticMul(out.element, toMetaJacobi(gen).base.base);
  }
  return out;
}

std::vector<Generator> randomGeneratorWord(int n, int m, int length, Rng& rng) {
  std::vector<Generator> word;
  for (int k = 0; k < length; ++k) {
    int choice = rng.uniformInt(0, 3);
    double sign = rng.coin() ? 1.0 : -1.0;
    if (choice == 0) {
      RMatrix lambda(m, n), mu(m, n);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
          lambda(i, j) = rng.uniformInt(-2, 2);
          mu(i, j) = rng.uniformInt(-2, 2);
        }
      RMatrix kappaSym = randomSymmetric(m, rng, true, false);
      word.push_back(genHeisenberg(lambda, mu, kappaSym - mu * lambda.transpose(), sign));
    } else if (choice == 1) {
      word.push_back(genTranslation(m, randomSymmetric(n, rng, true, true), sign));
    } else if (choice == 2) {
      RMatrix alpha = randomInvertible(n, rng, true);
      cplx eps = metaLift(dilationGen(alpha), 1).eps * sign;
      word.push_back(genDilation(m, alpha, eps));
    } else {
      word.push_back(genInversion(n, m, inversionPrincipalSheet(n) * sign));
    }
  }
  return word;
}

MetaJacobiElement wordProduct(const std::vector<Generator>& word) {
  if (word.empty()) fail(Errc::InvalidArgument, "empty word");
  MetaJacobiElement acc = toMetaJacobi(word.front());
  for (std::size_t i = 1; i < word.size(); ++i) acc = metaJacobiMul(acc, toMetaJacobi(word[i]));
  return acc;
}

}  // namespace swj
