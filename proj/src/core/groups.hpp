#pragma once

#include <string>
#include <vector>

#include "matcore.hpp"

namespace swj {

inline constexpr double kSymplecticTol = 1e-10;
inline constexpr double kSheetTol = 1e-9;

// Element of Sp(n,R) as a real 2n x 2n matrix with block views A,B,C,D.
struct Symplectic {
  RMatrix g;
  int degree() const { return static_cast<int>(g.rows()) / 2; }
  RMatrix blockA() const { int n = degree(); return g.topLeftCorner(n, n); }
  RMatrix blockB() const { int n = degree(); return g.topRightCorner(n, n); }
  RMatrix blockC() const { int n = degree(); return g.bottomLeftCorner(n, n); }
  RMatrix blockD() const { int n = degree(); return g.bottomRightCorner(n, n); }
};

RMatrix standardJ(int n);
Symplectic makeSymplectic(const RMatrix& g);  // checks tg J g = J
Symplectic symplecticIdentity(int n);
Symplectic sigmaN(int n);                       // [[0,-I],[I,0]]
Symplectic translationGen(const RMatrix& b);    // t(b) = [[I,b],[0,I]], b = tb
Symplectic dilationGen(const RMatrix& alpha);   // g(alpha) = [[t_alpha,0],[0,alpha^{-1}]]
Symplectic symplecticMul(const Symplectic& a, const Symplectic& b);
Symplectic symplecticInv(const Symplectic& a);

// Heisenberg triple (lambda, mu; kappa), kappa + mu t(lambda) symmetric.
struct Heisenberg {
  RMatrix lambda, mu, kappa;
  int rows() const { return static_cast<int>(lambda.rows()); }  // m
  int cols() const { return static_cast<int>(lambda.cols()); }  // n
};

Heisenberg makeHeisenberg(const RMatrix& lambda, const RMatrix& mu, const RMatrix& kappa);
Heisenberg heisenbergIdentity(int n, int m);
Heisenberg heisMul(const Heisenberg& a, const Heisenberg& b);
Heisenberg heisInv(const Heisenberg& a);
// Square-bracket coordinates: [lambda,mu;kappa] = (lambda,mu;kappa - mu t(lambda)).
Heisenberg fromBracketCoords(const RMatrix& lambda, const RMatrix& mu, const RMatrix& kappa);

struct JacobiElement {
  Symplectic base;
  Heisenberg h;
};

JacobiElement jacobiIdentity(int n, int m);
JacobiElement jacobiMul(const JacobiElement& a, const JacobiElement& b);

struct JacobiPoint {
  SiegelPoint omega;
  CMatrix z;  // m x n
  int degreeN() const { return omega.degree(); }
  int degreeM() const { return static_cast<int>(z.rows()); }
};

// J(g,Omega) = C Omega + D with a condition-number guard.
CMatrix jMatrix(const Symplectic& g, const SiegelPoint& omega);
CMatrix jMatrixChecked(const Symplectic& g, const SiegelPoint& omega);

SiegelPoint siegelAction(const Symplectic& g, const SiegelPoint& omega);
JacobiPoint jacobiAction(const JacobiElement& x, const JacobiPoint& p);

// alpha_Omega(g) = det J(g,Omega) / |det J(g,Omega)|
cplx alphaFactor(const SiegelPoint& omega, const Symplectic& g);

// epsilon(g; Omega', Omega), the four-factor product on the holomorphic det sqrt.
cplx epsilonFactor(const Symplectic& g, const SiegelPoint& omegaPrime, const SiegelPoint& omega);

// beta_Omega(g1,g2) = epsilon(g1; Omega, g2.Omega)
cplx betaCocycle(const SiegelPoint& omega, const Symplectic& g1, const Symplectic& g2);

// Element of the two-fold cover G_* = G_{iI_n}: eps^2 = alpha_{iI}(g)^{-1}.
struct MetaElement {
  Symplectic base;
  cplx eps;
  int degree() const { return base.degree(); }
};

SiegelPoint siegelI(int n);  // iI_n
MetaElement makeMeta(const Symplectic& g, cplx eps);  // validates the sheet invariant
MetaElement metaLift(const Symplectic& g, int sign);  // principal sheet times sign
MetaElement metaMul(const MetaElement& a, const MetaElement& b);
MetaElement metaIdentity(int n);

struct MetaJacobiElement {
  MetaElement base;
  Heisenberg h;
  JacobiElement project() const { return JacobiElement{base.base, h}; }
};

MetaJacobiElement metaJacobiIdentity(int n, int m);
MetaJacobiElement metaJacobiMul(const MetaJacobiElement& a, const MetaJacobiElement& b);
JacobiPoint metaJacobiAction(const MetaJacobiElement& x, const JacobiPoint& p);

// Generator of G_*^J in the four families of the covariance theorem.
struct Generator {
  enum class Kind { Heisenberg, Translation, Dilation, Inversion };
  Kind kind;
  int n = 1, m = 1;
  RMatrix lambda, mu, kappa;  // Heisenberg
  RMatrix b;                  // Translation
  RMatrix alpha;              // Dilation
  cplx eps{1.0, 0.0};
};

Generator genHeisenberg(const RMatrix& lambda, const RMatrix& mu, const RMatrix& kappa, cplx eps = 1.0);
Generator genTranslation(int m, const RMatrix& b, cplx eps = 1.0);
Generator genDilation(int m, const RMatrix& alpha, cplx eps = 1.0);
Generator genInversion(int n, int m, cplx eps);
cplx inversionPrincipalSheet(int n);  // principal eps with eps^2 = (-i)^n

MetaJacobiElement toMetaJacobi(const Generator& w);

struct SymplecticWord {
  Symplectic element;
  std::vector<Generator> word;  // Heisenberg entries never appear here
};

// Product of random generators t(b), g(alpha), sigma_n; integral parameters when
// integral == true (b with even diagonal, alpha in GL(n,Z)).
SymplecticWord randomSymplecticWord(int n, int length, Rng& rng, bool integral = false);

// Random generator word at the Jacobi level; used by the theta-transform suites.
std::vector<Generator> randomGeneratorWord(int n, int m, int length, Rng& rng);
MetaJacobiElement wordProduct(const std::vector<Generator>& word);

}  // namespace swj
