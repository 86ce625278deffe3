#pragma once

#include <string>
#include <vector>

#include "qfourier/localized.hpp"
#include "qfourier/ring.hpp"

namespace qfourier {

using IntMatrix = std::vector<std::vector<int>>;
using RatMatrix = std::vector<std::vector<Rational>>;

/// Torus (C^x)^l acting on C^n: row i of `weights` is the weight D_i.
struct GlsmData {
  IntMatrix weights;
  std::vector<Rational> chamber;
  std::vector<std::string> coordinateNames;  // default x1..xn
  std::vector<std::string> parameterNames;   // default p (l = 1) or p1..pl

  int n() const { return static_cast<int>(weights.size()); }
  int l() const { return weights.empty() ? 0 : static_cast<int>(weights[0].size()); }
  /// Fills default names and checks shapes and rank; throws Input.
  void validate();
};

/// Generators lambda_1..lambda_l (named l or l1..ll) followed by z, all of degree 2.
VarsPtr equivariantVars(int l);

Rational determinant(RatMatrix m);
/// Inverse of a square matrix; throws Singular.
RatMatrix inverse(const RatMatrix& m);
int matrixRank(RatMatrix m);
RatMatrix toRational(const IntMatrix& m);
/// Rows of `rows` indexed by `subset`.
RatMatrix selectRows(const IntMatrix& rows, const std::vector<int>& subset);

/// omega in the closed cone spanned by the given rows (any rank).
bool inCone(const RatMatrix& rows, const std::vector<Rational>& omega);
/// omega lies in the span of some l-1 linearly independent rows.
bool onWall(const IntMatrix& weights, const std::vector<Rational>& omega);

struct FixedPoint {
  std::vector<int> subset;      // l coordinates that stay nonzero
  std::vector<int> complement;  // the n - l tangent directions
  RatMatrix inverse;            // (D_S)^{-1}, rows of D_S = weights of subset
};

struct QuotientData {
  GlsmData glsm;
  QuotientRing ring;  // generators = parameterNames
  std::vector<FixedPoint> fixedPoints;
  std::vector<std::vector<int>> srSubsets;  // minimal irrelevant subsets

  /// Kirwan image of a polynomial in the lambda generators (z absent or zero).
  RingElement kirwan(const Poly& x) const;
  /// u_i = kappa(D_i . lambda).
  RingElement divisor(int i) const;
  Rational integrate(const RingElement& x) const;
  /// sum_F x(lambda*_F) / prod_{j not in S} (D_j . lambda*_F + mu_j).
  Rational integrateByLocalization(const RingElement& x, const std::vector<Rational>& mu) const;
  /// Columns of D_S^{-1} over all fixed points; every effective class is a
  /// nonnegative combination of them.
  std::vector<std::vector<Rational>> moriGenerators() const;
  /// Integer classes d with lo <= <omega, d> <= hi inside the generator box.
  std::vector<std::vector<int>> classesUpTo(const Rational& lo, const Rational& hi) const;
  /// omega in Cone{D_j : D_j . d >= 0}: the I-function term at d can be nonzero.
  bool supportsClass(const std::vector<int>& d) const;
};

struct Chamber {
  std::vector<Rational> representative;
  bool empty = false;
  int fixedPointCount = 0;
};

/// Maximal chambers of the arrangement spanned by the weights, l <= 2.
std::vector<Chamber> chambers(const IntMatrix& weights);

/// Toric Kirwan presentation; throws Orbifold, EmptyQuotient, Wall.
QuotientData quotientPresentation(GlsmData glsm);

/// Diagonal weights (1,..,1) with chamber 1: P^{n-1}.
GlsmData projectiveSpace(int n);

}  // namespace qfourier
