#pragma once

#include <vector>

#include "qfourier/numeric.hpp"

namespace qfourier {

/// Normal weight w with multiplicity r at a fixed component.
struct WeightBlock {
  int weight;
  int rank;
};

struct FixedComponentWeights {
  std::vector<WeightBlock> blocks;
  int cF() const;  // sum r_j w_j
  int rF() const;  // sum r_j
  /// Throws Input for r < 1 and Unsupported for w = 0.
  void validate() const;
};

/// Principal log; the negative real axis is approached from above.
cplx principalLog(cplx x);

/// prod_j [(-2 pi z)^{-1/2} (-z)^{-w_j lambda/z} Gamma(-w_j lambda/z)]^{r_j}.
cplx gammaFactorG(const FixedComponentWeights& weights, cplx lambda, cplx z);

/// exp((delta log delta - delta)/z + log(delta)/2 + sum_{m=2}^{M} B_m/(m(m-1)) (z/delta)^{m-1}).
cplx deltaExpansion(cplx delta, cplx z, int M);
/// sqrt(z / 2 pi) z^{delta/z} Gamma(1 + delta/z), the function deltaExpansion approximates.
cplx deltaReference(cplx delta, cplx z);

struct PotentialValue {
  cplx w;   // W(lambda)
  cplx dw;  // W'(lambda)
};
/// W = sum_j r_j (w_j lambda log(w_j lambda) - w_j lambda) with principal logs.
PotentialValue effectivePotential(const FixedComponentWeights& weights, cplx lambda);

struct CriticalPoint {
  cplx lambda;
  int branch;       // k in lambda = exp((log q - A + 2 pi i k) / c_F)
  cplx logQBranch;  // log q + 2 pi i k' with W'(lambda) = logQBranch
};
/// The |c_F| solutions of W'(lambda) = log q, one per branch.
std::vector<CriticalPoint> criticalPoints(const FixedComponentWeights& weights, cplx q);

/// Leading stationary-phase term of (1 / 2 pi i z) int q^{-lambda/z} prod_j [z^{w_j lambda/z} Gamma(w_j lambda/z)]^{r_j}
/// at the critical point of the given branch.
cplx saddleAmplitude(const FixedComponentWeights& weights, cplx q, cplx z, int branch);

}  // namespace qfourier
