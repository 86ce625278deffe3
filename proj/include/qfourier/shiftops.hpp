#pragma once

#include <map>
#include <string>
#include <vector>

#include "qfourier/glsm.hpp"
#include "qfourier/localized.hpp"
#include "qfourier/novikov.hpp"

namespace qfourier {

/// Shift operator S^k on the localized model C[lambda, z]_loc of C^n.
struct ShiftOperator {
  IntMatrix weights;
  std::vector<int> k;
  /// prod_j prod_{c<=0}(D_j.lambda + cz) / prod_{c<=-D_j.k}(D_j.lambda + cz), cancelled.
  LocalizedFunction prefactor;
};

ShiftOperator shiftOperator(const IntMatrix& weights, const std::vector<int>& k);
/// prefactor(lambda, z) * f(lambda - k z, z); f lives over equivariantVars(l).
LocalizedFunction applyShift(const IntMatrix& weights, const std::vector<int>& k, const LocalizedFunction& f);
/// S^k(lambda_a f) == (lambda_a - k_a z) S^k f on `panel` seeded random rational f.
bool checkCommutation(const IntMatrix& weights, const std::vector<int>& k, int a, int panel = 20,
                      unsigned seed = 1);
/// Random rational function over equivariantVars(l) with linear-form denominators.
LocalizedFunction randomLocalized(int l, unsigned seed);

/// positivePart(lambda) = S^k negativePart(lambda) applied to 1.
struct DifferenceRelation {
  std::vector<int> k;
  Poly positivePart;
  Poly negativePart;
  std::string str() const;
};

/// Throws Input for k = 0; verifies the relation before returning.
DifferenceRelation gkzRelation(const IntMatrix& weights, const std::vector<int>& k);

/// sum_m q^m P_m(z q d/dq, z) with q-monomials to the left.
class DifferentialOperator {
 public:
  using Exponent = std::vector<int>;

  DifferentialOperator() = default;
  explicit DifferentialOperator(int l);

  int rank() const { return l_; }
  /// Polynomials are over equivariantVars(l); lambda_a stands for z q_a d/dq_a.
  const std::map<Exponent, Poly>& terms() const { return terms_; }
  void add(const Exponent& m, const Poly& p);
  bool isZero() const { return terms_.empty(); }
  /// Canonical text, theta printed as th (rank 1) or th1..thl.
  std::string str() const;

 private:
  int l_ = 0;
  std::map<Exponent, Poly> terms_;
};

/// S^k -> q^k on the left, lambda_a -> z q_a d/dq_a: q^k neg(theta) - pos(theta).
DifferentialOperator toDifferential(const DifferenceRelation& rel);

/// Applies op to s. theta_a acts on q^d q^{P/z} c as (P_a + z d_a). The result
/// is truncated at N - m, m the largest |<omega, k>| among the q-shifts.
NovikovSeries applyDifferential(const DifferentialOperator& op, const NovikovSeries& s);

}  // namespace qfourier
