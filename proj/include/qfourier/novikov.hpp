#pragma once

#include <map>
#include <string>
#include <vector>

#include "qfourier/series.hpp"

namespace qfourier {

/// Truncated series sum_d q^d c_d(z) over a lattice of exponents, optionally
/// multiplied by the divisor prefactor q^{P/z} = prod_a q_a^{P_a/z}.
///
/// Exponents are stored as integer numerators over latticeDenominator(), so
/// q^{1/r}-refined lattices are represented exactly. Terms with pairing above
/// the truncation order are dropped on insertion.
class NovikovSeries {
 public:
  using Exponent = std::vector<int>;

  NovikovSeries() = default;
  NovikovSeries(QuotientRing ring, std::vector<Rational> omega, Rational order, int latticeDenominator = 1);

  const QuotientRing& ring() const { return ring_; }
  int rank() const { return static_cast<int>(omega_.size()); }
  const std::vector<Rational>& omega() const { return omega_; }
  const Rational& order() const { return order_; }
  int latticeDenominator() const { return den_; }
  /// <omega, d> in lattice units.
  Rational pairing(const Exponent& d) const;

  const std::map<Exponent, ZLaurent>& terms() const { return terms_; }
  ZLaurent at(const Exponent& d) const;
  void set(const Exponent& d, const ZLaurent& c);
  void add(const Exponent& d, const ZLaurent& c);

  const std::vector<RingElement>& prefactor() const { return prefactor_; }
  bool hasPrefactor() const { return !prefactor_.empty(); }
  void setPrefactor(std::vector<RingElement> p);

  NovikovSeries truncated(const Rational& order) const;
  /// q^b times the series; the order moves with the shift.
  NovikovSeries shifted(const Exponent& b) const;

  NovikovSeries& operator+=(const NovikovSeries& o);
  NovikovSeries& operator-=(const NovikovSeries& o);
  friend NovikovSeries operator+(NovikovSeries a, const NovikovSeries& b) { return a += b; }
  friend NovikovSeries operator-(NovikovSeries a, const NovikovSeries& b) { return a -= b; }
  /// Cauchy product truncated at the smaller order; prefactor exponents add.
  friend NovikovSeries operator*(const NovikovSeries& a, const NovikovSeries& b);
  NovikovSeries operator*(const Rational& c) const;

  /// Structural equality: same exponents, z-powers, standard monomials and
  /// coefficients, same generator names and prefactor. Ring identity is not required.
  bool operator==(const NovikovSeries& o) const;
  bool operator!=(const NovikovSeries& o) const { return !(*this == o); }

  std::string str() const;

 private:
  void checkCompatible(const NovikovSeries& o) const;

  QuotientRing ring_;
  std::vector<Rational> omega_;
  Rational order_ = 0;
  int den_ = 1;
  std::map<Exponent, ZLaurent> terms_;
  std::vector<RingElement> prefactor_;
};

/// Same standard-monomial coefficients and generator names.
bool sameElement(const RingElement& a, const RingElement& b);
bool sameLaurent(const ZLaurent& a, const ZLaurent& b);

/// log F for F with constant term 1 and no prefactor, truncated at F's order.
NovikovSeries logSeries(const NovikovSeries& f);

}  // namespace qfourier
