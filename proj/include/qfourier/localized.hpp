#pragma once

#include <utility>
#include <vector>

#include "qfourier/poly.hpp"

namespace qfourier {

/// Exact rational function whose denominator is a product of affine linear forms.
///
/// Denominator factors are normalized so that the coefficient of their first
/// occurring generator is one; common factors with the numerator are always
/// cancelled, which makes the representation canonical.
class LocalizedFunction {
 public:
  using Factor = std::pair<Poly, int>;  // linear form, multiplicity

  LocalizedFunction() = default;
  explicit LocalizedFunction(VarsPtr vars);
  LocalizedFunction(const Poly& numerator);  // NOLINT: polynomials embed
  /// numerator / prod(linearFactors).
  static LocalizedFunction fraction(const Poly& numerator, const std::vector<Poly>& linearFactors);

  const VarsPtr& vars() const { return num_.vars(); }
  const Poly& numerator() const { return num_; }
  const std::vector<Factor>& denominatorFactors() const { return den_; }
  Poly denominator() const;
  bool isZero() const { return num_.isZero(); }
  bool isPolynomial() const { return den_.empty(); }

  LocalizedFunction& operator+=(const LocalizedFunction& o);
  LocalizedFunction& operator-=(const LocalizedFunction& o);
  LocalizedFunction& operator*=(const LocalizedFunction& o);
  LocalizedFunction& operator*=(const Rational& c);
  LocalizedFunction operator-() const;
  friend LocalizedFunction operator+(LocalizedFunction a, const LocalizedFunction& b) { return a += b; }
  friend LocalizedFunction operator-(LocalizedFunction a, const LocalizedFunction& b) { return a -= b; }
  friend LocalizedFunction operator*(LocalizedFunction a, const LocalizedFunction& b) { return a *= b; }
  friend LocalizedFunction operator*(LocalizedFunction a, const Rational& c) { return a *= c; }
  bool operator==(const LocalizedFunction& o) const;
  bool operator!=(const LocalizedFunction& o) const { return !(*this == o); }

  /// Divide by an affine linear form.
  LocalizedFunction divideBy(const Poly& linear) const;
  /// Substitute affine-linear images for the generators.
  LocalizedFunction substitute(const std::vector<Poly>& images) const;
  LocalizedFunction derivative(int var) const;
  /// Value at a rational point; throws Pole if a factor vanishes.
  Rational evaluate(const std::vector<Rational>& point) const;

  std::string str() const;

 private:
  void normalize();
  void addFactor(const Poly& linear, int mult);

  Poly num_;
  std::vector<Factor> den_;  // sorted by factor terms
};

/// Coefficient of (x - a)^-1 in the Laurent expansion in generator `var`,
/// where `a` is a polynomial in the other generators.
LocalizedFunction residueAt(const LocalizedFunction& f, int var, const Poly& a);

}  // namespace qfourier
