#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qfourier/poly.hpp"

namespace qfourier {

class RingElement;

/// Graded quotient C[x]/I of a polynomial ring by a homogeneous ideal.
///
/// Normal forms are computed degree by degree from the echelon form of the
/// ideal's graded piece, so the ring need not be finite dimensional. Standard
/// monomials of each degree form the basis. Copies share the cached state.
class QuotientRing {
 public:
  struct Normalization {
    Poly element;       // any top-degree element
    Rational integral;  // value of the integral on it
  };

  QuotientRing() = default;
  QuotientRing(VarsPtr ambient, std::vector<Poly> relations,
               std::optional<Normalization> normalization = std::nullopt);

  /// C with no generators.
  static QuotientRing point();
  /// C[x]/(x^n), integral of x^(n-1) equal to one.
  static QuotientRing truncated(const std::string& name, int n);

  const VarsPtr& ambient() const;
  const std::vector<Poly>& relations() const;
  bool valid() const { return impl_ != nullptr; }
  bool operator==(const QuotientRing& o) const { return impl_ == o.impl_; }
  bool operator!=(const QuotientRing& o) const { return impl_ != o.impl_; }

  RingElement reduce(const Poly& x) const;
  RingElement zero() const;
  RingElement one() const;
  RingElement scalar(const Rational& c) const;
  RingElement gen(const std::string& name) const;
  RingElement gen(int i) const;

  /// Standard monomials of cohomological degree 2*weight.
  std::vector<Monomial> basisInWeight(int weight) const;
  /// Finite rings only: top weight, full basis (ascending weight).
  bool isFinite() const;
  int topWeight() const;
  int complexDim() const { return topWeight(); }
  std::vector<Monomial> basis() const;
  int dimension() const { return static_cast<int>(basis().size()); }

  bool hasIntegral() const;
  Rational integrate(const RingElement& x) const;
  /// Value of the integral on each top-weight basis monomial.
  std::map<Monomial, Rational> integralTable() const;

  int monomialWeight(const Monomial& m) const;
  std::string monomialString(const Monomial& m) const;

  struct Impl;

 private:
  friend class RingElement;
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  std::shared_ptr<Impl> impl_;
};

/// Element of a QuotientRing stored on standard monomials.
class RingElement {
 public:
  using Coeffs = std::map<Monomial, Rational>;

  RingElement() = default;
  RingElement(QuotientRing ring, Coeffs coeffs);

  const QuotientRing& ring() const { return ring_; }
  const Coeffs& coeffs() const { return coeffs_; }
  bool isZero() const { return coeffs_.empty(); }
  /// Coefficient of the unit monomial.
  Rational constantPart() const;
  RingElement weightPart(int w) const;
  bool isNilpotentShape() const { return constantPart() == 0; }
  Poly lift() const;

  RingElement& operator+=(const RingElement& o);
  RingElement& operator-=(const RingElement& o);
  RingElement& operator*=(const Rational& c);
  RingElement operator-() const;
  friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
  friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  friend RingElement operator*(RingElement a, const Rational& c) { return a *= c; }
  friend RingElement operator*(const Rational& c, RingElement a) { return a *= c; }
  RingElement& operator*=(const RingElement& o) { return *this = *this * o; }
  bool operator==(const RingElement& o) const;
  bool operator!=(const RingElement& o) const { return !(*this == o); }
  RingElement pow(unsigned k) const;

  std::string str() const;

 private:
  QuotientRing ring_;
  Coeffs coeffs_;
};

}  // namespace qfourier
