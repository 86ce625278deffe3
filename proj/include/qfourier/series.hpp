#pragma once

#include <map>
#include <string>

#include "qfourier/ring.hpp"

namespace qfourier {

/// Finite Laurent polynomial in z with ring coefficients.
class ZLaurent {
 public:
  using Coeffs = std::map<int, RingElement>;

  ZLaurent() = default;
  explicit ZLaurent(QuotientRing ring) : ring_(std::move(ring)) {}
  ZLaurent(QuotientRing ring, Coeffs c);
  static ZLaurent constant(const RingElement& x, int zpow = 0);

  const QuotientRing& ring() const { return ring_; }
  const Coeffs& coeffs() const { return coeffs_; }
  bool isZero() const { return coeffs_.empty(); }
  RingElement at(int zpow) const;
  /// Part whose ring coefficients have weight zero.
  ZLaurent unitPart() const;

  ZLaurent& operator+=(const ZLaurent& o);
  ZLaurent& operator-=(const ZLaurent& o);
  ZLaurent& operator*=(const Rational& c);
  ZLaurent operator-() const;
  friend ZLaurent operator+(ZLaurent a, const ZLaurent& b) { return a += b; }
  friend ZLaurent operator-(ZLaurent a, const ZLaurent& b) { return a -= b; }
  friend ZLaurent operator*(const ZLaurent& a, const ZLaurent& b);
  friend ZLaurent operator*(ZLaurent a, const Rational& c) { return a *= c; }
  ZLaurent& operator*=(const ZLaurent& o) { return *this = *this * o; }
  ZLaurent operator*(const RingElement& x) const;
  bool operator==(const ZLaurent& o) const;
  bool operator!=(const ZLaurent& o) const { return !(*this == o); }
  ZLaurent shiftZ(int k) const;
  /// z -> -z.
  ZLaurent flipZ() const;

  std::string str() const;

 private:
  void add(int k, const RingElement& x);
  QuotientRing ring_;
  Coeffs coeffs_;
};

/// Inverse of c z^m + (nilpotent); throws Singular if the unit part vanishes.
ZLaurent nilpotentInverse(const ZLaurent& x);
/// sum x^k / k!; throws Input unless x has zero weight-zero part.
RingElement expSeries(const RingElement& x);
ZLaurent expSeries(const ZLaurent& x);
/// log(1 + x) for nilpotent x.
RingElement logOnePlus(const RingElement& x);

}  // namespace qfourier
