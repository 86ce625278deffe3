#include "qfourier/series.hpp"

#include <sstream>

#include "qfourier/errors.hpp"

namespace qfourier {

ZLaurent::ZLaurent(QuotientRing ring, Coeffs c) : ring_(std::move(ring)) {
  for (auto& [k, x] : c) add(k, x);
}

ZLaurent ZLaurent::constant(const RingElement& x, int zpow) {
  ZLaurent r(x.ring());
  r.add(zpow, x);
  return r;
}

void ZLaurent::add(int k, const RingElement& x) {
  if (x.isZero()) return;
  if (!ring_.valid()) ring_ = x.ring();
  auto it = coeffs_.find(k);
  if (it == coeffs_.end()) {
    coeffs_.emplace(k, x);
    return;
  }
  it->second += x;
  if (it->second.isZero()) coeffs_.erase(it);
}

RingElement ZLaurent::at(int zpow) const {
  auto it = coeffs_.find(zpow);
  if (it != coeffs_.end()) return it->second;
  return ring_.valid() ? ring_.zero() : RingElement();
}

ZLaurent ZLaurent::unitPart() const {
  ZLaurent r(ring_);
  for (auto& [k, x] : coeffs_) r.add(k, x.weightPart(0));
  return r;
}

ZLaurent& ZLaurent::operator+=(const ZLaurent& o) {
  for (auto& [k, x] : o.coeffs_) add(k, x);
  return *this;
}

ZLaurent& ZLaurent::operator-=(const ZLaurent& o) {
  for (auto& [k, x] : o.coeffs_) add(k, -x);
  return *this;
}

ZLaurent& ZLaurent::operator*=(const Rational& c) {
  if (c == 0) coeffs_.clear();
  for (auto& [k, x] : coeffs_) x *= c;
  return *this;
}

ZLaurent ZLaurent::operator-() const {
  ZLaurent r = *this;
  for (auto& [k, x] : r.coeffs_) x = -x;
  return r;
}

ZLaurent operator*(const ZLaurent& a, const ZLaurent& b) {
  ZLaurent r(a.ring_.valid() ? a.ring_ : b.ring_);
  for (auto& [i, x] : a.coeffs_)
    for (auto& [j, y] : b.coeffs_) r.add(i + j, x * y);
  return r;
}

ZLaurent ZLaurent::operator*(const RingElement& x) const {
  ZLaurent r(ring_.valid() ? ring_ : x.ring());
  for (auto& [k, y] : coeffs_) r.add(k, y * x);
  return r;
}

bool ZLaurent::operator==(const ZLaurent& o) const {
  if (coeffs_.size() != o.coeffs_.size()) return false;
  auto it = o.coeffs_.begin();
  for (auto& [k, x] : coeffs_) {
    if (k != it->first || x != it->second) return false;
    ++it;
  }
  return true;
}

ZLaurent ZLaurent::shiftZ(int k) const {
  ZLaurent r(ring_);
  for (auto& [i, x] : coeffs_) r.coeffs_.emplace(i + k, x);
  return r;
}

ZLaurent ZLaurent::flipZ() const {
  ZLaurent r(ring_);
  for (auto& [i, x] : coeffs_) r.coeffs_.emplace(i, (i % 2 == 0) ? x : -x);
  return r;
}

std::string ZLaurent::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << "(" << it->second.str() << ")";
    if (it->first != 0) os << "*z^" << it->first;
  }
  return os.str();
}

ZLaurent nilpotentInverse(const ZLaurent& x) {
  ZLaurent unit = x.unitPart();
  if (unit.isZero()) fail(ErrorKind::Singular, "element has no unit part: " + x.str());
  if (unit.coeffs().size() != 1)
    fail(ErrorKind::Input, "unit part is not a single power of z: " + unit.str());
  int m = unit.coeffs().begin()->first;
  Rational c = unit.coeffs().begin()->second.constantPart();
  const QuotientRing& ring = x.ring();
  // x = c z^m (1 + n), n nilpotent
  ZLaurent n = (x - unit).shiftZ(-m) * Rational(1 / c);
  ZLaurent sum = ZLaurent::constant(ring.one());
  ZLaurent term = sum;
  const int cap = ring.isFinite() ? ring.topWeight() + 1 : 64;
  for (int k = 1; k <= cap; ++k) {
    term = term * n * Rational(-1);
    if (term.isZero()) break;
    if (k == cap) fail(ErrorKind::Input, "non-unit part is not nilpotent");
    sum += term;
  }
  return sum.shiftZ(-m) * Rational(1 / c);
}

RingElement expSeries(const RingElement& x) {
  if (x.constantPart() != 0) fail(ErrorKind::Input, "expSeries needs a nilpotent argument");
  const QuotientRing& ring = x.ring();
  RingElement sum = ring.one();
  RingElement term = sum;
  const int cap = ring.isFinite() ? ring.topWeight() + 1 : 64;
  for (int k = 1; k <= cap; ++k) {
    term = term * x * frac(1, k);
    if (term.isZero()) return sum;
    sum += term;
  }
  fail(ErrorKind::Input, "expSeries argument is not nilpotent");
}

ZLaurent expSeries(const ZLaurent& x) {
  if (x.isZero()) return ZLaurent::constant(x.ring().valid() ? x.ring().one() : QuotientRing::point().one());
  if (!x.unitPart().isZero()) fail(ErrorKind::Input, "expSeries needs a nilpotent argument");
  const QuotientRing& ring = x.ring();
  ZLaurent sum = ZLaurent::constant(ring.one());
  ZLaurent term = sum;
  const int cap = ring.isFinite() ? ring.topWeight() + 1 : 64;
  for (int k = 1; k <= cap; ++k) {
    term = term * x * frac(1, k);
    if (term.isZero()) return sum;
    sum += term;
  }
  fail(ErrorKind::Input, "expSeries argument is not nilpotent");
}

RingElement logOnePlus(const RingElement& x) {
  if (x.constantPart() != 0) fail(ErrorKind::Input, "logOnePlus needs a nilpotent argument");
  const QuotientRing& ring = x.ring();
  RingElement sum = ring.zero();
  RingElement power = ring.one();
  const int cap = ring.isFinite() ? ring.topWeight() + 1 : 64;
  for (int k = 1; k <= cap; ++k) {
    power *= x;
    if (power.isZero()) return sum;
    sum += power * frac(k % 2 ? 1 : -1, k);
  }
  fail(ErrorKind::Input, "logOnePlus argument is not nilpotent");
}

}  // namespace qfourier
