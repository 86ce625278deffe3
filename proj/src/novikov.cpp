#include "qfourier/novikov.hpp"

#include <sstream>

#include "qfourier/errors.hpp"

namespace qfourier {

namespace {

std::string exponentString(const NovikovSeries::Exponent& d, int den) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < d.size(); ++i) {
    if (i) os << ",";
    os << frac(d[i], den).get_str();
  }
  os << "]";
  return os.str();
}

bool sameNames(const QuotientRing& a, const QuotientRing& b) {
  if (!a.valid() || !b.valid()) return true;
  return a.ambient()->names == b.ambient()->names;
}

}  // namespace

bool sameElement(const RingElement& a, const RingElement& b) {
  if (a.isZero() || b.isZero()) return a.isZero() && b.isZero();
  return sameNames(a.ring(), b.ring()) && a.coeffs() == b.coeffs();
}

bool sameLaurent(const ZLaurent& a, const ZLaurent& b) {
  if (a.coeffs().size() != b.coeffs().size()) return false;
  auto it = b.coeffs().begin();
  for (auto& [k, x] : a.coeffs()) {
    if (k != it->first || !sameElement(x, it->second)) return false;
    ++it;
  }
  return true;
}

NovikovSeries::NovikovSeries(QuotientRing ring, std::vector<Rational> omega, Rational order, int latticeDenominator)
    : ring_(std::move(ring)), omega_(std::move(omega)), order_(std::move(order)), den_(latticeDenominator) {
  if (den_ < 1) fail(ErrorKind::Input, "lattice denominator must be positive");
}

Rational NovikovSeries::pairing(const Exponent& d) const {
  if (static_cast<int>(d.size()) != rank()) fail(ErrorKind::Input, "exponent has wrong rank");
  Rational s = 0;
  for (int i = 0; i < rank(); ++i) s += omega_[i] * d[i];
  return s / den_;
}

ZLaurent NovikovSeries::at(const Exponent& d) const {
  auto it = terms_.find(d);
  return it == terms_.end() ? ZLaurent(ring_) : it->second;
}

void NovikovSeries::set(const Exponent& d, const ZLaurent& c) {
  if (pairing(d) > order_) return;
  if (c.isZero()) {
    terms_.erase(d);
    return;
  }
  terms_[d] = c;
}

void NovikovSeries::add(const Exponent& d, const ZLaurent& c) {
  if (c.isZero() || pairing(d) > order_) return;
  auto it = terms_.find(d);
  if (it == terms_.end()) {
    terms_.emplace(d, c);
    return;
  }
  it->second += c;
  if (it->second.isZero()) terms_.erase(it);
}

void NovikovSeries::setPrefactor(std::vector<RingElement> p) {
  if (!p.empty() && static_cast<int>(p.size()) != rank()) fail(ErrorKind::Input, "prefactor has wrong rank");
  prefactor_ = std::move(p);
}

NovikovSeries NovikovSeries::truncated(const Rational& order) const {
  NovikovSeries r(ring_, omega_, std::min(order, order_), den_);
  r.prefactor_ = prefactor_;
  for (auto& [d, c] : terms_) r.set(d, c);
  return r;
}

NovikovSeries NovikovSeries::shifted(const Exponent& b) const {
  NovikovSeries r(ring_, omega_, order_ + pairing(b), den_);
  r.prefactor_ = prefactor_;
  for (auto& [d, c] : terms_) {
    Exponent e = d;
    for (size_t i = 0; i < e.size(); ++i) e[i] += b[i];
    r.set(e, c);
  }
  return r;
}

void NovikovSeries::checkCompatible(const NovikovSeries& o) const {
  if (omega_ != o.omega_ || den_ != o.den_) fail(ErrorKind::Input, "series over different lattices");
  if (!sameNames(ring_, o.ring_)) fail(ErrorKind::Input, "series over different rings");
}

NovikovSeries& NovikovSeries::operator+=(const NovikovSeries& o) {
  checkCompatible(o);
  if (prefactor_.size() != o.prefactor_.size()) fail(ErrorKind::Input, "series with different prefactors");
  for (size_t i = 0; i < prefactor_.size(); ++i)
    if (!sameElement(prefactor_[i], o.prefactor_[i])) fail(ErrorKind::Input, "series with different prefactors");
  order_ = std::min(order_, o.order_);
  for (auto it = terms_.begin(); it != terms_.end();) it = pairing(it->first) > order_ ? terms_.erase(it) : std::next(it);
  for (auto& [d, c] : o.terms_) add(d, c);
  return *this;
}

NovikovSeries& NovikovSeries::operator-=(const NovikovSeries& o) { return *this += o * Rational(-1); }

NovikovSeries NovikovSeries::operator*(const Rational& c) const {
  NovikovSeries r = *this;
  if (c == 0) r.terms_.clear();
  for (auto& [d, x] : r.terms_) x *= c;
  return r;
}

NovikovSeries operator*(const NovikovSeries& a, const NovikovSeries& b) {
  a.checkCompatible(b);
  NovikovSeries r(a.ring_, a.omega_, std::min(a.order_, b.order_), a.den_);
  if (a.hasPrefactor() && b.hasPrefactor()) {
    std::vector<RingElement> p;
    for (int i = 0; i < a.rank(); ++i) p.push_back(a.prefactor_[i] + b.prefactor_[i]);
    r.prefactor_ = std::move(p);
  } else {
    r.prefactor_ = a.hasPrefactor() ? a.prefactor_ : b.prefactor_;
  }
  for (auto& [d, x] : a.terms_) {
    for (auto& [e, y] : b.terms_) {
      NovikovSeries::Exponent s = d;
      for (size_t i = 0; i < s.size(); ++i) s[i] += e[i];
      if (r.pairing(s) > r.order_) continue;
      r.add(s, x * y);
    }
  }
  return r;
}

bool NovikovSeries::operator==(const NovikovSeries& o) const {
  if (omega_ != o.omega_ || den_ != o.den_ || terms_.size() != o.terms_.size()) return false;
  if (prefactor_.size() != o.prefactor_.size()) return false;
  for (size_t i = 0; i < prefactor_.size(); ++i)
    if (!sameElement(prefactor_[i], o.prefactor_[i])) return false;
  auto it = o.terms_.begin();
  for (auto& [d, c] : terms_) {
    if (d != it->first || !sameLaurent(c, it->second)) return false;
    ++it;
  }
  return true;
}

std::string NovikovSeries::str() const {
  std::ostringstream os;
  if (hasPrefactor()) {
    os << "q^(";
    for (int i = 0; i < rank(); ++i) os << (i ? ", " : "") << prefactor_[i].str();
    os << ")/z * ";
  }
  os << "{";
  bool first = true;
  for (auto& [d, c] : terms_) {
    if (!first) os << "; ";
    first = false;
    os << "q^" << exponentString(d, den_) << ": " << c.str();
  }
  os << "} + O(" << order_.get_str() << ")";
  return os.str();
}

NovikovSeries logSeries(const NovikovSeries& f) {
  if (f.hasPrefactor()) fail(ErrorKind::Input, "logSeries needs a series without prefactor");
  NovikovSeries::Exponent zero(f.rank(), 0);
  ZLaurent c0 = f.at(zero);
  const QuotientRing& ring = f.ring();
  if (!sameLaurent(c0, ZLaurent::constant(ring.one())))
    fail(ErrorKind::Input, "series constant term is not 1: " + c0.str());
  NovikovSeries x = f;
  x.set(zero, ZLaurent(ring));
  for (auto& [d, c] : x.terms())
    if (x.pairing(d) <= 0) fail(ErrorKind::Input, "logSeries needs positive exponents off the constant term");
  NovikovSeries sum(ring, f.omega(), f.order(), f.latticeDenominator());
  NovikovSeries power = x;
  for (int k = 1; !power.terms().empty(); ++k) {
    sum += power * frac(k % 2 ? 1 : -1, k);
    power = power * x;
  }
  return sum;
}

}  // namespace qfourier
