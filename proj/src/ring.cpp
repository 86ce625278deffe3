#include "qfourier/ring.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "qfourier/errors.hpp"

namespace qfourier {

namespace {

constexpr int kFiniteSearchCap = 256;

struct Piece {
  std::vector<Monomial> standard;
  std::map<Monomial, RingElement::Coeffs> nf;  // every monomial of this weight
};

void enumerate(const std::vector<int>& w, int i, int left, Monomial& cur,
               std::vector<Monomial>& out) {
  if (i == static_cast<int>(w.size())) {
    if (left == 0) out.push_back(cur);
    return;
  }
  for (int e = 0; e * w[i] <= left; ++e) {
    cur[i] = e;
    enumerate(w, i + 1, left - e * w[i], cur, out);
  }
  cur[i] = 0;
}

}  // namespace

struct QuotientRing::Impl {
  VarsPtr vars;
  std::vector<int> weights;
  std::vector<Poly> relations;
  std::vector<int> relWeights;
  std::optional<Normalization> normalization;

  mutable std::mutex mu;
  mutable std::map<int, Piece> pieces;
  mutable std::optional<int> top;  // -1 when infinite
  mutable std::optional<std::pair<Monomial, Rational>> topIntegral;

  int weightOf(const Monomial& m) const {
    int s = 0;
    for (size_t i = 0; i < m.size(); ++i) s += m[i] * weights[i];
    return s;
  }

  std::vector<Monomial> monomials(int w) const {
    std::vector<Monomial> out;
    Monomial cur(weights.size(), 0);
    if (w >= 0) enumerate(weights, 0, w, cur, out);
    // Columns in descending lexicographic order: leading monomials are eliminated first.
    std::sort(out.begin(), out.end(), std::greater<Monomial>());
    return out;
  }

  const Piece& piece(int w) const {
    auto it = pieces.find(w);
    if (it != pieces.end()) return it->second;
    auto monos = monomials(w);
    const int M = static_cast<int>(monos.size());
    std::map<Monomial, int> col;
    for (int i = 0; i < M; ++i) col[monos[i]] = i;

    std::map<int, std::vector<Rational>> pivots;  // pivot column -> reduced row
    auto insertRow = [&](std::vector<Rational> row) {
      for (auto& [pc, pr] : pivots) {
        if (row[pc] == 0) continue;
        Rational f = row[pc];
        for (int j = 0; j < M; ++j)
          if (pr[j] != 0) row[j] -= f * pr[j];
      }
      int lead = -1;
      for (int j = 0; j < M; ++j)
        if (row[j] != 0) {
          lead = j;
          break;
        }
      if (lead < 0) return;
      Rational inv = 1 / row[lead];
      for (auto& v : row) v *= inv;
      for (auto& [pc, pr] : pivots) {
        if (pr[lead] == 0) continue;
        Rational f = pr[lead];
        for (int j = 0; j < M; ++j)
          if (row[j] != 0) pr[j] -= f * row[j];
      }
      pivots.emplace(lead, std::move(row));
    };

    for (size_t r = 0; r < relations.size() && static_cast<int>(pivots.size()) < M; ++r) {
      int rest = w - relWeights[r];
      if (rest < 0) continue;
      for (auto& mu : monomials(rest)) {
        std::vector<Rational> row(M);
        for (auto& [m, c] : relations[r].terms()) {
          Monomial t = m;
          for (size_t i = 0; i < t.size(); ++i) t[i] += mu[i];
          row[col.at(t)] += c;
        }
        insertRow(std::move(row));
        if (static_cast<int>(pivots.size()) == M) break;
      }
    }

    Piece p;
    for (int j = 0; j < M; ++j)
      if (!pivots.count(j)) p.standard.push_back(monos[j]);
    for (int j = 0; j < M; ++j) {
      RingElement::Coeffs c;
      auto pit = pivots.find(j);
      if (pit == pivots.end()) {
        c[monos[j]] = 1;
      } else {
        for (int k = 0; k < M; ++k)
          if (k != j && pit->second[k] != 0) c[monos[k]] = -pit->second[k];
      }
      p.nf.emplace(monos[j], std::move(c));
    }
    return pieces.emplace(w, std::move(p)).first->second;
  }

  RingElement::Coeffs normalForm(const Monomial& m) const {
    std::lock_guard<std::mutex> lock(mu);
    return piece(weightOf(m)).nf.at(m);
  }

  int topWeight() const {
    std::lock_guard<std::mutex> lock(mu);
    if (top) return *top;
    int maxw = relations.empty() ? 1 : *std::max_element(weights.begin(), weights.end());
    if (weights.empty()) {
      top = 0;
      return 0;
    }
    int lastNonzero = 0, zeroRun = 0;
    for (int w = 0; w < kFiniteSearchCap; ++w) {
      if (piece(w).standard.empty()) {
        if (++zeroRun >= maxw) {
          top = lastNonzero;
          return *top;
        }
      } else {
        zeroRun = 0;
        lastNonzero = w;
      }
    }
    top = -1;
    return -1;
  }
};

QuotientRing::QuotientRing(VarsPtr ambient, std::vector<Poly> relations,
                           std::optional<Normalization> normalization)
    : impl_(std::make_shared<Impl>()) {
  impl_->vars = ambient;
  for (int d : ambient->degrees) {
    if (d <= 0) fail(ErrorKind::Input, "quotient ring generators need positive degree");
    impl_->weights.push_back(d / 2);
  }
  for (auto& r : relations) {
    if (r.isZero()) continue;
    Poly e = sameVars(r.vars(), ambient) ? r : r.embed(ambient);
    if (!e.isHomogeneous()) fail(ErrorKind::Input, "relation " + e.str() + " is not homogeneous");
    impl_->relWeights.push_back(e.degree() / 2);
    impl_->relations.push_back(std::move(e));
  }
  impl_->normalization = std::move(normalization);
}

QuotientRing QuotientRing::point() { return QuotientRing(makeVars({}), {}, Normalization{Poly(makeVars({}), 1), 1}); }

QuotientRing QuotientRing::truncated(const std::string& name, int n) {
  if (n < 1) fail(ErrorKind::Input, "truncated ring needs n >= 1");
  auto v = makeVars({name});
  return QuotientRing(v, {Poly::var(v, 0).pow(n)}, Normalization{Poly::var(v, 0).pow(n - 1), 1});
}

const VarsPtr& QuotientRing::ambient() const { return impl_->vars; }
const std::vector<Poly>& QuotientRing::relations() const { return impl_->relations; }

RingElement QuotientRing::reduce(const Poly& x) const {
  if (x.isZero()) return zero();
  Poly e = sameVars(x.vars(), impl_->vars) ? x : x.embed(impl_->vars);
  RingElement::Coeffs out;
  for (auto& [m, c] : e.terms()) {
    for (auto& [s, v] : impl_->normalForm(m)) {
      auto& slot = out[s];
      slot += c * v;
      if (slot == 0) out.erase(s);
    }
  }
  return RingElement(*this, std::move(out));
}

RingElement QuotientRing::zero() const { return RingElement(*this, {}); }
RingElement QuotientRing::one() const { return scalar(1); }
RingElement QuotientRing::scalar(const Rational& c) const { return reduce(Poly(impl_->vars, c)); }
RingElement QuotientRing::gen(const std::string& name) const { return reduce(Poly::var(impl_->vars, name)); }
RingElement QuotientRing::gen(int i) const { return reduce(Poly::var(impl_->vars, i)); }

std::vector<Monomial> QuotientRing::basisInWeight(int weight) const {
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->piece(weight).standard;
}

bool QuotientRing::isFinite() const { return impl_->topWeight() >= 0; }

int QuotientRing::topWeight() const {
  int t = impl_->topWeight();
  if (t < 0) fail(ErrorKind::Input, "ring is not finite dimensional");
  return t;
}

std::vector<Monomial> QuotientRing::basis() const {
  int t = topWeight();
  std::vector<Monomial> out;
  for (int w = 0; w <= t; ++w) {
    auto b = basisInWeight(w);
    std::sort(b.begin(), b.end());
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

bool QuotientRing::hasIntegral() const { return impl_->normalization.has_value(); }

namespace {

std::pair<Monomial, Rational> topIntegralOf(const QuotientRing& ring, const QuotientRing::Normalization& nz) {
  int t = ring.topWeight();
  auto top = ring.basisInWeight(t);
  if (top.size() != 1) fail(ErrorKind::Input, "top degree of ring is not one dimensional");
  RingElement e = ring.reduce(nz.element).weightPart(t);
  auto it = e.coeffs().find(top[0]);
  if (it == e.coeffs().end()) fail(ErrorKind::Input, "normalization element vanishes in top degree");
  return {top[0], nz.integral / it->second};
}

}  // namespace

Rational QuotientRing::integrate(const RingElement& x) const {
  if (!impl_->normalization) fail(ErrorKind::Input, "ring has no integral");
  std::optional<std::pair<Monomial, Rational>> ti;
  {
    std::lock_guard<std::mutex> lock(impl_->mu);
    ti = impl_->topIntegral;
  }
  if (!ti) {
    ti = topIntegralOf(*this, *impl_->normalization);
    std::lock_guard<std::mutex> lock(impl_->mu);
    impl_->topIntegral = ti;
  }
  auto& [mono, val] = *ti;
  auto it = x.coeffs().find(mono);
  return it == x.coeffs().end() ? Rational(0) : Rational(it->second * val);
}

std::map<Monomial, Rational> QuotientRing::integralTable() const {
  std::map<Monomial, Rational> out;
  for (auto& m : basis()) out[m] = integrate(RingElement(*this, {{m, 1}}));
  return out;
}

int QuotientRing::monomialWeight(const Monomial& m) const { return impl_->weightOf(m); }

std::string QuotientRing::monomialString(const Monomial& m) const {
  std::ostringstream os;
  bool any = false;
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (any) os << "*";
    os << impl_->vars->names[i];
    if (m[i] > 1) os << "^" << m[i];
    any = true;
  }
  return any ? os.str() : "1";
}

RingElement::RingElement(QuotientRing ring, Coeffs coeffs) : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) it = it->second == 0 ? coeffs_.erase(it) : std::next(it);
}

Rational RingElement::constantPart() const {
  for (auto& [m, c] : coeffs_)
    if (std::all_of(m.begin(), m.end(), [](int e) { return e == 0; })) return c;
  return 0;
}

RingElement RingElement::weightPart(int w) const {
  Coeffs c;
  for (auto& [m, v] : coeffs_)
    if (ring_.monomialWeight(m) == w) c.emplace(m, v);
  return RingElement(ring_, std::move(c));
}

Poly RingElement::lift() const {
  Poly p(ring_.ambient());
  for (auto& [m, c] : coeffs_) p += Poly::monomial(ring_.ambient(), m, c);
  return p;
}

namespace {

void checkSameRing(QuotientRing& a, const QuotientRing& b) {
  if (!a.valid()) {
    a = b;
    return;
  }
  if (b.valid() && a != b) fail(ErrorKind::Input, "ring elements from different rings");
}

}  // namespace

RingElement& RingElement::operator+=(const RingElement& o) {
  checkSameRing(ring_, o.ring_);
  for (auto& [m, c] : o.coeffs_) {
    auto& slot = coeffs_[m];
    slot += c;
    if (slot == 0) coeffs_.erase(m);
  }
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) {
  checkSameRing(ring_, o.ring_);
  for (auto& [m, c] : o.coeffs_) {
    auto& slot = coeffs_[m];
    slot -= c;
    if (slot == 0) coeffs_.erase(m);
  }
  return *this;
}

RingElement& RingElement::operator*=(const Rational& c) {
  if (c == 0) coeffs_.clear();
  for (auto& [m, v] : coeffs_) v *= c;
  return *this;
}

RingElement RingElement::operator-() const {
  RingElement r = *this;
  for (auto& [m, v] : r.coeffs_) v = -v;
  return r;
}

RingElement operator*(const RingElement& a, const RingElement& b) {
  QuotientRing ring = a.ring_;
  checkSameRing(ring, b.ring_);
  RingElement::Coeffs out;
  if (a.coeffs_.empty() || b.coeffs_.empty()) return RingElement(ring, {});
  Monomial m;
  for (auto& [ma, ca] : a.coeffs_) {
    for (auto& [mb, cb] : b.coeffs_) {
      m.resize(ma.size());
      for (size_t i = 0; i < ma.size(); ++i) m[i] = ma[i] + mb[i];
      Rational f = ca * cb;
      for (auto& [s, v] : ring.impl_->normalForm(m)) {
        auto& slot = out[s];
        slot += f * v;
        if (slot == 0) out.erase(s);
      }
    }
  }
  return RingElement(ring, std::move(out));
}

bool RingElement::operator==(const RingElement& o) const {
  if (coeffs_.empty() && o.coeffs_.empty()) return true;
  return ring_ == o.ring_ && coeffs_ == o.coeffs_;
}

RingElement RingElement::pow(unsigned k) const {
  RingElement r = ring_.one();
  RingElement b = *this;
  while (k) {
    if (k & 1) r *= b;
    k >>= 1;
    if (k) b *= b;
  }
  return r;
}

std::string RingElement::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : coeffs_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    Rational mag = abs(c);
    std::string ms = ring_.monomialString(m);
    if (ms == "1") os << mag.get_str();
    else if (mag == 1) os << ms;
    else os << mag.get_str() << "*" << ms;
  }
  return os.str();
}

}  // namespace qfourier
