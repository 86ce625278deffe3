#include "qfourier/localized.hpp"

#include <algorithm>
#include <sstream>

#include "qfourier/errors.hpp"

namespace qfourier {

namespace {

bool isAffine(const Poly& p) {
  for (auto& [m, c] : p.terms()) {
    int s = 0;
    for (int e : m) s += e;
    if (s > 1) return false;
  }
  return true;
}

int pivotVar(const Poly& linear) {
  for (int i = 0; i < linear.vars()->size(); ++i) {
    Monomial m(linear.vars()->size(), 0);
    m[i] = 1;
    if (linear.coefficient(m) != 0) return i;
  }
  return -1;
}

Rational pivotCoefficient(const Poly& linear, int i) {
  Monomial m(linear.vars()->size(), 0);
  m[i] = 1;
  return linear.coefficient(m);
}

bool factorLess(const LocalizedFunction::Factor& a, const LocalizedFunction::Factor& b) {
  return a.first.terms() < b.first.terms();
}

}  // namespace

LocalizedFunction::LocalizedFunction(VarsPtr vars) : num_(std::move(vars)) {}

LocalizedFunction::LocalizedFunction(const Poly& numerator) : num_(numerator) {}

LocalizedFunction LocalizedFunction::fraction(const Poly& numerator, const std::vector<Poly>& linearFactors) {
  LocalizedFunction f(numerator);
  for (auto& l : linearFactors) f.addFactor(l, 1);
  f.normalize();
  return f;
}

void LocalizedFunction::addFactor(const Poly& linear, int mult) {
  if (mult == 0) return;
  if (!isAffine(linear)) fail(ErrorKind::Unsupported, "denominator factor " + linear.str() + " is not linear");
  if (linear.isZero()) fail(ErrorKind::Singular, "division by zero");
  int v = pivotVar(linear);
  if (v < 0) {
    Rational c = linear.constantTerm();
    Rational s = 1;
    for (int i = 0; i < std::abs(mult); ++i) s *= c;
    num_ *= mult > 0 ? Rational(1 / s) : s;
    return;
  }
  Rational a = pivotCoefficient(linear, v);
  Poly normed = linear * Rational(1 / a);
  Rational s = 1;
  for (int i = 0; i < std::abs(mult); ++i) s *= a;
  num_ *= mult > 0 ? Rational(1 / s) : s;
  if (!num_.vars()) num_ = Poly(linear.vars());
  for (auto& f : den_) {
    if (f.first == normed) {
      f.second += mult;
      return;
    }
  }
  den_.emplace_back(std::move(normed), mult);
}

void LocalizedFunction::normalize() {
  if (num_.isZero()) {
    den_.clear();
    return;
  }
  std::vector<Factor> kept;
  for (auto& [l, e] : den_) {
    int left = e;
    while (left > 0) {
      Poly q;
      if (!num_.divideLinear(l, pivotVar(l), q)) break;
      num_ = q;
      --left;
    }
    // Negative multiplicity means the form belongs to the numerator.
    for (; left < 0; ++left) num_ *= l;
    if (left > 0) kept.emplace_back(l, left);
  }
  std::sort(kept.begin(), kept.end(), factorLess);
  den_ = std::move(kept);
}

Poly LocalizedFunction::denominator() const {
  Poly d(vars(), 1);
  for (auto& [l, e] : den_) d *= l.pow(e);
  return d;
}

LocalizedFunction& LocalizedFunction::operator+=(const LocalizedFunction& o) {
  if (o.isZero()) return *this;
  if (isZero()) return *this = o;
  // Common denominator: max multiplicity per factor.
  std::vector<Factor> common = den_;
  for (auto& [l, e] : o.den_) {
    auto it = std::find_if(common.begin(), common.end(), [&](const Factor& f) { return f.first == l; });
    if (it == common.end()) common.emplace_back(l, e);
    else it->second = std::max(it->second, e);
  }
  auto lift = [&](const LocalizedFunction& f) {
    Poly n = f.num_;
    for (auto& [l, e] : common) {
      int have = 0;
      for (auto& [m, k] : f.den_)
        if (m == l) have = k;
      if (e > have) n *= l.pow(e - have);
    }
    return n;
  };
  num_ = lift(*this) + lift(o);
  den_ = std::move(common);
  normalize();
  return *this;
}

LocalizedFunction& LocalizedFunction::operator-=(const LocalizedFunction& o) { return *this += -o; }

LocalizedFunction& LocalizedFunction::operator*=(const LocalizedFunction& o) {
  num_ *= o.num_;
  for (auto& [l, e] : o.den_) addFactor(l, e);
  normalize();
  return *this;
}

LocalizedFunction& LocalizedFunction::operator*=(const Rational& c) {
  num_ *= c;
  if (num_.isZero()) den_.clear();
  return *this;
}

LocalizedFunction LocalizedFunction::operator-() const {
  LocalizedFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

bool LocalizedFunction::operator==(const LocalizedFunction& o) const {
  if (!(num_ == o.num_) || den_.size() != o.den_.size()) return false;
  for (size_t i = 0; i < den_.size(); ++i)
    if (!(den_[i].first == o.den_[i].first) || den_[i].second != o.den_[i].second) return false;
  return true;
}

LocalizedFunction LocalizedFunction::divideBy(const Poly& linear) const {
  LocalizedFunction r = *this;
  r.addFactor(linear, 1);
  r.normalize();
  return r;
}

LocalizedFunction LocalizedFunction::substitute(const std::vector<Poly>& images) const {
  for (auto& p : images)
    if (!isAffine(p)) fail(ErrorKind::Unsupported, "substitution image " + p.str() + " is not linear");
  LocalizedFunction r(num_.substitute(images));
  for (auto& [l, e] : den_) r.addFactor(l.substitute(images), e);
  r.normalize();
  return r;
}

LocalizedFunction LocalizedFunction::derivative(int var) const {
  // (N / prod L^e)' = (N' prod L - N sum e a_L prod_{M != L} M) / (prod L^e * prod L)
  Poly all(vars(), 1);
  for (auto& [l, e] : den_) all *= l;
  Poly top = num_.derivative(var) * all;
  for (size_t i = 0; i < den_.size(); ++i) {
    Poly others(vars(), 1);
    for (size_t j = 0; j < den_.size(); ++j)
      if (j != i) others *= den_[j].first;
    Rational a = den_[i].first.derivative(var).constantTerm();
    if (a != 0) top -= num_ * others * Rational(a * den_[i].second);
  }
  LocalizedFunction r(top);
  if (!r.num_.vars()) r.num_ = Poly(vars());
  for (auto& [l, e] : den_) r.addFactor(l, e + 1);
  r.normalize();
  return r;
}

Rational LocalizedFunction::evaluate(const std::vector<Rational>& point) const {
  std::vector<Poly> images;
  auto pv = makeVars({});
  for (auto& c : point) images.push_back(Poly(pv, c));
  Rational n = num_.isZero() ? Rational(0) : num_.substitute(images).constantTerm();
  Rational d = 1;
  for (auto& [l, e] : den_) {
    Rational v = l.substitute(images).constantTerm();
    if (v == 0) fail(ErrorKind::Pole, "evaluation at a pole of " + str());
    for (int i = 0; i < e; ++i) d *= v;
  }
  return n / d;
}

std::string LocalizedFunction::str() const {
  if (den_.empty()) return num_.str();
  std::ostringstream os;
  os << "(" << num_.str() << ")/(";
  for (size_t i = 0; i < den_.size(); ++i) {
    if (i) os << "*";
    os << "(" << den_[i].first.str() << ")";
    if (den_[i].second > 1) os << "^" << den_[i].second;
  }
  os << ")";
  return os.str();
}

LocalizedFunction residueAt(const LocalizedFunction& f, int var, const Poly& a) {
  const VarsPtr& vars = f.vars();
  if (!vars || var < 0 || var >= vars->size()) fail(ErrorKind::Input, "residue variable out of range");
  if (f.isZero()) return LocalizedFunction(vars);
  if (!isAffine(a) || a.degreeIn(var) > 0) fail(ErrorKind::Unsupported, "pole location must be affine in the other generators");
  // Move the pole to h = 0, h being generator `var`.
  std::vector<Poly> images;
  for (int i = 0; i < vars->size(); ++i) images.push_back(Poly::var(vars, i));
  images[var] = images[var] + a;
  LocalizedFunction g = f.substitute(images);

  int order = 0;
  std::vector<std::pair<Poly, int>> units;  // (beta + alpha h)
  for (auto& [l, e] : g.denominatorFactors()) {
    auto parts = l.collect(var);
    if (parts[0].isZero()) order += e;
    else units.emplace_back(l, e);
  }
  if (order == 0) return LocalizedFunction(vars);

  // Expansion in h up to h^(order-1) with coefficients free of h.
  auto numParts = g.numerator().collect(var);
  std::vector<LocalizedFunction> series(order, LocalizedFunction(vars));
  for (int k = 0; k < order && k < static_cast<int>(numParts.size()); ++k) series[k] = numParts[k];
  for (auto& [l, e] : units) {
    auto parts = l.collect(var);
    Poly beta = parts[0];
    Rational alpha = parts.size() > 1 ? parts[1].constantTerm() : Rational(0);
    // (beta + alpha h)^-e = beta^-e sum_k binom(-e, k) (alpha/beta)^k h^k
    std::vector<LocalizedFunction> factor(order, LocalizedFunction(vars));
    LocalizedFunction coef = LocalizedFunction(Poly(vars, 1));
    for (int i = 0; i < e; ++i) coef = coef.divideBy(beta);
    Rational binom = 1;
    for (int k = 0; k < order; ++k) {
      factor[k] = coef * binom;
      binom = binom * Rational(-e - k) / Rational(k + 1);
      coef = coef.divideBy(beta) * alpha;
    }
    std::vector<LocalizedFunction> next(order, LocalizedFunction(vars));
    for (int i = 0; i < order; ++i)
      for (int j = 0; i + j < order; ++j)
        if (!series[i].isZero() && !factor[j].isZero()) next[i + j] += series[i] * factor[j];
    series = std::move(next);
  }
  // Pole factor h^-order.
  return series[order - 1];
}

}  // namespace qfourier
