#include "qfourier/poly.hpp"

#include <algorithm>
#include <sstream>

#include "qfourier/errors.hpp"

namespace qfourier {

std::string toString(const Rational& r) { return r.get_str(); }

Rational frac(long a, long b) {
  if (b == 0) fail(ErrorKind::Input, "zero denominator");
  Rational r(a);
  r /= b;
  return r;
}

Rational parseRational(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) fail(ErrorKind::Input, "bad rational '" + s + "'");
  if (r.get_den() == 0) fail(ErrorKind::Input, "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

int Vars::find(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

int Vars::index(const std::string& name) const {
  int i = find(name);
  if (i < 0) fail(ErrorKind::Input, "unknown generator '" + name + "'");
  return i;
}

VarsPtr makeVars(std::vector<std::string> names, std::vector<int> degrees) {
  if (degrees.empty()) degrees.assign(names.size(), 2);
  if (degrees.size() != names.size()) fail(ErrorKind::Input, "degree list length mismatch");
  for (int d : degrees)
    if (d % 2 != 0) fail(ErrorKind::Input, "generator degrees must be even");
  auto v = std::make_shared<Vars>();
  v->names = std::move(names);
  v->degrees = std::move(degrees);
  return v;
}

bool sameVars(const VarsPtr& a, const VarsPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

namespace {

const VarsPtr& unify(const VarsPtr& a, const VarsPtr& b) {
  if (!a) return b;
  if (!b) return a;
  if (!sameVars(a, b)) fail(ErrorKind::Input, "polynomials over different generators");
  return a;
}

}  // namespace

Poly::Poly(VarsPtr vars) : vars_(std::move(vars)) {}

Poly::Poly(VarsPtr vars, const Rational& c) : vars_(std::move(vars)) {
  if (c != 0) terms_[Monomial(vars_ ? vars_->size() : 0, 0)] = c;
}

Poly Poly::var(VarsPtr vars, int i) {
  Monomial m(vars->size(), 0);
  m.at(i) = 1;
  return monomial(std::move(vars), m);
}

Poly Poly::var(VarsPtr vars, const std::string& name) {
  int i = vars->index(name);
  return var(std::move(vars), i);
}

Poly Poly::monomial(VarsPtr vars, const Monomial& m, const Rational& c) {
  Poly p(std::move(vars));
  if (c != 0) p.terms_[m] = c;
  return p;
}

Poly Poly::linear(VarsPtr vars, const std::vector<Rational>& a, const Rational& c) {
  Poly p(vars, c);
  for (int i = 0; i < static_cast<int>(a.size()); ++i)
    if (a[i] != 0) p += var(vars, i) * a[i];
  return p;
}

bool Poly::isConstant() const {
  return terms_.empty() || (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(),
                                                            terms_.begin()->first.end(),
                                                            [](int e) { return e == 0; }));
}

Rational Poly::constantTerm() const {
  if (!vars_) return 0;
  return coefficient(Monomial(vars_->size(), 0));
}

Rational Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Poly::monomialDegree(const Monomial& m) const {
  int d = 0;
  for (size_t i = 0; i < m.size(); ++i) d += m[i] * vars_->degrees[i];
  return d;
}

int Poly::degree() const {
  int d = 0;
  bool first = true;
  for (auto& [m, c] : terms_) {
    int e = monomialDegree(m);
    if (first || e > d) d = e;
    first = false;
  }
  return d;
}

int Poly::lowDegree() const {
  int d = 0;
  bool first = true;
  for (auto& [m, c] : terms_) {
    int e = monomialDegree(m);
    if (first || e < d) d = e;
    first = false;
  }
  return d;
}

bool Poly::isHomogeneous() const { return terms_.empty() || degree() == lowDegree(); }

int Poly::degreeIn(int var) const {
  int d = 0;
  for (auto& [m, c] : terms_) d = std::max(d, m[var]);
  return d;
}

Poly Poly::homogeneousPart(int deg) const {
  Poly r(vars_);
  for (auto& [m, c] : terms_)
    if (monomialDegree(m) == deg) r.terms_.emplace(m, c);
  return r;
}

void Poly::addTerm(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  vars_ = unify(vars_, o.vars_);
  for (auto& [m, c] : o.terms_) addTerm(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  vars_ = unify(vars_, o.vars_);
  for (auto& [m, c] : o.terms_) addTerm(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r(unify(a.vars_, b.vars_));
  Monomial m;
  for (auto& [ma, ca] : a.terms_) {
    for (auto& [mb, cb] : b.terms_) {
      m.resize(ma.size());
      for (size_t i = 0; i < ma.size(); ++i) m[i] = ma[i] + mb[i];
      r.addTerm(m, ca * cb);
    }
  }
  return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (terms_.empty() && o.terms_.empty()) return true;
  return sameVars(vars_, o.vars_) && terms_ == o.terms_;
}

Poly Poly::pow(unsigned k) const {
  Poly result(vars_, 1);
  Poly base = *this;
  while (k) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

Poly Poly::derivative(int var) const {
  Poly r(vars_);
  for (auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial n = m;
    n[var] -= 1;
    r.addTerm(n, c * m[var]);
  }
  return r;
}

Poly Poly::substitute(const std::vector<Poly>& images) const {
  if (!vars_ || images.size() != static_cast<size_t>(vars_->size()))
    fail(ErrorKind::Input, "substitution arity mismatch");
  VarsPtr target;
  for (auto& p : images) target = unify(target, p.vars());
  Poly r(target);
  std::vector<std::vector<Poly>> powers(images.size());
  for (auto& [m, c] : terms_) {
    Poly t(target, c);
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(Poly(target, 1));
      while (static_cast<int>(pw.size()) <= m[i]) pw.push_back(pw.back() * images[i]);
      t *= pw[m[i]];
    }
    r += t;
  }
  return r;
}

Poly Poly::embed(const VarsPtr& target) const {
  std::vector<Poly> images;
  for (auto& n : vars_->names) images.push_back(var(target, n));
  Poly r = substitute(images);
  if (r.isZero()) return Poly(target);
  return r;
}

std::vector<Poly> Poly::collect(int var) const {
  std::vector<Poly> out(degreeIn(var) + 1, Poly(vars_));
  for (auto& [m, c] : terms_) {
    Monomial n = m;
    n[var] = 0;
    out[m[var]].addTerm(n, c);
  }
  return out;
}

bool Poly::divideLinear(const Poly& linear, int var, Poly& quotient) const {
  auto lc = linear.collect(var);
  if (lc.size() != 2 || !lc[1].isConstant() || lc[1].isZero())
    fail(ErrorKind::Input, "divideLinear needs a form of degree one in the chosen generator");
  Rational a = lc[1].constantTerm();
  Poly rho = -lc[0] * Rational(1 / a);  // root: x_var = rho
  auto nk = collect(var);
  int k = static_cast<int>(nk.size()) - 1;
  if (isZero()) {
    quotient = Poly(linear.vars());
    return true;
  }
  Poly x = Poly::var(vars_, var);
  std::vector<Poly> q(std::max(k, 0), Poly(vars_));
  Poly carry(vars_);
  for (int i = k; i >= 1; --i) {
    carry = nk[i] + rho * carry;
    q[i - 1] = carry;
  }
  Poly rem = nk[0] + rho * carry;
  if (!rem.isZero()) return false;
  Poly out(vars_);
  Poly xp(vars_, 1);
  for (int i = 0; i < k; ++i) {
    out += q[i] * xp;
    xp *= x;
  }
  quotient = out * Rational(1 / a);
  return true;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational mag = abs(c);
    bool unit = std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    bool printed = false;
    if (mag != 1 || unit) {
      os << mag.get_str();
      printed = true;
    }
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (printed) os << "*";
      os << vars_->names[i];
      if (m[i] > 1) os << "^" << m[i];
      printed = true;
    }
  }
  return os.str();
}

}  // namespace qfourier
