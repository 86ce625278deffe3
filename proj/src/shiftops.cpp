#include "qfourier/shiftops.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "qfourier/errors.hpp"

namespace qfourier {

namespace {

int pairInt(const std::vector<int>& w, const std::vector<int>& k) {
  if (w.size() != k.size()) fail(ErrorKind::Input, "cocharacter has wrong rank");
  int s = 0;
  for (size_t a = 0; a < w.size(); ++a) s += w[a] * k[a];
  return s;
}

Poly weightForm(const VarsPtr& vars, const std::vector<int>& w) {
  Poly p(vars);
  for (size_t a = 0; a < w.size(); ++a) p += Poly::var(vars, static_cast<int>(a)) * Rational(w[a]);
  return p;
}

int rankOf(const IntMatrix& weights) {
  if (weights.empty() || weights[0].empty()) fail(ErrorKind::Input, "empty weight matrix");
  return static_cast<int>(weights[0].size());
}

// (lambda_a - k_a z) images for the shift lambda -> lambda - k z.
std::vector<Poly> shiftImages(const VarsPtr& vars, const std::vector<int>& k) {
  const int l = static_cast<int>(k.size());
  Poly z = Poly::var(vars, l);
  std::vector<Poly> images;
  for (int a = 0; a < l; ++a) images.push_back(Poly::var(vars, a) - z * Rational(k[a]));
  images.push_back(z);
  return images;
}

// Names for the theta operators, parallel to equivariantVars(l).
VarsPtr thetaVars(int l) {
  std::vector<std::string> names;
  if (l == 1) names.push_back("th");
  else
    for (int a = 0; a < l; ++a) names.push_back("th" + std::to_string(a + 1));
  names.push_back("z");
  return makeVars(names);
}

std::string qMonomial(const std::vector<int>& m) {
  std::ostringstream os;
  bool first = true;
  for (size_t a = 0; a < m.size(); ++a) {
    if (m[a] == 0) continue;
    if (!first) os << "*";
    first = false;
    os << "q";
    if (m.size() > 1) os << a + 1;
    if (m[a] != 1) os << "^" << m[a];
  }
  return os.str();
}

}  // namespace

ShiftOperator shiftOperator(const IntMatrix& weights, const std::vector<int>& k) {
  const int l = rankOf(weights);
  if (static_cast<int>(k.size()) != l) fail(ErrorKind::Input, "cocharacter has wrong rank");
  VarsPtr vars = equivariantVars(l);
  Poly z = Poly::var(vars, l);
  Poly num(vars, 1);
  std::vector<Poly> den;
  for (auto& w : weights) {
    const int m = pairInt(w, k);
    Poly u = weightForm(vars, w);
    for (int c = 0; c < m; ++c) num *= u - z * Rational(c);
    for (int c = 1; c <= -m; ++c) den.push_back(u + z * Rational(c));
  }
  return {weights, k, LocalizedFunction::fraction(num, den)};
}

LocalizedFunction applyShift(const IntMatrix& weights, const std::vector<int>& k, const LocalizedFunction& f) {
  ShiftOperator s = shiftOperator(weights, k);
  if (f.isZero()) return LocalizedFunction(equivariantVars(rankOf(weights)));
  if (!sameVars(f.vars(), s.prefactor.vars()))
    fail(ErrorKind::Input, "shift operand must be a function of the equivariant parameters and z");
  return s.prefactor * f.substitute(shiftImages(f.vars(), k));
}

LocalizedFunction randomLocalized(int l, unsigned seed) {
  VarsPtr vars = equivariantVars(l);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coef(-4, 4), count(0, 2), deg(0, 2);
  const int nv = vars->size();
  Poly num(vars);
  const int terms = 1 + count(rng) * 2;
  for (int t = 0; t < terms; ++t) {
    Monomial m(nv, 0);
    int d = deg(rng);
    for (int i = 0; i < d; ++i) m[std::uniform_int_distribution<int>(0, nv - 1)(rng)] += 1;
    num += Poly::monomial(vars, m, frac(coef(rng), 1 + std::uniform_int_distribution<int>(0, 2)(rng)));
  }
  if (num.isZero()) num = Poly(vars, 1);
  std::vector<Poly> den;
  const int factors = count(rng);
  for (int f = 0; f < factors; ++f) {
    std::vector<Rational> a(nv);
    bool nonzero = false;
    for (auto& x : a) {
      x = coef(rng);
      nonzero = nonzero || x != 0;
    }
    if (!nonzero) a[0] = 1;
    den.push_back(Poly::linear(vars, a, coef(rng)));
  }
  return LocalizedFunction::fraction(num, den);
}

bool checkCommutation(const IntMatrix& weights, const std::vector<int>& k, int a, int panel, unsigned seed) {
  const int l = rankOf(weights);
  if (a < 0 || a >= l) fail(ErrorKind::Input, "parameter index out of range");
  VarsPtr vars = equivariantVars(l);
  Poly lam = Poly::var(vars, a);
  Poly shifted = lam - Poly::var(vars, l) * Rational(k.at(a));
  for (int i = 0; i < panel; ++i) {
    LocalizedFunction f = randomLocalized(l, seed + 7919u * i);
    LocalizedFunction lhs = applyShift(weights, k, LocalizedFunction(lam) * f);
    LocalizedFunction rhs = LocalizedFunction(shifted) * applyShift(weights, k, f);
    if (lhs != rhs) return false;
  }
  return true;
}

std::string DifferenceRelation::str() const {
  std::ostringstream os;
  os << "(" << positivePart.str() << ") - S^[";
  for (size_t a = 0; a < k.size(); ++a) os << (a ? "," : "") << k[a];
  os << "](" << negativePart.str() << ")";
  return os.str();
}

DifferenceRelation gkzRelation(const IntMatrix& weights, const std::vector<int>& k) {
  const int l = rankOf(weights);
  if (static_cast<int>(k.size()) != l) fail(ErrorKind::Input, "cocharacter has wrong rank");
  if (std::all_of(k.begin(), k.end(), [](int x) { return x == 0; }))
    fail(ErrorKind::Input, "GKZ relation needs a nonzero cocharacter");
  VarsPtr vars = equivariantVars(l);
  Poly z = Poly::var(vars, l);
  Poly pos(vars, 1), neg(vars, 1);
  for (auto& w : weights) {
    const int m = pairInt(w, k);
    Poly u = weightForm(vars, w);
    for (int c = 0; c < m; ++c) pos *= u - z * Rational(c);
    for (int c = 0; c < -m; ++c) neg *= u - z * Rational(c);
  }
  if (applyShift(weights, k, LocalizedFunction(neg)) != LocalizedFunction(pos))
    fail(ErrorKind::Numeric, "GKZ relation failed verification");
  return {k, pos, neg};
}

DifferentialOperator::DifferentialOperator(int l) : l_(l) {}

void DifferentialOperator::add(const Exponent& m, const Poly& p) {
  if (static_cast<int>(m.size()) != l_) fail(ErrorKind::Input, "q-shift has wrong rank");
  if (p.isZero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, p);
    return;
  }
  it->second += p;
  if (it->second.isZero()) terms_.erase(it);
}

std::string DifferentialOperator::str() const {
  if (terms_.empty()) return "0";
  VarsPtr th = thetaVars(l_);
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, p] = *it;
    Poly t = p.substitute([&] {
      std::vector<Poly> images;
      for (int i = 0; i < th->size(); ++i) images.push_back(Poly::var(th, i));
      return images;
    }());
    bool negative = t.terms().size() == 1 && t.terms().begin()->second < 0;
    if (negative) t = -t;
    std::string q = qMonomial(m);
    std::string body;
    if (q.empty()) body = t.str();
    else if (t == Poly(th, 1)) body = q;
    else if (t.terms().size() == 1) body = q + "*" + t.str();
    else body = q + "*(" + t.str() + ")";
    if (first) os << (negative ? "-" : "") << body;
    else os << (negative ? " - " : " + ") << body;
    first = false;
  }
  return os.str();
}

DifferentialOperator toDifferential(const DifferenceRelation& rel) {
  DifferentialOperator op(static_cast<int>(rel.k.size()));
  op.add(rel.k, rel.negativePart);
  op.add(std::vector<int>(rel.k.size(), 0), -rel.positivePart);
  return op;
}

NovikovSeries applyDifferential(const DifferentialOperator& op, const NovikovSeries& s) {
  const int l = op.rank();
  if (l != s.rank()) fail(ErrorKind::Input, "operator and series have different ranks");
  const int den = s.latticeDenominator();
  Rational m = 0;
  for (auto& [k, p] : op.terms()) {
    Rational pr = 0;
    for (int a = 0; a < l; ++a) pr += s.omega()[a] * k[a];
    m = std::max(m, Rational(abs(pr)));
  }
  if (m > 0 && s.order() <= m)
    fail(ErrorKind::Truncation, "series order " + s.order().get_str() + " too low for an operator of q-order " +
                                    m.get_str());
  NovikovSeries out(s.ring(), s.omega(), s.order() - m, den);
  out.setPrefactor(s.prefactor());
  const QuotientRing& ring = s.ring();
  for (auto& [d, c] : s.terms()) {
    // theta_a on q^{d + P/z}: multiplication by P_a + z d_a.
    std::vector<ZLaurent> theta;
    for (int a = 0; a < l; ++a) {
      ZLaurent t = ZLaurent::constant(ring.scalar(frac(d[a], den)), 1);
      if (s.hasPrefactor()) t += ZLaurent::constant(s.prefactor()[a]);
      theta.push_back(t);
    }
    theta.push_back(ZLaurent::constant(ring.one(), 1));
    for (auto& [k, p] : op.terms()) {
      ZLaurent acc(ring);
      for (auto& [mono, coef] : p.terms()) {
        ZLaurent t = ZLaurent::constant(ring.scalar(coef));
        for (size_t i = 0; i < mono.size(); ++i)
          for (int e = 0; e < mono[i]; ++e) t *= theta[i];
        acc += t;
      }
      NovikovSeries::Exponent e = d;
      for (int a = 0; a < l; ++a) e[a] += k[a] * den;
      out.add(e, acc * c);
    }
  }
  return out;
}

}  // namespace qfourier
