#include "qfourier/fourier.hpp"

#include <algorithm>
#include <functional>

#include "qfourier/errors.hpp"
#include "qfourier/numeric.hpp"
#include "qfourier/shiftops.hpp"

namespace qfourier {

namespace {

std::string classString(const std::vector<int>& b) {
  std::string s = "[";
  for (size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i]);
  return s + "]";
}

// All integer vectors with entries in [lo, hi] and entry sum <= maxSum.
void forEachBoxVector(int n, int lo, int hi, int maxSum, const std::function<void(const std::vector<int>&)>& body) {
  std::vector<int> v(n, lo);
  while (true) {
    int s = 0;
    for (int x : v) s += x;
    if (s <= maxSum) body(v);
    int a = 0;
    while (a < n && v[a] == hi) v[a++] = lo;
    if (a == n) return;
    ++v[a];
  }
}

Rational factorial(int k) {
  Rational f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// kappa with every lambda sent to zero; the value must be c z^m.
bool pointValue(const LocalizedFunction& f, int l, Rational& c, int& m) {
  if (f.isZero()) {
    c = 0;
    m = 0;
    return true;
  }
  const VarsPtr& vars = f.vars();
  const int zi = l;
  Poly num = f.numerator();
  Rational coeff = 0;
  int zpow = 0, found = 0;
  for (auto& [mono, x] : num.terms()) {
    bool pure = true;
    for (int a = 0; a < l; ++a) pure = pure && mono[a] == 0;
    if (!pure) continue;
    coeff = x;
    zpow = mono[zi];
    ++found;
  }
  if (found > 1) return false;
  if (found == 0) {
    c = 0;
    m = 0;
    return true;
  }
  for (auto& [lin, e] : f.denominatorFactors()) {
    Monomial zm(vars->size(), 0);
    zm[zi] = 1;
    Rational a = lin.coefficient(zm);
    if (a == 0 || lin.constantTerm() != 0) return false;
    for (int i = 0; i < e; ++i) coeff /= a;
    zpow -= e;
  }
  c = coeff;
  m = zpow;
  return true;
}

}  // namespace

ZLaurent kirwanLaurent(const QuotientData& quotient, const LocalizedFunction& f) {
  const QuotientRing& ring = quotient.ring;
  if (f.isZero()) return ZLaurent(ring);
  const int l = quotient.glsm.l();
  const VarsPtr& vars = f.vars();
  if (!sameVars(vars, equivariantVars(l))) fail(ErrorKind::Input, "Kirwan image needs a function of lambda and z");
  auto parts = f.numerator().collect(l);
  ZLaurent out(ring);
  for (size_t k = 0; k < parts.size(); ++k)
    if (!parts[k].isZero()) out += ZLaurent::constant(quotient.kirwan(parts[k]), static_cast<int>(k));
  for (auto& [lin, e] : f.denominatorFactors()) {
    auto lp = lin.collect(l);
    Rational c = lp.size() > 1 ? lp[1].constantTerm() : Rational(0);
    if (c == 0) fail(ErrorKind::IllDefined, "factor " + lin.str() + " has no z-part");
    if (lp[0].constantTerm() != 0) fail(ErrorKind::IllDefined, "factor " + lin.str() + " is not homogeneous");
    ZLaurent x = ZLaurent::constant(quotient.kirwan(lp[0]));
    x += ZLaurent::constant(ring.scalar(c), 1);
    ZLaurent inv = nilpotentInverse(x);
    for (int i = 0; i < e; ++i) out *= inv;
  }
  return out;
}

NovikovSeries discreteFT(const LocalizedFunction& j, const QuotientData& quotient, int order) {
  if (order < 0) fail(ErrorKind::Input, "order must be nonnegative");
  const QuotientRing& ring = quotient.ring;
  const auto& glsm = quotient.glsm;
  NovikovSeries out(ring, glsm.chamber, order);
  std::vector<RingElement> pre;
  for (int a = 0; a < glsm.l(); ++a) pre.push_back(ring.gen(a));
  out.setPrefactor(pre);
  if (j.isZero()) return out;

  auto classes = quotient.classesUpTo(-order, order);
  std::vector<ZLaurent> coeffs(classes.size());
  std::vector<std::string> errors(classes.size());
  parallelFor(static_cast<int>(classes.size()), [&](int idx) {
    std::vector<int> minus = classes[idx];
    for (auto& x : minus) x = -x;
    try {
      coeffs[idx] = kirwanLaurent(quotient, applyShift(glsm.weights, minus, j));
    } catch (const Error& e) {
      errors[idx] = e.what();
    }
  });
  for (size_t i = 0; i < classes.size(); ++i) {
    if (!errors[i].empty())
      fail(ErrorKind::IllDefined, "transform ill-defined at beta = " + classString(classes[i]) + ": " + errors[i]);
    out.set(classes[i], coeffs[i]);
  }
  return out;
}

SupportReport supportCheck(const NovikovSeries& series, const QuotientData& quotient) {
  SupportReport rep;
  RatMatrix gens;
  for (auto& g : quotient.moriGenerators()) gens.push_back(g);
  for (auto& [d, c] : series.terms()) {
    if (c.isZero()) continue;
    std::vector<Rational> v;
    for (int x : d) v.push_back(frac(x, series.latticeDenominator()));
    if (!inCone(gens, v)) {
      rep.ok = false;
      rep.violations.push_back(d);
    }
  }
  return rep;
}

MirrorResult tautologicalMirror(int n, const LocalizedFunction& j, int order) {
  if (n < 1) fail(ErrorKind::Input, "tautological mirror needs n >= 1");
  GlsmData g;
  for (int i = 0; i < n; ++i) {
    std::vector<int> row(n, 0);
    row[i] = 1;
    g.weights.push_back(row);
  }
  g.chamber.assign(n, 1);
  QuotientData q = quotientPresentation(g);
  NovikovSeries f = discreteFT(j, q, order);
  f.setPrefactor({});
  NovikovSeries lg = logSeries(f);
  NovikovSeries w(lg.ring(), lg.omega(), lg.order());
  for (auto& [d, c] : lg.terms()) w.set(d, c.shiftZ(1));

  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("S" + std::to_string(i + 1));
  names.push_back("z");
  VarsPtr vars = makeVars(names);
  Poly pot(vars);
  bool polynomial = true;
  for (auto& [d, c] : w.terms()) {
    for (auto& [k, x] : c.coeffs()) {
      if (k < 0 || std::any_of(d.begin(), d.end(), [](int e) { return e < 0; })) {
        polynomial = false;
        continue;
      }
      Monomial m(d.begin(), d.end());
      m.push_back(k);
      pot += Poly::monomial(vars, m, x.constantPart());
    }
  }
  MirrorResult r{f, w, polynomial, polynomial ? pot : Poly(vars)};
  return r;
}

NovikovSeries projectiveMirrorSeries(int n, int order) {
  if (n < 1 || order < 0) fail(ErrorKind::Input, "projectiveMirrorSeries needs n >= 1 and order >= 0");
  IntMatrix id(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) id[i][i] = 1;
  QuotientRing pt = QuotientRing::point();
  NovikovSeries out(pt, std::vector<Rational>(n, 1), order);
  VarsPtr vars = equivariantVars(n);
  LocalizedFunction one(Poly(vars, 1));
  std::vector<std::vector<int>> gammas;
  forEachBoxVector(n, -1, order, order, [&](const std::vector<int>& g) { gammas.push_back(g); });
  std::vector<ZLaurent> vals(gammas.size());
  std::vector<int> bad(gammas.size(), 0);
  parallelFor(static_cast<int>(gammas.size()), [&](int idx) {
    const auto& g = gammas[idx];
    const int k = g[n - 1];
    std::vector<int> minusK(n, -k), minusBeta(n);
    for (int i = 0; i < n; ++i) minusBeta[i] = -(g[i] - k);
    // Q^k coefficient of the equivariant J of P^{n-1}, lifted to C^n.
    LocalizedFunction gk = applyShift(id, minusK, one);
    Rational c;
    int m;
    if (!pointValue(applyShift(id, minusBeta, gk), n, c, m)) {
      bad[idx] = 1;
      return;
    }
    vals[idx] = c == 0 ? ZLaurent(pt) : ZLaurent::constant(pt.scalar(c), m);
  });
  for (size_t i = 0; i < gammas.size(); ++i) {
    if (bad[i]) fail(ErrorKind::IllDefined, "Kirwan image not a monomial at " + classString(gammas[i]));
    out.set(gammas[i], vals[i]);
  }
  return out;
}

bool chainRuleCheck(int n, int order) {
  NovikovSeries f2 = projectiveMirrorSeries(n, order);
  IntMatrix id(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) id[i][i] = 1;
  VarsPtr vars = equivariantVars(n);
  LocalizedFunction one(Poly(vars, 1));
  QuotientRing pt = f2.ring();
  bool ok = true;
  forEachBoxVector(n, -1, order, order, [&](const std::vector<int>& g) {
    if (!ok) return;
    ZLaurent expected(pt);
    if (std::all_of(g.begin(), g.end(), [](int x) { return x >= 0; })) {
      Rational c = 1;
      int s = 0;
      for (int x : g) {
        c /= factorial(x);
        s += x;
      }
      expected = ZLaurent::constant(pt.scalar(c), -s);
    }
    if (!sameLaurent(f2.at(g), expected)) ok = false;
    // Second representative: beta_1 = 0.
    const int k = g[0];
    std::vector<int> minusK(n, -k), minusBeta(n);
    for (int i = 0; i < n; ++i) minusBeta[i] = -(g[i] - k);
    Rational c;
    int m;
    if (!pointValue(applyShift(id, minusBeta, applyShift(id, minusK, one)), n, c, m)) {
      ok = false;
      return;
    }
    ZLaurent alt = c == 0 ? ZLaurent(pt) : ZLaurent::constant(pt.scalar(c), m);
    if (!sameLaurent(alt, expected)) ok = false;
  });
  return ok;
}

}  // namespace qfourier
