#include "qfourier/bundles.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "qfourier/errors.hpp"

namespace qfourier {

namespace {

// Same polynomial over `target`, matching generators by name.
Poly renameInto(const Poly& x, const VarsPtr& target) {
  Poly out(target);
  if (x.isZero()) return out;
  std::vector<int> map;
  if (x.vars())
    for (auto& name : x.vars()->names) map.push_back(target->index(name));
  for (auto& [m, c] : x.terms()) {
    Monomial t(target->size(), 0);
    for (size_t i = 0; i < m.size(); ++i) t[map[i]] += m[i];
    out += Poly::monomial(target, t, c);
  }
  return out;
}

// Ascending coefficients of the r-th cyclotomic polynomial.
std::vector<Rational> cyclotomic(int r) {
  std::vector<Rational> num(r + 1, 0);
  num[0] = -1;
  num[r] = 1;
  for (int d = 1; d < r; ++d) {
    if (r % d) continue;
    std::vector<Rational> div = cyclotomic(d);
    // Exact division of monic polynomials.
    std::vector<Rational> q(num.size() - div.size() + 1, 0);
    for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
      q[i] = num[i + div.size() - 1];
      for (size_t j = 0; j < div.size(); ++j) num[i + j] -= q[i] * div[j];
    }
    num = q;
  }
  return num;
}

Monomial baseTop(const QuotientRing& base, Rational& integral) {
  const int top = base.topWeight();
  auto mons = base.basisInWeight(top);
  if (mons.empty()) fail(ErrorKind::Input, "base ring has no top class");
  integral = base.integrate(RingElement(base, {{mons[0], 1}}));
  return mons[0];
}

void checkBundle(const BundleData& b) {
  if (!b.base.valid()) fail(ErrorKind::Input, "bundle has no base ring");
  if (b.rank < 1) fail(ErrorKind::Input, "bundle rank must be positive");
  if (static_cast<int>(b.chern.size()) != b.rank) fail(ErrorKind::Input, "need Chern classes c_1..c_r");
  for (auto& c : b.chern)
    if (c.ring() != b.base) fail(ErrorKind::Input, "Chern class outside the base ring");
  if (b.base.ambient()->find("p") >= 0 || b.base.ambient()->find("s") >= 0)
    fail(ErrorKind::Input, "base generators must not be named p or s");
}

Poly relationPoly(const BundleData& b, const VarsPtr& vars) {
  Poly p = Poly::var(vars, 0);
  Poly f = p.pow(b.rank);
  for (int k = 1; k <= b.rank; ++k) f += renameInto(b.chern[k - 1].lift(), vars) * p.pow(b.rank - k);
  return f;
}

}  // namespace

BundleData splitBundle(int baseDim, const std::vector<int>& twists) {
  if (baseDim < 0) fail(ErrorKind::Input, "base dimension must be nonnegative");
  if (twists.empty()) fail(ErrorKind::Input, "bundle needs at least one summand");
  BundleData b;
  b.rank = static_cast<int>(twists.size());
  if (baseDim == 0) {
    b.base = QuotientRing::point();
    for (int k = 0; k < b.rank; ++k) b.chern.push_back(b.base.zero());
    b.baseC1 = b.base.zero();
    return b;
  }
  b.base = QuotientRing::truncated("h", baseDim + 1);
  RingElement h = b.base.gen(0);
  // prod (1 + m_i h), graded pieces.
  std::vector<RingElement> e(b.rank + 1, b.base.zero());
  e[0] = b.base.one();
  for (int t : twists)
    for (int k = b.rank; k >= 1; --k) e[k] += e[k - 1] * h * Rational(t);
  b.chern.assign(e.begin() + 1, e.end());
  b.baseC1 = h * Rational(baseDim + 1);
  return b;
}

std::vector<RingElement> splitChernRoots(const BundleData& bundle, const std::vector<int>& twists) {
  std::vector<RingElement> out;
  for (int t : twists)
    out.push_back(bundle.base.ambient()->size() == 0 ? bundle.base.zero() : bundle.base.gen(0) * Rational(t));
  return out;
}

QuotientRing lerayHirsch(const BundleData& bundle) {
  checkBundle(bundle);
  const QuotientRing& base = bundle.base;
  std::vector<std::string> names{"p"};
  for (auto& n : base.ambient()->names) names.push_back(n);
  std::vector<int> degrees{2};
  for (int d : base.ambient()->degrees) degrees.push_back(d);
  VarsPtr vars = makeVars(names, degrees);
  std::vector<Poly> rels;
  for (auto& r : base.relations()) rels.push_back(renameInto(r, vars));
  rels.push_back(relationPoly(bundle, vars));
  Rational integral;
  Monomial top = baseTop(base, integral);
  Poly topPoly = renameInto(Poly::monomial(base.ambient(), top), vars) * Poly::var(vars, 0).pow(bundle.rank - 1);
  return QuotientRing(vars, rels, QuotientRing::Normalization{topPoly, integral});
}

RingElement QhSvRing::q() const { return ring.gen("s").pow(bundle.rank); }

QhSvRing qhSv(const BundleData& bundle) {
  checkBundle(bundle);
  const QuotientRing& base = bundle.base;
  std::vector<std::string> names{"p"};
  for (auto& n : base.ambient()->names) names.push_back(n);
  names.push_back("s");
  std::vector<int> degrees{2};
  for (int d : base.ambient()->degrees) degrees.push_back(d);
  degrees.push_back(2);
  VarsPtr vars = makeVars(names, degrees);
  std::vector<Poly> rels;
  for (auto& r : base.relations()) rels.push_back(renameInto(r, vars));
  rels.push_back(relationPoly(bundle, vars) - Poly::var(vars, "s").pow(bundle.rank));
  return {bundle, QuotientRing(vars, rels)};
}

QuotientRing qhSvClassical(const BundleData& bundle) { return lerayHirsch(bundle); }

// ---------------------------------------------------------------------------

RootAlgebra::RootAlgebra(const BundleData& bundle)
    : r_(bundle.rank), base_(bundle.base), chern_(bundle.chern), phi_(cyclotomic(bundle.rank)) {
  checkBundle(bundle);
  baseBasis_ = base_.basis();
}

void RootAlgebra::addTerm(Element& e, Key k, const Rational& c) const {
  if (c == 0) return;
  // zeta^r = 1, then reduce modulo the cyclotomic polynomial.
  k.zeta = ((k.zeta % r_) + r_) % r_;
  const int deg = cycloDegree();
  if (k.zeta >= deg) {
    const int shift = k.zeta - deg;
    for (int i = 0; i < deg; ++i) {
      if (phi_[i] == 0) continue;
      Key t = k;
      t.zeta = shift + i;
      addTerm(e, t, -c * phi_[i]);
    }
    return;
  }
  auto [it, inserted] = e.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) e.erase(it);
  }
}

RootAlgebra::Element RootAlgebra::one() const {
  Element e;
  addTerm(e, {0, 0, 0, Monomial(base_.ambient()->size(), 0)}, 1);
  return e;
}

RootAlgebra::Element RootAlgebra::p() const {
  Element e;
  addTerm(e, {1, 0, 0, Monomial(base_.ambient()->size(), 0)}, 1);
  return reduceP(e);
}

RootAlgebra::Element RootAlgebra::s(int k) const {
  Element e;
  addTerm(e, {0, k, 0, Monomial(base_.ambient()->size(), 0)}, 1);
  return e;
}

RootAlgebra::Element RootAlgebra::zeta(int j) const {
  Element e;
  addTerm(e, {0, 0, j, Monomial(base_.ambient()->size(), 0)}, 1);
  return e;
}

RootAlgebra::Element RootAlgebra::fromBase(const RingElement& x) const {
  if (x.ring() != base_) fail(ErrorKind::Input, "element outside the base ring");
  Element e;
  for (auto& [m, c] : x.coeffs()) addTerm(e, {0, 0, 0, m}, c);
  return e;
}

RootAlgebra::Element RootAlgebra::add(const Element& a, const Element& b) const {
  Element e = a;
  for (auto& [k, c] : b) addTerm(e, k, c);
  return e;
}

RootAlgebra::Element RootAlgebra::scale(const Element& a, const Rational& c) const {
  if (c == 0) return {};
  Element e = a;
  for (auto& [k, v] : e) v *= c;
  return e;
}

RootAlgebra::Element RootAlgebra::multiply(const Element& a, const Element& b, bool reduce) const {
  Element e;
  for (auto& [ka, ca] : a) {
    for (auto& [kb, cb] : b) {
      RingElement prod = RingElement(base_, {{ka.base, 1}}) * RingElement(base_, {{kb.base, 1}});
      for (auto& [m, c] : prod.coeffs()) addTerm(e, {ka.p + kb.p, ka.s + kb.s, ka.zeta + kb.zeta, m}, ca * cb * c);
    }
  }
  return reduce ? reduceP(std::move(e)) : e;
}

RootAlgebra::Element RootAlgebra::mul(const Element& a, const Element& b) const { return multiply(a, b, true); }
RootAlgebra::Element RootAlgebra::mulRaw(const Element& a, const Element& b) const { return multiply(a, b, false); }

RootAlgebra::Element RootAlgebra::reduceP(Element e) const {
  // p^r = s^r - c_1 p^{r-1} - ... - c_r, applied from the top p-power down.
  while (true) {
    auto it = std::find_if(e.begin(), e.end(), [&](const auto& kv) { return kv.first.p >= r_; });
    if (it == e.end()) return e;
    Key k = it->first;
    Rational c = it->second;
    e.erase(it);
    Key t = k;
    t.p -= r_;
    t.s += r_;
    addTerm(e, t, c);
    for (int j = 1; j <= r_; ++j) {
      RingElement prod = RingElement(base_, {{k.base, 1}}) * chern_[j - 1];
      for (auto& [m, v] : prod.coeffs()) addTerm(e, {k.p - j, k.s, k.zeta, m}, -c * v);
    }
  }
}

bool RootAlgebra::pFree(const Element& a) const {
  return std::all_of(a.begin(), a.end(), [](const auto& kv) { return kv.first.p == 0; });
}

RootAlgebra::Element RootAlgebra::relation() const {
  Element f;
  const Monomial unit(base_.ambient()->size(), 0);
  addTerm(f, {r_, 0, 0, unit}, 1);
  for (int k = 1; k <= r_; ++k)
    for (auto& [m, c] : chern_[k - 1].coeffs()) addTerm(f, {r_ - k, 0, 0, m}, c);
  addTerm(f, {0, r_, 0, unit}, -1);
  return f;
}

RootAlgebra::Element RootAlgebra::evaluateRelation(const Element& x) const {
  if (!pFree(x)) fail(ErrorKind::Input, "relation evaluated on an element involving p");
  // Horner: ((x + c_1) x + c_2) x + ...
  Element acc = one();
  for (int k = 1; k <= r_; ++k) acc = add(mulRaw(acc, x), fromBase(chern_[k - 1]));
  return add(acc, scale(s(r_), -1));
}

std::vector<Rational> RootAlgebra::cycloInverse(const std::vector<Rational>& c) const {
  const int deg = cycloDegree();
  // Columns: c * zeta^j reduced; solve M x = e_0.
  std::vector<std::vector<Rational>> m(deg, std::vector<Rational>(deg + 1, 0));
  const Monomial unit(base_.ambient()->size(), 0);
  for (int j = 0; j < deg; ++j) {
    Element col;
    for (int i = 0; i < deg; ++i) addTerm(col, {0, 0, i + j, unit}, c[i]);
    for (auto& [k, v] : col) m[k.zeta][j] = v;
  }
  m[0][deg] = 1;
  for (int col = 0; col < deg; ++col) {
    int piv = col;
    while (piv < deg && m[piv][col] == 0) ++piv;
    if (piv == deg) fail(ErrorKind::Singular, "cyclotomic number is zero");
    std::swap(m[piv], m[col]);
    for (int row = 0; row < deg; ++row) {
      if (row == col || m[row][col] == 0) continue;
      Rational f = m[row][col] / m[col][col];
      for (int k = col; k <= deg; ++k) m[row][k] -= f * m[col][k];
    }
  }
  std::vector<Rational> x(deg);
  for (int i = 0; i < deg; ++i) x[i] = m[i][deg] / m[i][i];
  return x;
}

RootAlgebra::Element RootAlgebra::inverse(const Element& a) const {
  if (!pFree(a)) fail(ErrorKind::Input, "inverse needs a p-free element");
  const int deg = cycloDegree();
  std::optional<int> spow;
  std::vector<Rational> unit(deg, 0);
  Element rest;
  for (auto& [k, c] : a) {
    if (base_.monomialWeight(k.base) == 0) {
      if (spow && *spow != k.s) fail(ErrorKind::Singular, "unit part is not a single power of s");
      spow = k.s;
      unit[k.zeta] += c;
    } else {
      addTerm(rest, k, c);
    }
  }
  if (!spow) fail(ErrorKind::Singular, "element has no unit part");
  std::vector<Rational> cinv = cycloInverse(unit);
  Element u;
  const Monomial one0(base_.ambient()->size(), 0);
  for (int i = 0; i < deg; ++i) addTerm(u, {0, -*spow, i, one0}, cinv[i]);
  // a = U (1 + n), n = U^-1 rest nilpotent
  Element n = scale(mulRaw(u, rest), -1);
  Element sum = one(), term = one();
  for (int k = 1; k <= base_.topWeight() + 1; ++k) {
    term = mulRaw(term, n);
    if (term.empty()) break;
    sum = add(sum, term);
  }
  return mulRaw(sum, u);
}

std::string RootAlgebra::str(const Element& a) const {
  if (a.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [k, c] : a) {
    std::vector<std::string> factors;
    if (k.zeta) factors.push_back(k.zeta == 1 ? "zeta" : "zeta^" + std::to_string(k.zeta));
    if (k.s) factors.push_back(k.s == 1 ? "s" : "s^" + std::to_string(k.s));
    if (k.p) factors.push_back(k.p == 1 ? "p" : "p^" + std::to_string(k.p));
    if (base_.monomialWeight(k.base)) factors.push_back(base_.monomialString(k.base));
    Rational mag = abs(c);
    if (first) os << (c < 0 ? "-" : "");
    else os << (c < 0 ? " - " : " + ");
    first = false;
    bool unit = mag == 1 && !factors.empty();
    if (!unit) os << mag.get_str();
    for (size_t i = 0; i < factors.size(); ++i) os << (i == 0 && unit ? "" : "*") << factors[i];
  }
  return os.str();
}

RootDecomposition rootDecomposition(const RootAlgebra& A) {
  using E = RootAlgebra::Element;
  const int r = A.r();
  if (r < 2) fail(ErrorKind::Input, "root decomposition needs rank at least 2");
  RootDecomposition out;
  std::vector<E> chern;
  for (auto& c : A.chern()) chern.push_back(A.fromBase(c));
  // Nilpotency doubles each step; this cap is never reached for valid data.
  const int cap = 4 + 2 * (A.base().topWeight() + 1);
  for (int j = 0; j < r; ++j) {
    E x = A.mulRaw(A.zeta(j), A.s());
    bool done = false;
    for (int it = 0; it <= cap && !done; ++it) {
      E f = A.evaluateRelation(x);
      if (f.empty()) {
        done = true;
        break;
      }
      std::vector<E> pw{A.one()};
      for (int k = 1; k < r; ++k) pw.push_back(A.mulRaw(pw.back(), x));
      E df = A.scale(pw[r - 1], r);
      for (int k = 1; k < r; ++k) df = A.add(df, A.scale(A.mulRaw(chern[k - 1], pw[r - k - 1]), r - k));
      x = A.add(x, A.scale(A.mulRaw(f, A.inverse(df)), -1));
    }
    if (!done) fail(ErrorKind::Numeric, "Newton iteration for root " + std::to_string(j) + " did not terminate");
    out.roots.push_back(x);
  }

  E prod = A.one();
  for (auto& x : out.roots) prod = A.mulRaw(prod, A.add(A.p(), A.scale(x, -1)));
  out.productMatches = A.equal(prod, A.relation());

  for (int j = 0; j < r; ++j) {
    E num = A.one(), den = A.one();
    for (int k = 0; k < r; ++k) {
      if (k == j) continue;
      num = A.mul(num, A.add(A.p(), A.scale(out.roots[k], -1)));
      den = A.mulRaw(den, A.add(out.roots[j], A.scale(out.roots[k], -1)));
    }
    out.idempotents.push_back(A.mul(num, A.inverse(den)));
  }
  out.orthogonal = out.complete = out.eigen = true;
  E sum = A.zero();
  for (int i = 0; i < r; ++i) {
    const E& ei = out.idempotents[i];
    sum = A.add(sum, ei);
    for (int j = 0; j < r; ++j) {
      E prodij = A.mul(ei, out.idempotents[j]);
      if (!A.equal(prodij, i == j ? ei : A.zero())) out.orthogonal = false;
    }
    if (!A.equal(A.mul(A.p(), ei), A.mul(out.roots[i], ei))) out.eigen = false;
  }
  out.complete = A.equal(sum, A.one());
  return out;
}

EulerSpectrum eulerSpectrum(const BundleData& bundle, std::complex<double> q) {
  checkBundle(bundle);
  if (q == 0.0) fail(ErrorKind::Input, "eulerSpectrum needs q != 0");
  const QuotientRing& base = bundle.base;
  const int r = bundle.rank;
  const auto basis = base.basis();
  const int nb = static_cast<int>(basis.size());
  const int dim = r * nb;
  auto baseIndex = [&](const Monomial& m) {
    return static_cast<int>(std::find(basis.begin(), basis.end(), m) - basis.begin());
  };
  using Vec = std::vector<std::complex<double>>;  // index i * nb + b for p^i * basis[b]
  // Multiplication by p with p^r = q - c_1 p^{r-1} - ... - c_r.
  auto timesP = [&](const Vec& v) {
    Vec w(dim, 0.0);
    for (int i = 0; i < r; ++i) {
      for (int b = 0; b < nb; ++b) {
        std::complex<double> c = v[i * nb + b];
        if (c == 0.0) continue;
        if (i + 1 < r) {
          w[(i + 1) * nb + b] += c;
          continue;
        }
        w[b] += c * q;
        for (int k = 1; k <= r; ++k) {
          RingElement prod = RingElement(base, {{basis[b], 1}}) * bundle.chern[k - 1];
          for (auto& [m, x] : prod.coeffs()) w[(r - k) * nb + baseIndex(m)] -= c * x.get_d();
        }
      }
    }
    return w;
  };
  auto timesBase = [&](const Vec& v, const RingElement& y) {
    Vec w(dim, 0.0);
    for (int i = 0; i < r; ++i)
      for (int b = 0; b < nb; ++b) {
        std::complex<double> c = v[i * nb + b];
        if (c == 0.0) continue;
        RingElement prod = RingElement(base, {{basis[b], 1}}) * y;
        for (auto& [m, x] : prod.coeffs()) w[i * nb + baseIndex(m)] += c * x.get_d();
      }
    return w;
  };
  const RingElement shiftClass = bundle.chern[0] + bundle.baseC1;
  Eigen::MatrixXcd mat(dim, dim);
  for (int col = 0; col < dim; ++col) {
    Vec e(dim, 0.0);
    e[col] = 1.0;
    Vec a = timesP(e), b = timesBase(e, shiftClass);
    for (int row = 0; row < dim; ++row) mat(row, col) = static_cast<double>(r) * a[row] + b[row];
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(mat, false);
  if (solver.info() != Eigen::Success) fail(ErrorKind::Numeric, "eigenvalue solver failed");

  EulerSpectrum out;
  for (int i = 0; i < dim; ++i) out.eigenvalues.push_back(solver.eigenvalues()[i]);
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), [](auto a, auto b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  const std::complex<double> root = std::pow(q, 1.0 / r);
  for (int j = 0; j < r; ++j)
    out.centers.push_back(static_cast<double>(r) * root * std::polar(1.0, 2 * M_PI * j / r));
  out.clusters.assign(r, {});
  for (int i = 0; i < dim; ++i) {
    int best = 0;
    for (int j = 1; j < r; ++j)
      if (std::abs(out.eigenvalues[i] - out.centers[j]) < std::abs(out.eigenvalues[i] - out.centers[best])) best = j;
    out.clusters[best].push_back(i);
    out.spread = std::max(out.spread, std::abs(out.eigenvalues[i] - out.centers[best]));
  }
  out.gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) out.gap = std::min(out.gap, std::abs(out.centers[i] - out.centers[j]));
  if (r == 1) out.gap = 0;
  return out;
}

}  // namespace qfourier
