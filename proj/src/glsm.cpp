#include "qfourier/glsm.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <random>

#include "qfourier/errors.hpp"

namespace qfourier {

namespace {

void forEachSubset(int n, int k, const std::function<void(const std::vector<int>&)>& body) {
  std::vector<int> s(k);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == k) {
      body(s);
      return;
    }
    for (int i = start; i <= n - (k - depth); ++i) {
      s[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  if (k >= 0 && k <= n) rec(0, 0);
}

Rational dot(const std::vector<int>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += b[i] * a[i];
  return s;
}

// Solves c * rows = omega for independent rows; false if inconsistent.
bool solveCombination(const RatMatrix& rows, const std::vector<Rational>& omega, std::vector<Rational>& c) {
  const int k = static_cast<int>(rows.size());
  const int l = static_cast<int>(omega.size());
  if (k == 0) {
    c.clear();
    return std::all_of(omega.begin(), omega.end(), [](const Rational& x) { return x == 0; });
  }
  bool found = false;
  forEachSubset(l, k, [&](const std::vector<int>& cols) {
    if (found) return;
    RatMatrix sq(k, std::vector<Rational>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sq[i][j] = rows[i][cols[j]];
    if (determinant(sq) == 0) return;
    RatMatrix inv = inverse(sq);
    // c * sq = omega|cols
    std::vector<Rational> sol(k, 0);
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < k; ++i) sol[j] += omega[cols[i]] * inv[i][j];
    for (int a = 0; a < l; ++a) {
      Rational v = 0;
      for (int i = 0; i < k; ++i) v += sol[i] * rows[i][a];
      if (v != omega[a]) return;
    }
    c = sol;
    found = true;
  });
  return found;
}

std::vector<Rational> randomMu(int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-997, 997), den(1, 97);
  std::vector<Rational> mu(n);
  for (auto& m : mu) {
    int a = 0;
    while (a == 0) a = num(rng);
    m = frac(a, den(rng));
  }
  return mu;
}

std::string indexedName(const std::string& base, int i) { return base + std::to_string(i + 1); }

}  // namespace

void GlsmData::validate() {
  if (weights.empty()) fail(ErrorKind::Input, "weight matrix is empty");
  const int L = l();
  if (L == 0) fail(ErrorKind::Input, "weight rows are empty");
  for (auto& row : weights)
    if (static_cast<int>(row.size()) != L) fail(ErrorKind::Input, "weight rows have different lengths");
  if (static_cast<int>(chamber.size()) != L) fail(ErrorKind::Input, "chamber vector has wrong length");
  if (matrixRank(toRational(weights)) != L) fail(ErrorKind::Input, "weight matrix does not have full rank");
  if (coordinateNames.empty())
    for (int i = 0; i < n(); ++i) coordinateNames.push_back(indexedName("x", i));
  if (parameterNames.empty()) {
    if (L == 1) parameterNames = {"p"};
    else
      for (int a = 0; a < L; ++a) parameterNames.push_back(indexedName("p", a));
  }
  if (static_cast<int>(coordinateNames.size()) != n() || static_cast<int>(parameterNames.size()) != L)
    fail(ErrorKind::Input, "name lists have wrong length");
}

VarsPtr equivariantVars(int l) {
  static std::mutex mu;
  static std::map<int, VarsPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(l);
  if (it != cache.end()) return it->second;
  std::vector<std::string> names;
  if (l == 1) names.push_back("l");
  else
    for (int a = 0; a < l; ++a) names.push_back(indexedName("l", a));
  names.push_back("z");
  return cache[l] = makeVars(names);
}

Rational determinant(RatMatrix m) {
  const int n = static_cast<int>(m.size());
  Rational det = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (m[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[c][c];
      for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

RatMatrix inverse(const RatMatrix& a) {
  const int n = static_cast<int>(a.size());
  RatMatrix m = a, inv(n, std::vector<Rational>(n, 0));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (m[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) fail(ErrorKind::Singular, "matrix is singular");
    std::swap(m[piv], m[c]);
    std::swap(inv[piv], inv[c]);
    Rational f = 1 / m[c][c];
    for (int k = 0; k < n; ++k) {
      m[c][k] *= f;
      inv[c][k] *= f;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      Rational g = m[r][c];
      for (int k = 0; k < n; ++k) {
        m[r][k] -= g * m[c][k];
        inv[r][k] -= g * inv[c][k];
      }
    }
  }
  return inv;
}

int matrixRank(RatMatrix m) {
  if (m.empty()) return 0;
  const int rows = static_cast<int>(m.size()), cols = static_cast<int>(m[0].size());
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[piv], m[rank]);
    for (int r = rank + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[rank][c];
      for (int k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

RatMatrix toRational(const IntMatrix& m) {
  RatMatrix r;
  for (auto& row : m) r.emplace_back(row.begin(), row.end());
  return r;
}

RatMatrix selectRows(const IntMatrix& rows, const std::vector<int>& subset) {
  RatMatrix r;
  for (int i : subset) r.emplace_back(rows.at(i).begin(), rows.at(i).end());
  return r;
}

bool inCone(const RatMatrix& rows, const std::vector<Rational>& omega) {
  if (std::all_of(omega.begin(), omega.end(), [](const Rational& x) { return x == 0; })) return true;
  const int n = static_cast<int>(rows.size());
  const int l = static_cast<int>(omega.size());
  // Caratheodory: a point of the cone lies in the cone of independent generators.
  for (int k = 1; k <= std::min(n, l); ++k) {
    bool hit = false;
    forEachSubset(n, k, [&](const std::vector<int>& s) {
      if (hit) return;
      RatMatrix sub;
      for (int i : s) sub.push_back(rows[i]);
      if (matrixRank(sub) != k) return;
      std::vector<Rational> c;
      if (!solveCombination(sub, omega, c)) return;
      if (std::all_of(c.begin(), c.end(), [](const Rational& x) { return x >= 0; })) hit = true;
    });
    if (hit) return true;
  }
  return false;
}

bool onWall(const IntMatrix& weights, const std::vector<Rational>& omega) {
  const int l = static_cast<int>(omega.size());
  if (l == 0) return false;
  if (std::all_of(omega.begin(), omega.end(), [](const Rational& x) { return x == 0; })) return true;
  bool wall = false;
  forEachSubset(static_cast<int>(weights.size()), l - 1, [&](const std::vector<int>& s) {
    if (!wall && inCone(selectRows(weights, s), omega)) wall = true;
  });
  return wall;
}

RingElement QuotientData::kirwan(const Poly& x) const {
  if (x.isZero()) return ring.zero();
  const VarsPtr& target = ring.ambient();
  const int L = glsm.l();
  const VarsPtr& src = x.vars();
  if (!src) return ring.scalar(x.constantTerm());
  std::vector<Poly> images;
  for (int i = 0; i < src->size(); ++i) {
    if (i < L) {
      images.push_back(Poly::var(target, i));
    } else if (src->names[i] == "z" && x.degreeIn(i) == 0) {
      images.push_back(Poly(target));
    } else {
      fail(ErrorKind::IllDefined, "Kirwan map applied to a polynomial involving " + src->names[i]);
    }
  }
  return ring.reduce(x.substitute(images));
}

RingElement QuotientData::divisor(int i) const {
  RingElement u = ring.zero();
  for (int a = 0; a < glsm.l(); ++a) u += ring.gen(a) * Rational(glsm.weights.at(i)[a]);
  return u;
}

Rational QuotientData::integrate(const RingElement& x) const { return ring.integrate(x); }

Rational QuotientData::integrateByLocalization(const RingElement& x, const std::vector<Rational>& mu) const {
  if (static_cast<int>(mu.size()) != glsm.n()) fail(ErrorKind::Input, "auxiliary parameter has wrong length");
  Poly lifted = x.lift();
  const int L = glsm.l();
  Rational total = 0;
  auto pv = makeVars({});
  for (auto& fp : fixedPoints) {
    std::vector<Rational> lam(L, 0);
    for (int a = 0; a < L; ++a)
      for (int k = 0; k < L; ++k) lam[a] -= fp.inverse[a][k] * mu[fp.subset[k]];
    std::vector<Poly> images;
    for (auto& v : lam) images.push_back(Poly(pv, v));
    Rational num = lifted.isZero() ? Rational(0) : lifted.substitute(images).constantTerm();
    Rational den = 1;
    for (int j : fp.complement) {
      Rational w = dot(glsm.weights[j], lam) + mu[j];
      if (w == 0) fail(ErrorKind::Singular, "auxiliary parameter is not generic");
      den *= w;
    }
    total += num / den;
  }
  return total;
}

std::vector<std::vector<Rational>> QuotientData::moriGenerators() const {
  std::vector<std::vector<Rational>> out;
  const int L = glsm.l();
  for (auto& fp : fixedPoints) {
    for (int k = 0; k < L; ++k) {
      std::vector<Rational> g(L);
      for (int a = 0; a < L; ++a) g[a] = fp.inverse[a][k];
      if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
    }
  }
  return out;
}

std::vector<std::vector<int>> QuotientData::classesUpTo(const Rational& lo, const Rational& hi) const {
  const int L = glsm.l();
  Rational ratio = 0;
  for (auto& g : moriGenerators()) {
    Rational pair = 0, norm = 0;
    for (int a = 0; a < L; ++a) {
      pair += glsm.chamber[a] * g[a];
      norm = std::max(norm, Rational(abs(g[a])));
    }
    if (pair <= 0) fail(ErrorKind::Input, "chamber pairs non-positively with a Mori generator");
    ratio = std::max(ratio, Rational(norm / pair));
  }
  Rational reach = std::max(abs(lo), abs(hi)) * ratio;
  mpz_class b = reach.get_num() / reach.get_den();
  const int B = static_cast<int>(b.get_si());
  std::vector<std::vector<int>> out;
  std::vector<int> d(L, -B);
  while (true) {
    Rational pair = dot(d, glsm.chamber);
    if (pair >= lo && pair <= hi) out.push_back(d);
    int a = 0;
    while (a < L && d[a] == B) d[a++] = -B;
    if (a == L) break;
    ++d[a];
  }
  return out;
}

bool QuotientData::supportsClass(const std::vector<int>& d) const {
  RatMatrix rows;
  for (auto& w : glsm.weights) {
    int s = 0;
    for (size_t a = 0; a < w.size(); ++a) s += w[a] * d[a];
    if (s >= 0) rows.emplace_back(w.begin(), w.end());
  }
  return inCone(rows, glsm.chamber);
}

namespace {

int countFixedPoints(const IntMatrix& w, const std::vector<Rational>& omega) {
  int count = 0;
  forEachSubset(static_cast<int>(w.size()), static_cast<int>(omega.size()), [&](const std::vector<int>& s) {
    RatMatrix rows = selectRows(w, s);
    if (determinant(rows) != 0 && inCone(rows, omega)) ++count;
  });
  return count;
}

std::vector<Rational> primitive(std::vector<Rational> v) {
  mpz_class g = 0, l = 1;
  for (auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
  for (auto& x : v) x *= l;
  for (auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num().get_mpz_t());
  if (g != 0)
    for (auto& x : v) x /= g;
  return v;
}

}  // namespace

std::vector<Chamber> chambers(const IntMatrix& weights) {
  if (weights.empty()) fail(ErrorKind::Input, "weight matrix is empty");
  const int L = static_cast<int>(weights[0].size());
  if (L > 2) fail(ErrorKind::Unsupported, "chamber enumeration is implemented for l <= 2");
  if (matrixRank(toRational(weights)) != L) fail(ErrorKind::Input, "weight matrix does not have full rank");
  std::vector<std::vector<Rational>> reps;
  if (L == 1) {
    reps = {{Rational(1)}, {Rational(-1)}};
  } else {
    std::vector<std::array<long, 2>> dirs;
    for (auto& w : weights) {
      if (w[0] == 0 && w[1] == 0) continue;
      long g = std::gcd(std::abs(w[0]), std::abs(w[1]));
      std::array<long, 2> v{w[0] / g, w[1] / g};
      bool dup = false;
      for (auto& d : dirs)
        if (static_cast<long>(d[0]) * w[1] - static_cast<long>(d[1]) * w[0] == 0 &&
            static_cast<long>(d[0]) * w[0] + static_cast<long>(d[1]) * w[1] > 0)
          dup = true;
      if (!dup) dirs.push_back(v);
    }
    std::sort(dirs.begin(), dirs.end(), [](const auto& a, const auto& b) {
      return std::atan2(static_cast<double>(a[1]), static_cast<double>(a[0])) <
             std::atan2(static_cast<double>(b[1]), static_cast<double>(b[0]));
    });
    for (size_t i = 0; i < dirs.size(); ++i) {
      auto a = dirs[i], b = dirs[(i + 1) % dirs.size()];
      long cross = a[0] * b[1] - a[1] * b[0];
      std::vector<Rational> r(2);
      if (cross > 0) {
        r = {Rational(a[0] + b[0]), Rational(a[1] + b[1])};
      } else if (cross == 0) {
        r = {Rational(-a[1]), Rational(a[0])};
      } else {
        r = {Rational(-(a[0] + b[0])), Rational(-(a[1] + b[1]))};
      }
      reps.push_back(primitive(r));
    }
  }
  std::vector<Chamber> out;
  for (auto& r : reps) {
    Chamber c;
    c.representative = r;
    c.fixedPointCount = countFixedPoints(weights, r);
    c.empty = c.fixedPointCount == 0;
    out.push_back(c);
  }
  return out;
}

QuotientData quotientPresentation(GlsmData glsm) {
  glsm.validate();
  const int n = glsm.n(), L = glsm.l();
  if (onWall(glsm.weights, glsm.chamber)) fail(ErrorKind::Wall, "chamber vector lies on a wall");
  QuotientData q;
  forEachSubset(n, L, [&](const std::vector<int>& s) {
    RatMatrix rows = selectRows(glsm.weights, s);
    Rational det = determinant(rows);
    if (det == 0 || !inCone(rows, glsm.chamber)) return;
    if (abs(det) != 1) fail(ErrorKind::Orbifold, "fixed point with |det D_S| = " + Rational(abs(det)).get_str());
    FixedPoint fp;
    fp.subset = s;
    for (int j = 0; j < n; ++j)
      if (!std::count(s.begin(), s.end(), j)) fp.complement.push_back(j);
    fp.inverse = inverse(rows);
    q.fixedPoints.push_back(std::move(fp));
  });
  if (q.fixedPoints.empty()) fail(ErrorKind::EmptyQuotient, "quotient is empty for this chamber");

  // Minimal subsets T with omega outside Cone(D_j : j not in T).
  for (int k = 1; k <= n; ++k) {
    forEachSubset(n, k, [&](const std::vector<int>& t) {
      for (auto& m : q.srSubsets)
        if (std::includes(t.begin(), t.end(), m.begin(), m.end())) return;
      RatMatrix rest;
      for (int j = 0; j < n; ++j)
        if (!std::binary_search(t.begin(), t.end(), j)) rest.emplace_back(glsm.weights[j].begin(), glsm.weights[j].end());
      if (!inCone(rest, glsm.chamber)) q.srSubsets.push_back(t);
    });
  }

  auto vars = makeVars(glsm.parameterNames);
  std::vector<Poly> rels;
  for (auto& t : q.srSubsets) {
    Poly prod(vars, 1);
    for (int i : t) {
      std::vector<Rational> a(glsm.weights[i].begin(), glsm.weights[i].end());
      prod *= Poly::linear(vars, a);
    }
    rels.push_back(prod);
  }
  q.glsm = glsm;
  q.ring = QuotientRing(vars, rels);
  const int top = q.ring.topWeight();
  if (top != n - L) fail(ErrorKind::Input, "presentation has unexpected top degree");
  auto topBasis = q.ring.basisInWeight(top);
  if (topBasis.size() != 1) fail(ErrorKind::Input, "top degree of presentation is not one dimensional");
  RingElement topElement(q.ring, {{topBasis[0], 1}});
  std::mt19937 rng(20240611);
  Rational value;
  for (int attempt = 0;; ++attempt) {
    try {
      value = q.integrateByLocalization(topElement, randomMu(n, rng));
      break;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Singular || attempt > 20) throw;
    }
  }
  q.ring = QuotientRing(vars, rels, QuotientRing::Normalization{Poly::monomial(vars, topBasis[0]), value});
  return q;
}

GlsmData projectiveSpace(int n) {
  if (n < 1) fail(ErrorKind::Input, "projective space needs n >= 1");
  GlsmData g;
  g.weights.assign(n, {1});
  g.chamber = {1};
  g.validate();
  return g;
}

}  // namespace qfourier
