#include "qfourier/volumes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "qfourier/errors.hpp"

namespace qfourier {

namespace {

constexpr double kMaxCancellation = 1e8;

int rankOf(const IntMatrix& weights) {
  if (weights.empty()) fail(ErrorKind::Input, "empty weight matrix");
  const size_t l = weights[0].size();
  for (auto& row : weights)
    if (row.size() != l) fail(ErrorKind::Input, "ragged weight matrix");
  return static_cast<int>(l);
}

Rational dot(const std::vector<int>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Integer eta with D_i . eta > 0 for every row and all entries nonzero.
bool positiveDirection(const IntMatrix& weights, std::vector<int>& eta) {
  const int l = rankOf(weights);
  const int box = 60;
  std::vector<int> v(l, -box);
  while (true) {
    bool ok = std::none_of(v.begin(), v.end(), [](int x) { return x == 0; });
    for (auto& row : weights) {
      if (!ok) break;
      long s = 0;
      for (int a = 0; a < l; ++a) s += static_cast<long>(row[a]) * v[a];
      ok = s > 0;
    }
    if (ok) {
      eta = v;
      return true;
    }
    int a = 0;
    while (a < l && v[a] == box) v[a++] = -box;
    if (a == l) return false;
    ++v[a];
  }
}

Rational factorialQ(int k) {
  Rational f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

Rational powQ(const Rational& x, int k) {
  Rational r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

// binom(-m, j) = (-1)^j binom(m + j - 1, j).
Rational negBinomial(int m, int j) {
  Rational r = 1;
  for (int i = 0; i < j; ++i) r = r * (m + i) / (i + 1);
  return (j % 2) ? Rational(-r) : r;
}

// (1 / 2 pi i) int_{eta + iR} e^{lambda s} lambda^{-k} d lambda.
Rational lineIntegral(const Rational& s, int k, int etaSign) {
  if (k <= 0) return 0;
  if (s == 0) fail(ErrorKind::Wall, "moment value on a wall");
  Rational v = powQ(s, k - 1) / factorialQ(k - 1);
  if (etaSign > 0) return s > 0 ? v : Rational(0);
  return s < 0 ? Rational(-v) : Rational(0);
}

// Truncated power series in h with coefficients Laurent in lambda_1 (keyed by
// the power of 1/lambda_1).
using LaurentCoeff = std::map<int, Rational>;
using HSeries = std::vector<LaurentCoeff>;

HSeries mulH(const HSeries& a, const HSeries& b) {
  HSeries r(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; i + j < a.size(); ++j)
      for (auto& [pa, ca] : a[i])
        for (auto& [pb, cb] : b[j]) {
          Rational& slot = r[i + j][pa + pb];
          slot += ca * cb;
        }
  return r;
}

void checkJkInput(const IntMatrix& weights, const std::vector<Rational>& t, int& l) {
  l = rankOf(weights);
  if (l < 1 || l > 2) fail(ErrorKind::Unsupported, "JK volumes are implemented for l <= 2");
  if (static_cast<int>(t.size()) != l) fail(ErrorKind::Input, "moment value has wrong rank");
  for (auto& row : weights)
    if (std::all_of(row.begin(), row.end(), [](int x) { return x == 0; }))
      fail(ErrorKind::Unsupported, "zero weight: fixed locus is not isolated");
  if (matrixRank(toRational(weights)) != l) fail(ErrorKind::Input, "weights do not span");
}

// Vertices of {x >= 0 : D^T x = t}.
std::vector<std::vector<Rational>> fibreVertices(const IntMatrix& weights, const std::vector<Rational>& t) {
  const int n = static_cast<int>(weights.size()), l = rankOf(weights);
  std::vector<std::vector<Rational>> out;
  std::set<std::vector<Rational>> seen;
  std::vector<int> subset(l);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == l) {
      RatMatrix m(l, std::vector<Rational>(l));
      for (int a = 0; a < l; ++a)
        for (int j = 0; j < l; ++j) m[a][j] = weights[subset[j]][a];
      if (determinant(m) == 0) return;
      RatMatrix inv = inverse(m);
      std::vector<Rational> x(n, 0);
      for (int j = 0; j < l; ++j) {
        Rational s = 0;
        for (int a = 0; a < l; ++a) s += inv[j][a] * t[a];
        if (s < 0) return;
        x[subset[j]] = s;
      }
      if (seen.insert(x).second) out.push_back(x);
      return;
    }
    for (int i = start; i < n; ++i) {
      subset[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return out;
}

int affineRank(const std::vector<std::vector<Rational>>& pts, const std::vector<int>& idx) {
  if (idx.size() <= 1) return 0;
  RatMatrix m;
  for (size_t i = 1; i < idx.size(); ++i) {
    std::vector<Rational> row;
    for (size_t c = 0; c < pts[idx[0]].size(); ++c) row.push_back(pts[idx[i]][c] - pts[idx[0]][c]);
    m.push_back(row);
  }
  return matrixRank(m);
}

// Pulling triangulation of the face with vertex set `face` of dimension k.
void triangulate(const std::vector<std::vector<Rational>>& x, const std::vector<int>& face, int k,
                 std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
  if (k == 0) {
    prefix.push_back(face[0]);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  const int v0 = face[0];
  const size_t n = x[0].size();
  std::set<std::vector<int>> facets;
  for (size_t i = 0; i < n; ++i) {
    if (x[v0][i] == 0) continue;
    std::vector<int> f;
    for (int v : face)
      if (x[v][i] == 0) f.push_back(v);
    if (f.empty() || affineRank(x, f) != k - 1) continue;
    if (!facets.insert(f).second) continue;
    prefix.push_back(v0);
    triangulate(x, f, k - 1, prefix, out);
    prefix.pop_back();
  }
}

// --- quantum volume series ---

double logFactorial(int d) { return std::lgamma(d + 1.0); }

struct SeriesState {
  KahanSum sum;
  double maxTerm = 0;
  double lastTerm = 0;
  int small = 0;
};

// True when the series may stop after this term.
bool acceptTerm(SeriesState& st, cplx term, int d, double peak, double tol) {
  st.sum.add(term);
  const double a = std::abs(term);
  st.maxTerm = std::max(st.maxTerm, a);
  st.lastTerm = a;
  const double scale = std::max(std::abs(st.sum.value()), 1e-300);
  if (d > peak && a <= tol * scale) ++st.small;
  else st.small = 0;
  return st.small >= 2;
}

void checkCancellation(const SeriesState& st) {
  const double s = std::abs(st.sum.value());
  if (st.maxTerm > kMaxCancellation * s) {
    std::ostringstream os;
    os << "residue series cancels by a factor " << st.maxTerm / std::max(s, 1e-300) << "; use the contour integral";
    fail(ErrorKind::Divergence, os.str());
  }
}

void checkVolumeArgs(int n, cplx q, double z) {
  if (n < 1) fail(ErrorKind::Input, "n must be >= 1");
  if (!(z > 0)) fail(ErrorKind::Input, "z must be positive");
  if (q == cplx(0)) fail(ErrorKind::Input, "q must be nonzero");
}

cplx logSfq(int n, cplx q, double z) { return std::log(q) - static_cast<double>(n) * std::log(z); }

// sum_d Res_{u=-d} e^{-u L} Gamma(u)^n du.
QuantumVolumeResult residueSeries(int n, cplx L, double tol) {
  // h Gamma(-d + h) = (-1)^d / d! * Gamma(1 + h) / prod_{j<=d} (1 - h/j).
  GammaExpansion g1 = gammaExpand(1.0, n);
  NumericNilSeries ghat(n);
  for (int i = 0; i < n; ++i) ghat[i] = g1.at(i);
  const NumericNilSeries expPart = expSeries(NumericNilSeries::generator(n, -L));
  const double peak = std::exp(L.real() / n);
  SeriesState st;
  for (int d = 0;; ++d) {
    if (d > 0) {
      NumericNilSeries geo(n);
      for (int i = 0; i < n; ++i) geo[i] = std::pow(1.0 / d, i);
      ghat *= geo;
    }
    cplx weight = std::exp(static_cast<double>(d) * L - n * logFactorial(d));
    if ((n * d) % 2) weight = -weight;
    cplx term = weight * (expPart * ghat.pow(n))[n - 1];
    if (acceptTerm(st, term, d, peak, tol)) break;
    if (d > 5000) fail(ErrorKind::Divergence, "residue series did not converge");
  }
  checkCancellation(st);
  return {st.sum.value(), VolumeMethod::ResidueSeries, st.lastTerm};
}

// int Gamma-hat e^{2 pi i m p} e^{-p L} sum_d Q^d / prod_{c<=d} (p - c)^n.
QuantumVolumeResult cohomologicalSeries(int n, cplx L, int m, double tol) {
  NumericNilSeries gamma = gammaClassNumeric(std::vector<cplx>(n, 1.0), n);
  NumericNilSeries front =
      gamma * expSeries(NumericNilSeries::generator(n, -L)) *
      expSeries(NumericNilSeries::generator(n, cplx(0, 2 * kPi * m)));
  NumericNilSeries inv(n, 1.0);
  const double peak = std::exp(L.real() / n);
  SeriesState st;
  for (int d = 0;; ++d) {
    if (d > 0) {
      NumericNilSeries geo(n);
      for (int i = 0; i < n; ++i) geo[i] = std::pow(1.0 / d, i);
      inv *= geo;
    }
    cplx weight = std::exp(static_cast<double>(d) * L - n * logFactorial(d));
    if ((n * d) % 2) weight = -weight;
    cplx term = weight * (front * inv.pow(n))[n - 1];
    if (acceptTerm(st, term, d, peak, tol)) break;
    if (d > 5000) fail(ErrorKind::Divergence, "cohomological series did not converge");
  }
  checkCancellation(st);
  return {st.sum.value(), VolumeMethod::CohomologicalSeries, st.lastTerm};
}

// --- one-dimensional Laplace-type quadrature ---

struct LogQuadrature {
  double logValue = 0;
  double relError = 0;
};

constexpr double kCut = 45.0;
constexpr double kFar = 1e4;

// log int e^{-phi(s)} ds for convex phi.
LogQuadrature integrateConvex(const std::function<double(double)>& phi, double tol) {
  // Walk downhill to bracket the minimum.
  double s = 0, step = 1, f = phi(s);
  if (!std::isfinite(f)) fail(ErrorKind::Divergence, "integrand is not finite");
  double dir = phi(s + 1e-3) < f ? 1 : -1;
  double a = s, b = s;
  while (true) {
    double t = s + dir * step, ft = phi(t);
    if (!(ft < f)) {
      a = std::min(s - dir * step / 2, t);
      b = std::max(s - dir * step / 2, t);
      break;
    }
    s = t;
    f = ft;
    step *= 2;
    if (std::abs(s) > kFar) fail(ErrorKind::Divergence, "integrand does not decay");
  }
  const double gr = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 200 && b - a > 1e-9; ++it) {
    double c = b - gr * (b - a), d = a + gr * (b - a);
    if (phi(c) < phi(d)) b = d;
    else a = c;
  }
  const double smin = (a + b) / 2, fmin = phi(smin);

  auto cutoff = [&](double sign) {
    double st = 1, lo = smin, hi = smin + sign;
    while (phi(hi) - fmin < kCut) {
      lo = hi;
      st *= 2;
      hi = smin + sign * st;
      if (std::abs(hi) > kFar) fail(ErrorKind::Divergence, "integrand does not decay");
    }
    for (int it = 0; it < 60; ++it) {
      double mid = (lo + hi) / 2;
      if (phi(mid) - fmin < kCut) lo = mid;
      else hi = mid;
    }
    return hi;
  };
  const double left = cutoff(-1), right = cutoff(1);

  auto g = [&](double x) { return std::exp(fmin - phi(x)); };
  int panels = 32;
  double h = (right - left) / panels;
  double sum = (g(left) + g(right)) / 2;
  for (int i = 1; i < panels; ++i) sum += g(left + i * h);
  double prev = sum * h;
  while (true) {
    double extra = 0;
    for (int i = 0; i < panels; ++i) extra += g(left + (i + 0.5) * h);
    sum += extra;
    panels *= 2;
    h /= 2;
    double cur = sum * h;
    double err = std::abs(cur - prev);
    if (panels >= 128 && err <= tol * std::abs(cur)) {
      return {std::log(cur) - fmin, err / cur + std::exp(-kCut)};
    }
    if (panels > (1 << 22)) fail(ErrorKind::Divergence, "quadrature did not converge");
    prev = cur;
  }
}

// --- equivariant quantum volume ---

cplx gammaWeightFactor(double w, double z) {
  return std::exp(cplx(w / z * std::log(z))) * gammaFn(cplx(w / z));
}

cplx iFactor(double u, int m, double z) {
  cplx r = 1;
  if (m >= 0)
    for (int c = 1; c <= m; ++c) r /= (u - c * z);
  else
    for (int c = 0; c < -m; ++c) r *= (u + c * z);
  return r;
}

cplx evaluateEquivariant(const ToricTarget& x, const std::vector<double>& tau, const std::vector<double>& lambda,
                         double z, const EquivariantVolumeOptions& opt) {
  const int n = x.n(), k = x.k();
  std::vector<double> mu(n, 0);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < k; ++a) mu[i] += x.section[i][a] * lambda[a];

  if (x.glsm.l() == 0) {
    double tauF = 0;
    cplx g = 1;
    for (int i = 0; i < n; ++i) {
      tauF += tau[i] * mu[i];
      g *= gammaWeightFactor(mu[i], z);
    }
    return std::exp(-tauF / z) * g;
  }

  QuotientData q = quotientPresentation(x.glsm);
  const int l = q.glsm.l();
  const auto& D = q.glsm.weights;
  cplx total = 0;
  for (auto& fp : q.fixedPoints) {
    std::vector<double> lamStar(l, 0);
    for (int a = 0; a < l; ++a)
      for (int j = 0; j < l; ++j) lamStar[a] -= fp.inverse[a][j].get_d() * mu[fp.subset[j]];
    std::vector<double> u(n);
    double tauF = 0;
    for (int i = 0; i < n; ++i) {
      u[i] = mu[i];
      for (int a = 0; a < l; ++a) u[i] += D[i][a] * lamStar[a];
      tauF += tau[i] * u[i];
    }
    for (int s : fp.subset) u[s] = 0;
    cplx g = 1;
    for (int j : fp.complement) g *= gammaWeightFactor(u[j], z);

    // Classes d = D_S^{-1} k for k >= 0, summed in shells |k| = 0, 1, ...
    KahanSum series;
    int quiet = 0;
    for (int shell = 0;; ++shell) {
      if (shell > opt.maxDegree) fail(ErrorKind::Divergence, "equivariant I-series did not converge");
      double shellMax = 0;
      std::vector<int> kv(l, 0);
      std::function<void(int, int)> rec = [&](int a, int left) {
        if (a == l - 1) {
          kv[a] = left;
          std::vector<Rational> d(l, 0);
          for (int b = 0; b < l; ++b)
            for (int j = 0; j < l; ++j) d[b] += fp.inverse[b][j] * kv[j];
          for (auto& v : d)
            if (v.get_den() != 1) return;
          cplx term = 1;
          double expo = 0;
          for (int i = 0; i < n; ++i) {
            Rational m = dot(D[i], d);
            expo += tau[i] * m.get_d();
            term *= iFactor(u[i], static_cast<int>(m.get_num().get_si()), z);
          }
          term *= std::exp(expo);
          series.add(term);
          shellMax = std::max(shellMax, std::abs(term));
          return;
        }
        for (int c = 0; c <= left; ++c) {
          kv[a] = c;
          rec(a + 1, left - c);
        }
      };
      rec(0, shell);
      if (shell > 0 && shellMax <= opt.tol * std::abs(series.value())) {
        if (++quiet >= 2) break;
      } else {
        quiet = 0;
      }
    }
    total += std::exp(-tauF / z) * series.value() * g;
  }
  return total;
}

}  // namespace

LocalizedFunction equivariantVolume(const IntMatrix& weights, int l) {
  if (weights.empty()) {
    if (l < 1) fail(ErrorKind::Input, "empty weight matrix needs an explicit rank");
    return LocalizedFunction(Poly(equivariantVars(l), 1));
  }
  const int r = rankOf(weights);
  if (l >= 0 && l != r) fail(ErrorKind::Input, "weight matrix has wrong rank");
  VarsPtr vars = equivariantVars(r);
  std::vector<Poly> den;
  for (auto& row : weights) {
    if (std::all_of(row.begin(), row.end(), [](int x) { return x == 0; }))
      fail(ErrorKind::Unsupported, "zero weight: fixed locus is not isolated");
    std::vector<Rational> a(vars->size(), 0);
    for (int i = 0; i < r; ++i) a[i] = row[i];
    den.push_back(Poly::linear(vars, a));
  }
  return LocalizedFunction::fraction(Poly(vars, 1), den);
}

Rational jkVolume(const IntMatrix& weights, const std::vector<Rational>& t) {
  int l;
  checkJkInput(weights, t, l);
  std::vector<int> eta;
  if (!positiveDirection(weights, eta)) fail(ErrorKind::Unsupported, "fibre polytopes are unbounded");
  if (onWall(weights, t)) fail(ErrorKind::Wall, "moment value on a wall");

  struct Term {
    Rational s;
    int k;
    Rational c;
  };
  std::vector<Term> terms;
  int etaSign;
  const int n = static_cast<int>(weights.size());
  if (l == 1) {
    Rational prod = 1;
    for (auto& row : weights) prod *= row[0];
    terms.push_back({t[0], n, 1 / prod});
    etaSign = eta[0] > 0 ? 1 : -1;
  } else {
    // Integrate lambda_2 first; swap so that t_2 != 0.
    const bool swap = t[1] == 0;
    const int i1 = swap ? 1 : 0, i2 = swap ? 0 : 1;
    const Rational t1 = t[i1], t2 = t[i2];
    etaSign = eta[i1] > 0 ? 1 : -1;
    int k0 = 0;
    Rational a0 = 1, allB = 1;
    struct Group {
      int m = 0;
      int sign = 0;
    };
    std::map<Rational, Group> groups;
    for (auto& row : weights) {
      const int a = row[i1], b = row[i2];
      if (b == 0) {
        ++k0;
        a0 *= a;
        continue;
      }
      allB *= b;
      Group& g = groups[frac(-a, b)];
      ++g.m;
      g.sign = b > 0 ? 1 : -1;
    }
    const int pick = t2 > 0 ? 1 : -1;
    for (auto& [c, g] : groups) {
      if (g.sign != pick) continue;
      const int m = g.m;
      HSeries acc(m);
      for (int j = 0; j < m; ++j) acc[j][0] = powQ(t2, j) / factorialQ(j);
      for (auto& [c2, g2] : groups) {
        if (c2 == c) continue;
        const Rational delta = c - c2;
        HSeries f(m);
        for (int j = 0; j < m; ++j) f[j][g2.m + j] = negBinomial(g2.m, j) / powQ(delta, g2.m + j);
        acc = mulH(acc, f);
      }
      for (auto& [p, coef] : acc[m - 1]) {
        if (coef == 0) continue;
        terms.push_back({t1 + c * t2, p + k0, coef * pick / (allB * a0)});
      }
    }
  }
  Rational v = 0;
  for (auto& tm : terms) v += tm.c * lineIntegral(tm.s, tm.k, etaSign);
  return v;
}

Rational polytopeVolumeOracle(const IntMatrix& weights, const std::vector<Rational>& t) {
  const int l = rankOf(weights), n = static_cast<int>(weights.size());
  if (static_cast<int>(t.size()) != l) fail(ErrorKind::Input, "moment value has wrong rank");
  std::vector<int> eta;
  if (!positiveDirection(weights, eta)) fail(ErrorKind::Unsupported, "fibre polytope is unbounded");
  if (matrixRank(toRational(weights)) != l) fail(ErrorKind::Input, "weights do not span");

  // Coordinates on the fibre: x_T for T the complement of an invertible S0.
  std::vector<int> s0;
  Rational detS0 = 0;
  {
    std::vector<int> subset(l);
    std::function<bool(int, int)> rec = [&](int start, int depth) {
      if (depth == l) {
        Rational d = determinant(selectRows(weights, subset));
        if (d == 0) return false;
        s0 = subset;
        detS0 = abs(d);
        return true;
      }
      for (int i = start; i < n; ++i) {
        subset[depth] = i;
        if (rec(i + 1, depth + 1)) return true;
      }
      return false;
    };
    rec(0, 0);
  }
  auto verts = fibreVertices(weights, t);
  if (verts.empty()) return 0;
  const int dim = n - l;
  if (dim == 0) return 1 / detS0;

  std::vector<int> all(verts.size());
  for (size_t i = 0; i < verts.size(); ++i) all[i] = static_cast<int>(i);
  if (affineRank(verts, all) < dim) return 0;

  std::vector<int> tcoords;
  for (int i = 0; i < n; ++i)
    if (std::find(s0.begin(), s0.end(), i) == s0.end()) tcoords.push_back(i);

  std::vector<std::vector<int>> simplices;
  std::vector<int> prefix;
  triangulate(verts, all, dim, prefix, simplices);
  Rational vol = 0;
  for (auto& sx : simplices) {
    RatMatrix m(dim, std::vector<Rational>(dim));
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) m[r][c] = verts[sx[r + 1]][tcoords[c]] - verts[sx[0]][tcoords[c]];
    vol += abs(determinant(m));
  }
  return vol / factorialQ(dim) / detS0;
}

NumericNilSeries gammaClassNumeric(const std::vector<cplx>& roots, int n) {
  if (n < 1 || n > 32) fail(ErrorKind::Input, "Gamma class is implemented for 1 <= n <= 32");
  // log Gamma(1 + x) = -gamma x + sum_{k>=2} (-1)^k zeta(k) x^k / k.
  NumericNilSeries g(n);
  for (cplx a : roots) {
    cplx ak = a;
    if (n > 1) g[1] += -kEulerGamma * a;
    for (int k = 2; k < n; ++k) {
      ak *= a;
      g[k] += ((k % 2) ? -1.0 : 1.0) * zetaValue(k) / k * ak;
    }
  }
  return expSeries(g);
}

const char* methodName(VolumeMethod m) {
  switch (m) {
    case VolumeMethod::ResidueSeries:
      return "residueSeries";
    case VolumeMethod::MellinBarnes:
      return "mellinBarnes";
    case VolumeMethod::CohomologicalSeries:
      return "cohomologicalSeries";
    case VolumeMethod::Saddle:
      return "saddle";
  }
  return "?";
}

QuantumVolumeResult quantumVolumeSeries(int n, cplx q, double z, double tol) {
  checkVolumeArgs(n, q, z);
  return residueSeries(n, logSfq(n, q, z), tol);
}

QuantumVolumeResult quantumVolumeCohomological(int n, cplx q, double z, double tol) {
  checkVolumeArgs(n, q, z);
  return cohomologicalSeries(n, logSfq(n, q, z), 0, tol);
}

QuantumVolumeResult mellinBarnes(int n, cplx q, double z, const MellinOptions& opt) {
  checkVolumeArgs(n, q, z);
  const double eps = std::isnan(opt.epsilon) ? z / 2 : opt.epsilon;
  const double c = eps / z;
  if (std::abs(c - std::round(c)) < 1e-12 && std::round(c) <= 0) fail(ErrorKind::Pole, "contour passes through a pole");
  if (!(c > 0)) fail(ErrorKind::Input, "contour must lie right of the poles");
  const cplx L = logSfq(n, q, z);
  auto logf = [&](double y) {
    cplx u(c, y);
    return -u * L + static_cast<double>(n) * logGamma(u);
  };
  const double ref = logf(0).real();
  const double target = std::log(opt.tol) - 10;

  double Y;
  if (opt.halfWidth > 0) {
    Y = opt.halfWidth / z;
  } else {
    Y = std::max(4.0, c);
    while (logf(Y).real() - ref > target || logf(-Y).real() - ref > target) {
      Y *= 1.5;
      if (Y > 1e6) fail(ErrorKind::Divergence, "Mellin-Barnes integrand does not decay");
    }
  }
  auto tailBound = [&](double y) {
    double rate = std::max(logf(y - 1).real() - logf(y).real(), 1e-3);
    return std::exp(logf(y).real() - ref) / rate;
  };
  const double tail = (tailBound(Y) + tailBound(-Y)) / (2 * kPi);

  auto f = [&](double y) { return std::exp(logf(y) - ref); };
  int panels = opt.steps > 0 ? opt.steps : std::max(64, static_cast<int>(8 * Y));
  double h = 2 * Y / panels;
  std::vector<cplx> vals(panels + 1);
  parallelFor(panels + 1, [&](int i) { vals[i] = f(-Y + i * h); });
  KahanSum base;
  for (int i = 0; i <= panels; ++i) base.add((i == 0 || i == panels) ? vals[i] / 2.0 : vals[i]);
  cplx sum = base.value();
  cplx prev = sum * h;
  while (true) {
    std::vector<cplx> mid(panels);
    parallelFor(panels, [&](int i) { mid[i] = f(-Y + (i + 0.5) * h); });
    KahanSum ks;
    ks.add(sum);
    for (auto& v : mid) ks.add(v);
    sum = ks.value();
    panels *= 2;
    h /= 2;
    cplx cur = sum * h;
    double diff = std::abs(cur - prev);
    if (diff <= opt.tol / 10 * std::abs(cur)) {
      const double scale = std::exp(ref) / (2 * kPi);
      return {cur * scale, VolumeMethod::MellinBarnes, (diff + tail) * scale};
    }
    if (panels > (1 << 24)) fail(ErrorKind::Divergence, "Mellin-Barnes quadrature did not converge");
    prev = cur;
  }
}

cplx saddleAsymptotic(int n, double sfq) {
  if (n < 1) fail(ErrorKind::Input, "n must be >= 1");
  if (!(sfq > 0)) fail(ErrorKind::Input, "saddle asymptotics need sfq > 0");
  const double root = std::pow(sfq, 1.0 / n);
  return std::pow(2 * kPi, (n - 1) / 2.0) / (std::sqrt(static_cast<double>(n)) * std::pow(sfq, (n - 1) / (2.0 * n))) *
         std::exp(-n * root);
}

ToricTarget affineSpace(int n) {
  if (n < 1) fail(ErrorKind::Input, "n must be >= 1");
  ToricTarget x;
  x.glsm.weights.assign(n, std::vector<int>{});
  x.section.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) x.section[i][i] = 1;
  return x;
}

ToricTarget projectiveLine() {
  ToricTarget x;
  x.glsm = projectiveSpace(2);
  x.section = {{1}, {0}};
  return x;
}

cplx equivariantQuantumVolume(const ToricTarget& x, const std::vector<double>& tau, const std::vector<double>& lambda,
                              double z, const EquivariantVolumeOptions& opt) {
  if (!(z > 0)) fail(ErrorKind::Input, "z must be positive");
  if (static_cast<int>(tau.size()) != x.n()) fail(ErrorKind::Input, "tau has wrong length");
  if (static_cast<int>(lambda.size()) != x.k()) fail(ErrorKind::Input, "lambda has wrong length");
  if (static_cast<int>(x.glsm.weights.size()) != x.n()) fail(ErrorKind::Input, "section and weights disagree");
  try {
    return evaluateEquivariant(x, tau, lambda, z, opt);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Pole || !opt.regularize) throw;
  }
  // Even Richardson extrapolation along lambda + h v.
  std::vector<double> v(x.k());
  for (int a = 0; a < x.k(); ++a) v[a] = 1.0 / (1.0 + 0.618 * a);
  auto even = [&](double h) {
    std::vector<double> lp = lambda, lm = lambda;
    for (int a = 0; a < x.k(); ++a) {
      lp[a] += h * v[a];
      lm[a] -= h * v[a];
    }
    return (evaluateEquivariant(x, tau, lp, z, opt) + evaluateEquivariant(x, tau, lm, z, opt)) / 2.0;
  };
  const int levels = 4;
  std::vector<std::vector<cplx>> R(levels);
  double h = 0.02 * z;
  for (int i = 0; i < levels; ++i, h /= 2) {
    R[i].push_back(even(h));
    double f = 4;
    for (int j = 1; j <= i; ++j, f *= 4) R[i].push_back((f * R[i][j - 1] - R[i - 1][j - 1]) / (f - 1));
  }
  cplx best = R[levels - 1][levels - 1], prev = R[levels - 2][levels - 2];
  if (std::abs(best - prev) > 1e-6 * std::abs(best)) fail(ErrorKind::Pole, "no finite limit at a Gamma pole");
  return best;
}

QuadratureResult lgOscillatoryIntegral(const IntMatrix& rays, const std::vector<double>& tau,
                                       const std::vector<double>& lambda, double z, double tol) {
  if (!(z > 0)) fail(ErrorKind::Input, "z must be positive");
  const int k = rankOf(rays);
  if (k < 1 || k > 2) fail(ErrorKind::Unsupported, "oscillatory integrals are implemented in dimension <= 2");
  if (tau.size() != rays.size()) fail(ErrorKind::Input, "tau has wrong length");
  if (static_cast<int>(lambda.size()) != k) fail(ErrorKind::Input, "lambda has wrong length");
  auto phi = [&](double s1, double s2) {
    double v = 0;
    for (size_t i = 0; i < rays.size(); ++i) {
      double e = tau[i] + rays[i][0] * s1 + (k > 1 ? rays[i][1] * s2 : 0.0);
      v += std::exp(e);
    }
    v -= lambda[0] * s1 + (k > 1 ? lambda[1] * s2 : 0.0);
    return v / z;
  };
  LogQuadrature r;
  if (k == 1) {
    r = integrateConvex([&](double s) { return phi(s, 0); }, tol);
  } else {
    double innerErr = 0;
    r = integrateConvex(
        [&](double s1) {
          auto in = integrateConvex([&](double s2) { return phi(s1, s2); }, tol);
          innerErr = std::max(innerErr, in.relError);
          return -in.logValue;
        },
        tol);
    r.relError += innerErr;
  }
  const double v = std::exp(r.logValue);
  return {v, v * r.relError};
}

std::vector<DHMeasureSample> quantumDHMeasure(double tau1, double tau2, double z, const std::vector<double>& grid) {
  if (!(z > 0)) fail(ErrorKind::Input, "z must be positive");
  std::vector<DHMeasureSample> out;
  out.reserve(grid.size());
  for (double t : grid) {
    const double lv = -(std::exp(tau1 - t) + std::exp(tau2 + t)) / z;
    out.push_back({t, std::exp(lv), lv});
  }
  return out;
}

std::vector<double> parseGrid(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(ErrorKind::Input, "grid must be a:b:step, got '" + spec + "'");
    }
  }
  if (parts.size() != 3) fail(ErrorKind::Input, "grid must be a:b:step, got '" + spec + "'");
  const double a = parts[0], b = parts[1], step = parts[2];
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(step)) fail(ErrorKind::Input, "grid bounds must be finite");
  if (!(step > 0) || b < a) fail(ErrorKind::Input, "grid needs step > 0 and a <= b");
  const long count = static_cast<long>(std::floor((b - a) / step + 0.5)) + 1;
  if (count > 10000000) fail(ErrorKind::Input, "grid is too large");
  std::vector<double> g(count);
  for (long i = 0; i < count; ++i) {
    g[i] = a + i * step;
    if (std::abs(g[i]) < 1e-9 * step) g[i] = 0;
  }
  return g;
}

QuantumVolumeResult centralCharge(int n, int m, cplx q, double z, double tol) {
  checkVolumeArgs(n, q, z);
  return residueSeries(n, logSfq(n, q, z) - cplx(0, 2 * kPi * m), tol);
}

QuantumVolumeResult centralChargeCohomological(int n, int m, cplx q, double z, double tol) {
  checkVolumeArgs(n, q, z);
  return cohomologicalSeries(n, logSfq(n, q, z), m, tol);
}

}  // namespace qfourier
