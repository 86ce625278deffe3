#include "qfourier/numeric.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "qfourier/errors.hpp"

namespace qfourier {

namespace {

// zeta(2) .. zeta(32), 30 significant digits.
constexpr long double kZeta[] = {
    1.64493406684822643647241516665L, 1.20205690315959428539973816151L,
    1.08232323371113819151600369654L, 1.03692775514336992633136548646L,
    1.01734306198444913971451792979L, 1.00834927738192282683979754985L,
    1.00407735619794433937868523851L, 1.00200839282608221441785276923L,
    1.00099457512781808533714595890L, 1.00049418860411946455870228253L,
    1.00024608655330804829863799805L, 1.00012271334757848914675183653L,
    1.00006124813505870482925854511L, 1.00003058823630702049355172851L,
    1.00001528225940865187173257149L, 1.00000763719763789976227360029L,
    1.00000381729326499983985646164L, 1.00000190821271655393892565696L,
    1.00000095396203387279611315204L, 1.00000047693298678780646311672L,
    1.00000023845050272773299000365L, 1.00000011921992596531107306779L,
    1.00000005960818905125947961244L, 1.00000002980350351465228018606L,
    1.00000001490155482836504123466L, 1.00000000745071178983542949198L,
    1.00000000372533402478845705482L, 1.00000000186265972351304900640L,
    1.00000000093132743241966818287L, 1.00000000046566290650337840730L,
    1.00000000023283118336765054920L,
};

const std::vector<double>& bernoulliDouble() {
  static const std::vector<double> b = [] {
    auto exact = bernoulliNumbers(60);
    std::vector<double> out;
    for (auto& r : exact) out.push_back(r.get_d());
    return out;
  }();
  return b;
}

double factorial(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

bool nonPositiveInteger(cplx a, int& d) {
  double r = std::round(a.real());
  if (r <= 0 && std::abs(a.imag()) < 1e-14 && std::abs(a.real() - r) < 1e-12) {
    d = static_cast<int>(-r);
    return true;
  }
  return false;
}

// exp of a power series with zero constant term.
std::vector<cplx> expOfSeries(const std::vector<cplx>& g) {
  std::vector<cplx> f(g.size());
  if (f.empty()) return f;
  f[0] = 1;
  for (size_t n = 1; n < g.size(); ++n) {
    cplx s = 0;
    for (size_t k = 1; k <= n; ++k) s += static_cast<double>(k) * g[k] * f[n - k];
    f[n] = s / static_cast<double>(n);
  }
  return f;
}

}  // namespace

double zetaValue(int k) {
  if (k < 2 || k > 32) fail(ErrorKind::Input, "zeta value index outside 2..32");
  return static_cast<double>(kZeta[k - 2]);
}

std::vector<Rational> bernoulliNumbers(int n) {
  // sum_{k=0}^{m} binom(m+1, k) B_k = 0
  std::vector<Rational> b(n + 1);
  b[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Rational s = 0;
    mpz_class binom = 1;  // binom(m+1, k)
    for (int k = 0; k < m; ++k) {
      s += Rational(binom) * b[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    b[m] = -s / (m + 1);
  }
  return b;
}

cplx logGamma(cplx x) {
  int d;
  if (nonPositiveInteger(x, d)) fail(ErrorKind::Pole, "Gamma pole at " + std::to_string(-d));
  cplx shift = 0;
  while (x.real() < 15.0) {
    shift += std::log(x);
    x += 1.0;
  }
  const auto& B = bernoulliDouble();
  cplx s = (x - 0.5) * std::log(x) - x + 0.5 * std::log(2 * kPi);
  cplx xp = x, x2 = x * x;
  for (int k = 1; k <= 12; ++k) {
    s += B[2 * k] / (2.0 * k * (2.0 * k - 1)) / xp;
    xp *= x2;
  }
  return s - shift;
}

cplx gammaFn(cplx x) {
  int d;
  if (nonPositiveInteger(x, d)) fail(ErrorKind::Pole, "Gamma pole at " + std::to_string(-d));
  if (x.real() < 0.5) return kPi / (std::sin(kPi * x) * gammaFn(1.0 - x));
  return std::exp(logGamma(x));
}

cplx polygamma(int m, cplx x) {
  if (m < 0) fail(ErrorKind::Input, "polygamma order must be nonnegative");
  int d;
  if (nonPositiveInteger(x, d)) fail(ErrorKind::Pole, "polygamma pole");
  cplx acc = 0;
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  const double mf = factorial(m);
  while (x.real() < 20.0 + m) {
    // psi^(m)(x) = psi^(m)(x+1) - (-1)^m m! / x^(m+1)
    acc -= sign * mf / std::pow(x, m + 1);
    x += 1.0;
  }
  const auto& B = bernoulliDouble();
  cplx s;
  if (m == 0) {
    s = std::log(x) - 0.5 / x;
    cplx x2 = x * x, xp = x2;
    for (int k = 1; k <= 12; ++k) {
      s -= B[2 * k] / (2.0 * k) / xp;
      xp *= x2;
    }
  } else {
    s = factorial(m - 1) / std::pow(x, m) + mf / (2.0 * std::pow(x, m + 1));
    for (int k = 1; k <= 12; ++k)
      s += B[2 * k] * factorial(2 * k + m - 1) / factorial(2 * k) / std::pow(x, 2 * k + m);
    s *= (m % 2 == 1) ? 1.0 : -1.0;
  }
  return s + acc;
}

GammaExpansion gammaExpand(cplx a, int order) {
  if (order < 1) fail(ErrorKind::Input, "gammaExpand order must be >= 1");
  GammaExpansion out;
  int d;
  if (nonPositiveInteger(a, d)) {
    // Gamma(-d + h) = Gamma(1 + h) / (h prod_{j=1}^d (h - j))
    const int len = order + 2;
    std::vector<cplx> g(len, 0);
    if (len > 1) g[1] = -kEulerGamma;
    for (int k = 2; k < len; ++k) {
      double zk = k <= 32 ? zetaValue(k) : polygamma(k - 1, 1.0).real() * (k % 2 ? -1 : 1) / factorial(k - 1);
      g[k] = (k % 2 == 0 ? 1.0 : -1.0) * zk / k;
    }
    std::vector<cplx> f = expOfSeries(g);
    for (int j = 1; j <= d; ++j) {
      // multiply by 1/(h - j) = -(1/j) sum (h/j)^i
      std::vector<cplx> r(len, 0);
      for (int n = 0; n < len; ++n) {
        cplx s = 0, pw = -1.0 / j;
        for (int i = 0; i <= n; ++i) {
          s += f[n - i] * pw;
          pw /= static_cast<double>(j);
        }
        r[n] = s;
      }
      f = std::move(r);
    }
    out.pole = true;
    out.lowest = -1;
    out.coeffs = std::move(f);
    return out;
  }
  const int len = order + 1;
  std::vector<cplx> g(len, 0);
  for (int k = 1; k < len; ++k) g[k] = polygamma(k - 1, a) / factorial(k);
  std::vector<cplx> f = expOfSeries(g);
  cplx g0 = gammaFn(a);
  for (auto& c : f) c *= g0;
  out.coeffs = std::move(f);
  return out;
}

NumericNilSeries::NumericNilSeries(int n, cplx constant) : c_(n, 0) {
  if (n < 1) fail(ErrorKind::Input, "nil series length must be >= 1");
  c_[0] = constant;
}

NumericNilSeries NumericNilSeries::generator(int n, cplx scale) {
  NumericNilSeries s(n);
  if (n > 1) s.c_[1] = scale;
  return s;
}

NumericNilSeries& NumericNilSeries::operator+=(const NumericNilSeries& o) {
  if (o.length() != length()) fail(ErrorKind::Input, "nil series length mismatch");
  for (int i = 0; i < length(); ++i) c_[i] += o.c_[i];
  return *this;
}

NumericNilSeries& NumericNilSeries::operator-=(const NumericNilSeries& o) {
  if (o.length() != length()) fail(ErrorKind::Input, "nil series length mismatch");
  for (int i = 0; i < length(); ++i) c_[i] -= o.c_[i];
  return *this;
}

NumericNilSeries& NumericNilSeries::operator*=(const NumericNilSeries& o) {
  if (o.length() != length()) fail(ErrorKind::Input, "nil series length mismatch");
  std::vector<cplx> r(length(), 0);
  for (int i = 0; i < length(); ++i)
    for (int j = 0; i + j < length(); ++j) r[i + j] += c_[i] * o.c_[j];
  c_ = std::move(r);
  return *this;
}

NumericNilSeries& NumericNilSeries::operator*=(cplx s) {
  for (auto& v : c_) v *= s;
  return *this;
}

NumericNilSeries NumericNilSeries::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  NumericNilSeries r(length(), 1.0), b = *this;
  while (k) {
    if (k & 1) r *= b;
    k >>= 1;
    if (k) b *= b;
  }
  return r;
}

NumericNilSeries NumericNilSeries::inverse() const {
  if (c_[0] == cplx(0)) fail(ErrorKind::Singular, "nil series with zero constant term");
  NumericNilSeries r(length());
  r.c_[0] = 1.0 / c_[0];
  for (int n = 1; n < length(); ++n) {
    cplx s = 0;
    for (int k = 1; k <= n; ++k) s += c_[k] * r.c_[n - k];
    r.c_[n] = -s / c_[0];
  }
  return r;
}

NumericNilSeries NumericNilSeries::rescale(cplx s) const {
  NumericNilSeries r = *this;
  cplx f = 1;
  for (auto& v : r.c_) {
    v *= f;
    f *= s;
  }
  return r;
}

NumericNilSeries expSeries(const NumericNilSeries& x) {
  std::vector<cplx> g = x.coeffs();
  cplx c0 = g[0];
  g[0] = 0;
  auto f = expOfSeries(g);
  NumericNilSeries r(x.length());
  for (int i = 0; i < x.length(); ++i) r[i] = f[i] * std::exp(c0);
  return r;
}

NumericNilSeries logSeries(const NumericNilSeries& x) {
  if (x[0] == cplx(0)) fail(ErrorKind::Singular, "log of nil series with zero constant term");
  NumericNilSeries f(x.length());
  f[0] = std::log(x[0]);
  for (int n = 1; n < x.length(); ++n) {
    cplx s = 0;
    for (int k = 1; k < n; ++k) s += static_cast<double>(k) * f[k] * x[n - k];
    f[n] = (x[n] - s / static_cast<double>(n)) / x[0];
  }
  return f;
}

void KahanSum::add(cplx x) {
  cplx y = x - comp_;
  cplx t = sum_ + y;
  comp_ = (t - sum_) - y;
  sum_ = t;
}

int threadCap() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (const char* env = std::getenv("QFOURIER_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return std::min(v, hw);
  }
  return hw;
}

void parallelFor(int n, const std::function<void(int)>& body) {
  int threads = std::min(threadCap(), n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex errMu;
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(errMu);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace qfourier
