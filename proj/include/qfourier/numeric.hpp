#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "qfourier/poly.hpp"

namespace qfourier {

using cplx = std::complex<double>;

constexpr double kEulerGamma = 0.577215664901532860606512090082;
constexpr double kPi = 3.14159265358979323846264338328;

/// zeta(k) for 2 <= k <= 32.
double zetaValue(int k);
/// Exact Bernoulli numbers B_0..B_n with B_1 = -1/2.
std::vector<Rational> bernoulliNumbers(int n);

cplx logGamma(cplx x);  // principal branch continued from the positive axis
cplx gammaFn(cplx x);
/// psi^(m)(x) for m >= 0.
cplx polygamma(int m, cplx x);

/// Expansion of Gamma near a. For a = -d (d >= 0 integer) the data is the
/// Laurent series sum_{k>=-1} c_k h^k, otherwise the Taylor series.
struct GammaExpansion {
  bool pole = false;
  int lowest = 0;             // -1 at a pole, 0 otherwise
  std::vector<cplx> coeffs;   // coeffs[i] multiplies h^(lowest + i)
  cplx at(int k) const { return k - lowest < static_cast<int>(coeffs.size()) && k >= lowest ? coeffs[k - lowest] : cplx(0); }
};
GammaExpansion gammaExpand(cplx a, int order);

/// Element of C[p]/(p^n) with complex coefficients.
class NumericNilSeries {
 public:
  NumericNilSeries() = default;
  explicit NumericNilSeries(int n, cplx constant = 0);
  static NumericNilSeries generator(int n, cplx scale = 1);

  int length() const { return static_cast<int>(c_.size()); }
  cplx operator[](int k) const { return k < length() ? c_[k] : cplx(0); }
  cplx& operator[](int k) { return c_.at(k); }
  const std::vector<cplx>& coeffs() const { return c_; }

  NumericNilSeries& operator+=(const NumericNilSeries& o);
  NumericNilSeries& operator-=(const NumericNilSeries& o);
  NumericNilSeries& operator*=(const NumericNilSeries& o);
  NumericNilSeries& operator*=(cplx s);
  friend NumericNilSeries operator+(NumericNilSeries a, const NumericNilSeries& b) { return a += b; }
  friend NumericNilSeries operator-(NumericNilSeries a, const NumericNilSeries& b) { return a -= b; }
  friend NumericNilSeries operator*(NumericNilSeries a, const NumericNilSeries& b) { return a *= b; }
  friend NumericNilSeries operator*(NumericNilSeries a, cplx s) { return a *= s; }

  NumericNilSeries pow(int k) const;
  NumericNilSeries inverse() const;
  /// p -> s p.
  NumericNilSeries rescale(cplx s) const;

 private:
  std::vector<cplx> c_;
};

/// exp / log on the nilpotent part; exp(c + n) = e^c exp(n).
NumericNilSeries expSeries(const NumericNilSeries& x);
NumericNilSeries logSeries(const NumericNilSeries& x);

/// Compensated summation.
class KahanSum {
 public:
  void add(cplx x);
  cplx value() const { return sum_; }

 private:
  cplx sum_ = 0, comp_ = 0;
};

/// Thread cap from QFOURIER_THREADS (default: hardware concurrency).
int threadCap();
/// Runs body(i) for i in [0, n) on up to threadCap() threads.
void parallelFor(int n, const std::function<void(int)>& body);

}  // namespace qfourier
