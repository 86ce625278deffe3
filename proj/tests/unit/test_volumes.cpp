#include <cmath>
#include <random>

#include "doctest.h"
#include "qfourier/volumes.hpp"
#include "support.hpp"

using namespace qfourier;
using qftest::kindOf;

namespace {

double rel(cplx a, cplx b) { return std::abs(a / b - 1.0); }

}  // namespace

TEST_CASE("equivariant volume of C^n") {
  VarsPtr v = equivariantVars(1);
  Poly lam = Poly::var(v, 0);
  for (int n = 1; n <= 4; ++n)
    CHECK(equivariantVolume(qftest::diagonal(n)) == LocalizedFunction::fraction(Poly(v, 1), std::vector<Poly>(n, lam)));
  CHECK(equivariantVolume({{1}, {2}}) ==
        LocalizedFunction::fraction(Poly(v, frac(1, 2)), {lam, lam}));
  CHECK(equivariantVolume({}, 1) == LocalizedFunction(Poly(v, 1)));
  CHECK(kindOf([] { equivariantVolume({{1}, {0}}); }) == ErrorKind::Unsupported);
}

TEST_CASE("JK volumes of diagonal models") {
  for (int n = 1; n <= 6; ++n) {
    Rational fact = 1;
    for (int i = 2; i < n; ++i) fact *= i;
    for (Rational t : {Rational(1), frac(5, 2), Rational(7)}) {
      Rational expected = 1;
      for (int i = 0; i < n - 1; ++i) expected *= t;
      CHECK(jkVolume(qftest::diagonal(n), {t}) == expected / fact);
      CHECK(jkVolume(qftest::diagonal(n), {-t}) == 0);
    }
  }
  CHECK(kindOf([] { jkVolume(qftest::diagonal(3), {0}); }) == ErrorKind::Wall);
  CHECK(jkVolume({{1}, {2}}, {Rational(3)}) == frac(3, 2));
}

TEST_CASE("polytope oracle") {
  CHECK(polytopeVolumeOracle(qftest::diagonal(3), {1}) == frac(1, 2));
  CHECK(polytopeVolumeOracle(qftest::diagonal(3), {2}) == 2);
  CHECK(polytopeVolumeOracle(qftest::diagonal(3), {-1}) == 0);
  CHECK(polytopeVolumeOracle({{1}, {2}}, {Rational(3)}) == frac(3, 2));
  CHECK(kindOf([] { polytopeVolumeOracle({{1}, {-1}}, {1}); }) == ErrorKind::Unsupported);
}

TEST_CASE("JK volumes agree with the polytope oracle") {
  // F1 and P1 x P1 in every chamber.
  for (auto w : {qftest::f1Data().weights, qftest::p1p1Data().weights}) {
    for (std::vector<Rational> t : {std::vector<Rational>{3, 1}, std::vector<Rational>{1, 3},
                                    std::vector<Rational>{frac(7, 2), frac(1, 3)}})
      CHECK(jkVolume(w, t) == polytopeVolumeOracle(w, t));
  }
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(0, 3), size(3, 6), tv(1, 9);
  int tested = 0;
  while (tested < 25) {
    const int n = size(rng), l = 1 + tested % 2;
    IntMatrix w(n, std::vector<int>(l));
    bool ok = true;
    for (auto& row : w) {
      for (auto& x : row) x = entry(rng);
      ok = ok && std::any_of(row.begin(), row.end(), [](int x) { return x != 0; });
    }
    if (!ok || matrixRank(toRational(w)) != l) continue;
    std::vector<Rational> t;
    for (int a = 0; a < l; ++a) t.push_back(frac(tv(rng), 1 + a));
    if (onWall(w, t)) continue;
    CHECK(jkVolume(w, t) == polytopeVolumeOracle(w, t));
    ++tested;
  }
}

TEST_CASE("Gamma class") {
  CHECK(std::abs(gammaClassNumeric({}, 1)[0] - 1.0) < 1e-15);
  auto p1 = gammaClassNumeric({2.0}, 2);
  CHECK(std::abs(p1[0] - 1.0) < 1e-15);
  CHECK(std::abs(p1[1] + 2 * kEulerGamma) < 1e-15);
  auto p2 = gammaClassNumeric({1.0, 1.0, 1.0}, 3);
  CHECK(std::abs(p2[1] + 3 * kEulerGamma) < 1e-14);
  const double top = 4.5 * kEulerGamma * kEulerGamma + 1.5 * kPi * kPi / 6;
  CHECK(std::abs(p2[2] - top) < 1e-13);
}

TEST_CASE("quantum volume of a point is exp(-q/z)") {
  CHECK(std::abs(quantumVolumeSeries(1, 1.0, 1.0).value - std::exp(-1.0)) < 1e-14);
  CHECK(std::abs(quantumVolumeSeries(1, 3.0, 2.0).value - std::exp(-1.5)) < 1e-14);
}

TEST_CASE("residue and cohomological routes agree") {
  for (int n = 1; n <= 4; ++n)
    for (double q : {0.5, 1.0, 5.0}) {
      auto a = quantumVolumeSeries(n, q, 1.0), b = quantumVolumeCohomological(n, q, 1.0);
      CHECK(rel(a.value, b.value) < 1e-10);
    }
}

TEST_CASE("small-q asymptote") {
  // n = 2: Pi = -log(sfq) - 2 gamma + O(sfq).
  for (double q : {1e-6, 1e-9}) {
    auto v = quantumVolumeSeries(2, q, 1.0);
    CHECK(std::abs(v.value - (-std::log(q) - 2 * kEulerGamma)) < 1e-4);
  }
  auto v3 = quantumVolumeSeries(3, 1e-12, 1.0);
  const double L = -std::log(1e-12);
  CHECK(std::abs(v3.value.real() / (L * L / 2) - 1) < 0.2);
}

TEST_CASE("Mellin-Barnes agrees with the residue series") {
  MellinOptions opt;
  opt.epsilon = 0.5;
  CHECK(std::abs(mellinBarnes(1, 1.0, 1.0, opt).value - std::exp(-1.0)) < 1e-10);
  for (int n = 1; n <= 3; ++n)
    for (double q : {0.5, 1.0, 5.0}) CHECK(rel(mellinBarnes(n, q, 1.0).value, quantumVolumeSeries(n, q, 1.0).value) < 1e-9);
  CHECK(rel(mellinBarnes(2, 1.0, 0.5).value, quantumVolumeSeries(2, 1.0, 0.5).value) < 1e-9);
  MellinOptions bad;
  bad.epsilon = 0;
  CHECK(kindOf([&] { mellinBarnes(2, 1.0, 1.0, bad); }) == ErrorKind::Pole);
  bad.epsilon = -2.0;
  CHECK(kindOf([&] { mellinBarnes(2, 1.0, 1.0, bad); }) == ErrorKind::Pole);
  bad.epsilon = -0.5;
  CHECK(kindOf([&] { mellinBarnes(2, 1.0, 1.0, bad); }) == ErrorKind::Input);
}

TEST_CASE("large-q decay and saddle asymptotics") {
  CHECK(std::abs(saddleAsymptotic(1, 3.0) - std::exp(-3.0)) < 1e-15);
  CHECK(kindOf([] { saddleAsymptotic(2, 0); }) == ErrorKind::Input);
  double prevRatio = 1e9;
  for (double sfq : {1e2, 1e3, 1e4, 1e5, 1e6}) {
    MellinOptions opt;
    opt.epsilon = std::cbrt(sfq);
    auto mb = mellinBarnes(3, sfq, 1.0, opt);
    double r = rel(mb.value, saddleAsymptotic(3, sfq));
    CHECK(r < prevRatio);
    prevRatio = r;
    if (sfq == 1e6) CHECK(r < 0.05);
  }
  // The residue series cancels catastrophically in this regime.
  CHECK(kindOf([] { quantumVolumeSeries(3, 1e6, 1.0); }) == ErrorKind::Divergence);
}

TEST_CASE("equivariant quantum volume of C^n") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> lam(0.1, 2.5), zz(0.3, 2.0);
  for (int n = 1; n <= 3; ++n)
    for (int i = 0; i < 5; ++i) {
      const double l = lam(rng), z = zz(rng);
      cplx expected = std::pow(z, n * l / z) * std::pow(gammaFn(l / z), n);
      cplx got = equivariantQuantumVolume(affineSpace(n), std::vector<double>(n, 0), std::vector<double>(n, l), z);
      CHECK(rel(got, expected) < 1e-12);
    }
  CHECK(kindOf([] { equivariantQuantumVolume(affineSpace(1), {0}, {-1.0}, 1.0); }) == ErrorKind::Pole);
}

TEST_CASE("oscillatory integral of a single ray is a Gamma value") {
  auto r = lgOscillatoryIntegral({{1}}, {0.0}, {0.5}, 1.0);
  CHECK(std::abs(r.value - std::sqrt(kPi)) < 1e-12);
  CHECK(r.errorEstimate < 1e-10);
  CHECK(kindOf([] { lgOscillatoryIntegral({{1}}, {0.0}, {-0.5}, 1.0); }) == ErrorKind::Divergence);
}

TEST_CASE("oscillatory mirror of P^1") {
  const IntMatrix rays{{1}, {-1}};
  for (double z : {0.5, 1.0})
    for (double l : {0.3, -0.2, 0.7}) {
      double osc = lgOscillatoryIntegral(rays, {-3, -3}, {l}, z).value;
      cplx eq = equivariantQuantumVolume(projectiveLine(), {-3, -3}, {l}, z);
      CHECK(rel(eq, osc) < 1e-9);
    }
  EquivariantVolumeOptions reg;
  reg.regularize = true;
  for (double z : {0.5, 1.0}) {
    double osc = lgOscillatoryIntegral(rays, {-3, -3}, {0.0}, z).value;
    CHECK(rel(equivariantQuantumVolume(projectiveLine(), {-3, -3}, {0.0}, z, reg), osc) < 1e-8);
  }
  CHECK(kindOf([] { equivariantQuantumVolume(projectiveLine(), {-3, -3}, {0.0}, 1.0); }) == ErrorKind::Pole);
  // lambda -> -lambda symmetry for equal tau.
  CHECK(std::abs(lgOscillatoryIntegral(rays, {-2, -2}, {0.4}, 1.0).value /
                     lgOscillatoryIntegral(rays, {-2, -2}, {-0.4}, 1.0).value -
                 1) < 1e-12);
}

TEST_CASE("oscillatory mirror of P^1 x P^1") {
  ToricTarget x;
  x.glsm = qftest::p1p1Data();
  x.section = {{1, 0}, {0, 0}, {0, 1}, {0, 0}};
  const IntMatrix rays{{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  const std::vector<double> tau{-2, -2.5, -3, -2};
  double osc = lgOscillatoryIntegral(rays, tau, {0.3, 0.45}, 1.0, 1e-12).value;
  CHECK(rel(equivariantQuantumVolume(x, tau, {0.3, 0.45}, 1.0), osc) < 1e-8);
}

TEST_CASE("quantum DH measure") {
  auto s = quantumDHMeasure(-20, -20, 1.0, parseGrid("-30:30:0.5"));
  REQUIRE(s.size() == 121);
  for (auto& x : s) {
    CHECK(std::isfinite(x.logValue));
    CHECK(x.logValue < 0);
    if (std::abs(x.t) <= 1.5) CHECK(x.value >= 1 - 1e-8);
    if (std::abs(x.t) <= 15) CHECK(x.value >= 0.99);
  }
  auto at = [&](double t) { return quantumDHMeasure(-20, -20, 1.0, {t})[0].value; };
  CHECK(std::abs(at(0) - std::exp(-2 * std::exp(-20.0))) < 1e-16);
  CHECK(std::log10(at(25)) == doctest::Approx(-std::exp(5.0) / std::log(10.0)).epsilon(1e-6));
  for (size_t i = 0; i < s.size(); ++i) CHECK(s[i].value == doctest::Approx(s[s.size() - 1 - i].value));
  CHECK(kindOf([] { parseGrid("1:0:1"); }) == ErrorKind::Input);
  CHECK(kindOf([] { parseGrid("a:b"); }) == ErrorKind::Input);
}

TEST_CASE("central charges") {
  CHECK(centralCharge(3, 0, 1.0, 1.0).value == quantumVolumeSeries(3, 1.0, 1.0).value);
  for (int n = 2; n <= 3; ++n)
    for (int m = -1; m <= 2; ++m)
      CHECK(std::abs(centralCharge(n, m, 1.0, 1.0).value - centralChargeCohomological(n, m, 1.0, 1.0).value) < 1e-8);
  // (1 - O(1))^n vanishes on P^{n-1}.
  for (int n = 2; n <= 4; ++n) {
    cplx s = 0;
    double scale = 0, binom = 1;
    for (int k = 0; k <= n; ++k) {
      cplx zk = centralCharge(n, k - 1, 2.0, 1.0).value;
      s += (k % 2 ? -binom : binom) * zk;
      scale = std::max(scale, std::abs(zk));
      binom = binom * (n - k) / (k + 1);
    }
    CHECK(std::abs(s) < 1e-9 * scale);
  }
}
