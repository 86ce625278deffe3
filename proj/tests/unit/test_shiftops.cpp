#include <random>

#include "doctest.h"
#include "qfourier/ifunctions.hpp"
#include "qfourier/shiftops.hpp"
#include "support.hpp"

using namespace qfourier;
using qftest::diagonal;
using qftest::kindOf;

namespace {

Poly lam(int l, int a) { return Poly::var(equivariantVars(l), a); }
Poly zvar(int l) { return Poly::var(equivariantVars(l), l); }

IntMatrix randomWeights(int n, int l, std::mt19937& rng) {
  std::uniform_int_distribution<int> w(-2, 2);
  IntMatrix m(n, std::vector<int>(l));
  for (auto& row : m)
    for (auto& x : row) x = w(rng);
  return m;
}

}  // namespace

TEST_CASE("shift of 1 on diagonal C^n") {
  for (int n = 1; n <= 4; ++n) {
    auto one = LocalizedFunction(Poly(equivariantVars(1), 1));
    CHECK(applyShift(diagonal(n), {1}, one) == LocalizedFunction(lam(1, 0).pow(n)));
    Poly two = (lam(1, 0) * (lam(1, 0) - zvar(1))).pow(n);
    CHECK(applyShift(diagonal(n), {2}, one) == LocalizedFunction(two));
    // S^-1 1 = 1 / (l + z)^n
    auto inv = applyShift(diagonal(n), {-1}, one);
    CHECK(inv * LocalizedFunction((lam(1, 0) + zvar(1)).pow(n)) == one);
  }
}

TEST_CASE("zero shift is the identity") {
  for (unsigned seed = 0; seed < 20; ++seed) {
    auto f = randomLocalized(2, seed);
    CHECK(applyShift(qftest::f1Data().weights, {0, 0}, f) == f);
  }
}

TEST_CASE("prefactor is a finite product") {
  auto s = shiftOperator({{1, 0}, {0, 1}, {1, -1}}, {2, 1});
  // m = (2, 1, 1): l1 (l1 - z) * l2 * (l1 - l2)
  Poly l1 = lam(2, 0), l2 = lam(2, 1), z = zvar(2);
  CHECK(s.prefactor == LocalizedFunction(l1 * (l1 - z) * l2 * (l1 - l2)));
  auto t = shiftOperator({{1, 0}, {0, 1}}, {0, -2});
  CHECK(t.prefactor == LocalizedFunction::fraction(Poly(equivariantVars(2), 1), {l2 + z, l2 + z * Rational(2)}));
}

TEST_CASE("commutation relation") {
  CHECK(checkCommutation(diagonal(3), {1}, 0));
  CHECK(checkCommutation(diagonal(2), {0}, 0));
  std::mt19937 rng(11);
  IntMatrix d = randomWeights(3, 2, rng);
  CHECK(checkCommutation(d, {1, -1}, 0, 100, 5));
  CHECK(checkCommutation(d, {1, -1}, 1, 100, 9));
  for (int trial = 0; trial < 5; ++trial) {
    IntMatrix w = randomWeights(4, 2, rng);
    std::vector<int> k{std::uniform_int_distribution<int>(-2, 2)(rng), std::uniform_int_distribution<int>(-2, 2)(rng)};
    CHECK(checkCommutation(w, k, trial % 2, 10, trial));
  }
}

TEST_CASE("composition of shifts") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> kd(-2, 2);
  for (int i = 0; i < 100; ++i) {
    IntMatrix w = randomWeights(3, 2, rng);
    std::vector<int> k1{kd(rng), kd(rng)}, k2{kd(rng), kd(rng)};
    std::vector<int> k12{k1[0] + k2[0], k1[1] + k2[1]};
    auto f = randomLocalized(2, 1000 + i);
    CHECK(applyShift(w, k1, applyShift(w, k2, f)) == applyShift(w, k12, f));
  }
}

TEST_CASE("GKZ relations") {
  auto rel = gkzRelation(diagonal(3), {1});
  CHECK(rel.positivePart == lam(1, 0).pow(3));
  CHECK(rel.negativePart == Poly(equivariantVars(1), 1));

  auto trivial = gkzRelation({{0, 1}, {0, 2}}, {1, 0});
  CHECK(trivial.positivePart == Poly(equivariantVars(2), 1));
  CHECK(trivial.negativePart == Poly(equivariantVars(2), 1));

  // F1 with k = e2: D.k = (0, 1, 0, 1), so positive part l2 (l1 + l2).
  auto f1 = gkzRelation(qftest::f1Data().weights, {0, 1});
  CHECK(f1.positivePart == lam(2, 1) * (lam(2, 0) + lam(2, 1)));
  auto f1b = gkzRelation(qftest::f1Data().weights, {1, -1});
  CHECK(f1b.positivePart == lam(2, 0).pow(2));
  CHECK(f1b.negativePart == lam(2, 1));

  CHECK(kindOf([] { gkzRelation(diagonal(2), {0}); }) == ErrorKind::Input);
}

TEST_CASE("differential operators print canonically") {
  CHECK(toDifferential(gkzRelation(diagonal(2), {1})).str() == "q - th^2");
  CHECK(toDifferential(gkzRelation(diagonal(3), {1})).str() == "q - th^3");
  CHECK(toDifferential(gkzRelation(qftest::p1p1Data().weights, {1, 0})).str() == "q1 - th1^2");
  CHECK(toDifferential(gkzRelation({{0, 1}, {0, 2}}, {1, 0})).str() == "q1 - 1");
  CHECK(toDifferential(gkzRelation(diagonal(2), {-1})).str() == "-1 + q^-1*th^2");
}

TEST_CASE("applyDifferential on simple series") {
  QuotientRing pt = QuotientRing::point();
  NovikovSeries one(pt, {Rational(1)}, 5);
  one.set({0}, ZLaurent::constant(pt.one()));
  DifferentialOperator theta(1);
  theta.add({0}, lam(1, 0));
  CHECK(applyDifferential(theta, one).terms().empty());

  NovikovSeries mono(pt, {Rational(1)}, 5);
  ZLaurent c = ZLaurent::constant(pt.scalar(7), -2);
  mono.set({3}, c);
  auto out = applyDifferential(theta, mono);
  CHECK(out.at({3}) == c.shiftZ(1) * Rational(3));
  CHECK(out.order() == 5);

  auto op = toDifferential(gkzRelation(diagonal(2), {1}));
  NovikovSeries low(pt, {Rational(1)}, 1);
  CHECK(kindOf([&] { applyDifferential(op, low); }) == ErrorKind::Truncation);
}

TEST_CASE("quantum differential equation of P^1 annihilates J") {
  auto op = toDifferential(gkzRelation(diagonal(2), {1}));
  auto j = jProjective(2, 5);
  auto out = applyDifferential(op, j);
  CHECK(out.order() == 4);
  CHECK(out.terms().empty());
  for (int n = 1; n <= 4; ++n) {
    auto r = applyDifferential(toDifferential(gkzRelation(diagonal(n), {1})), jProjective(n, 6));
    CHECK(r.terms().empty());
  }
}

TEST_CASE("commutator of theta and q^k") {
  QuotientRing pt = QuotientRing::point();
  NovikovSeries s(pt, {Rational(1), Rational(1)}, 10);
  s.set({1, 2}, ZLaurent::constant(pt.scalar(3), -1));
  s.set({0, 4}, ZLaurent::constant(pt.scalar(-2), 2));
  const std::vector<int> k{2, 1};
  for (int a = 0; a < 2; ++a) {
    DifferentialOperator theta(2);
    theta.add({0, 0}, lam(2, a));
    // theta (q^k s) - q^k (theta s) = z k_a q^k s
    auto lhs = applyDifferential(theta, s.shifted(k)) - applyDifferential(theta, s).shifted(k);
    NovikovSeries rhs = s.shifted(k) * Rational(k[a]);
    NovikovSeries rz(pt, rhs.omega(), rhs.order());
    for (auto& [d, c] : rhs.terms()) rz.set(d, c.shiftZ(1));
    CHECK(lhs == rz);
  }
}
