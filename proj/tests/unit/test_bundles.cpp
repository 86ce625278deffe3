#include <algorithm>

#include "doctest.h"
#include "qfourier/bundles.hpp"
#include "qfourier/glsm.hpp"
#include "support.hpp"

using namespace qfourier;
using qftest::kindOf;

TEST_CASE("Leray-Hirsch over a point") {
  for (int n = 1; n <= 4; ++n) {
    QuotientRing r = lerayHirsch(splitBundle(0, std::vector<int>(n, 0)));
    CHECK(r.dimension() == n);
    CHECK(r.gen("p").pow(n).isZero());
    CHECK(r.integrate(r.gen("p").pow(n - 1)) == 1);
  }
}

TEST_CASE("Leray-Hirsch of a trivial bundle is a product") {
  QuotientRing r = lerayHirsch(splitBundle(2, {0, 0}));
  CHECK(r.dimension() == 6);
  CHECK(r.gen("p").pow(2).isZero());
  CHECK(r.integrate(r.gen("p") * r.gen("h").pow(2)) == 1);
}

TEST_CASE("Leray-Hirsch of O + O(-1) over P^1 is F1") {
  QuotientRing lh = lerayHirsch(splitBundle(1, {0, -1}));
  CHECK(lh.dimension() == 4);
  auto f1 = quotientPresentation(qftest::f1Data());
  const QuotientRing& R = f1.ring;
  RingElement h = R.gen(0), p = R.gen(0) + R.gen(1);
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; a + b <= 2; ++b) {
      Rational lhs = lh.integrate(lh.gen("h").pow(a) * lh.gen("p").pow(b));
      Rational rhs = R.integrate(h.pow(a) * p.pow(b));
      CHECK(lhs == rhs);
    }
}

TEST_CASE("small vertical quantum rings") {
  QhSvRing pt = qhSv(splitBundle(0, {0, 0}));
  CHECK(pt.ring.gen("p") * pt.ring.gen("p") == pt.q());

  QhSvRing f1 = qhSv(splitBundle(1, {0, -1}));
  RingElement p = f1.ring.gen("p"), h = f1.ring.gen("h");
  CHECK(p * p == f1.q() + h * p);

  // Setting q = 0 recovers the classical relation.
  QuotientRing cl = qhSvClassical(splitBundle(1, {0, -1}));
  CHECK(cl.gen("p") * cl.gen("p") == cl.gen("h") * cl.gen("p"));
}

TEST_CASE("root decomposition over a point, rank 2") {
  RootAlgebra A(splitBundle(0, {0, 0}));
  auto dec = rootDecomposition(A);
  REQUIRE(dec.roots.size() == 2);
  CHECK(A.equal(dec.roots[0], A.s()));
  CHECK(A.equal(dec.roots[1], A.scale(A.s(), -1)));
  auto half = A.scale(A.one(), frac(1, 2));
  auto ps = A.scale(A.mul(A.p(), A.s(-1)), frac(1, 2));
  CHECK(A.equal(dec.idempotents[0], A.add(half, ps)));
  CHECK(A.equal(dec.idempotents[1], A.add(half, A.scale(ps, -1))));
  CHECK(dec.productMatches);
  CHECK(dec.orthogonal);
  CHECK(dec.complete);
  CHECK(dec.eigen);
}

TEST_CASE("root decomposition of O + O(-1) over P^1 has corrections") {
  RootAlgebra A(splitBundle(1, {0, -1}));
  auto dec = rootDecomposition(A);
  CHECK(dec.productMatches);
  CHECK(dec.orthogonal);
  CHECK(dec.complete);
  CHECK(dec.eigen);
  for (int j = 0; j < 2; ++j) CHECK(!A.equal(dec.roots[j], A.mulRaw(A.zeta(j), A.s())));
  // Multiplication by h is block diagonal in the idempotent splitting.
  auto h = A.fromBase(A.base().gen("h"));
  CHECK(A.isZero(A.mul(A.mul(dec.idempotents[0], h), dec.idempotents[1])));
}

TEST_CASE("root decomposition of trivial bundles is uncorrected") {
  for (int r = 2; r <= 4; ++r) {
    RootAlgebra A(splitBundle(2, std::vector<int>(r, 0)));
    auto dec = rootDecomposition(A);
    for (int j = 0; j < r; ++j) CHECK(A.equal(dec.roots[j], A.mulRaw(A.zeta(j), A.s())));
    CHECK(dec.productMatches);
    CHECK(dec.complete);
  }
}

TEST_CASE("root decomposition identities for twisted bundles") {
  for (int r = 2; r <= 5; ++r) {
    std::vector<int> tw;
    for (int i = 0; i < r; ++i) tw.push_back(-(i % 3));
    for (int m : {1, 2}) {
      RootAlgebra A(splitBundle(m, tw));
      auto dec = rootDecomposition(A);
      CHECK(dec.productMatches);
      CHECK(dec.orthogonal);
      CHECK(dec.complete);
      CHECK(dec.eigen);
    }
  }
}

TEST_CASE("Euler spectrum") {
  auto s1 = eulerSpectrum(splitBundle(0, {0, 0}), 1.0);
  REQUIRE(s1.eigenvalues.size() == 2);
  CHECK(s1.eigenvalues[0].real() == doctest::Approx(-2));
  CHECK(s1.eigenvalues[1].real() == doctest::Approx(2));

  auto s2 = eulerSpectrum(splitBundle(0, {0, 0}), 1e6);
  CHECK(s2.eigenvalues[0].real() == doctest::Approx(-2000));
  CHECK(s2.eigenvalues[1].real() == doctest::Approx(2000));

  auto s3 = eulerSpectrum(splitBundle(1, {0, 0}), 1e6);
  REQUIRE(s3.clusters.size() == 2);
  CHECK(s3.clusters[0].size() == 2);
  CHECK(s3.clusters[1].size() == 2);
  CHECK(s3.ratio() <= 0.05);

  // Summand order does not change the spectrum.
  auto a = eulerSpectrum(splitBundle(2, {0, -1, -2}), 1e4);
  auto b = eulerSpectrum(splitBundle(2, {-2, 0, -1}), 1e4);
  REQUIRE(a.eigenvalues.size() == b.eigenvalues.size());
  for (auto x : a.eigenvalues) {
    double best = 1e300;
    for (auto y : b.eigenvalues) best = std::min(best, std::abs(x - y));
    CHECK(best < 1e-6 * std::abs(x));
  }
  CHECK(a.ratio() < 0.05);

  CHECK(kindOf([] { eulerSpectrum(splitBundle(1, {0, 0}), 0.0); }) == ErrorKind::Input);
}
