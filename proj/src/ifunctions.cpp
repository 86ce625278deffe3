#include "qfourier/ifunctions.hpp"

#include <algorithm>

#include "qfourier/errors.hpp"
#include "qfourier/numeric.hpp"

namespace qfourier {

namespace {

ZLaurent linearInZ(const RingElement& u, const Rational& c) {
  ZLaurent x = ZLaurent::constant(u);
  x += ZLaurent::constant(u.ring().scalar(c), 1);
  return x;
}

NovikovSeries::Exponent concat(const NovikovSeries::Exponent& a, int b) {
  NovikovSeries::Exponent e = a;
  e.push_back(b);
  return e;
}

}  // namespace

ZLaurent hypergeometricRatio(const RingElement& u, int m) {
  const QuotientRing& ring = u.ring();
  if (m >= 0) {
    ZLaurent den = ZLaurent::constant(ring.one());
    for (int c = 1; c <= m; ++c) den *= linearInZ(u, c);
    return m == 0 ? den : nilpotentInverse(den);
  }
  ZLaurent num = ZLaurent::constant(ring.one());
  for (int c = m + 1; c <= 0; ++c) num *= linearInZ(u, c);
  return num;
}

ZLaurent mapLaurent(const ZLaurent& x, const QuotientRing& target, const std::vector<ZLaurent>& images) {
  ZLaurent out(target);
  for (auto& [j, coeff] : x.coeffs()) {
    Poly lifted = coeff.lift();
    if (lifted.vars() && lifted.vars()->size() != static_cast<int>(images.size()))
      fail(ErrorKind::Input, "ring map needs one image per generator");
    std::vector<std::vector<ZLaurent>> powers(images.size());
    for (auto& [mono, c] : lifted.terms()) {
      ZLaurent t = ZLaurent::constant(target.scalar(c), j);
      for (size_t i = 0; i < mono.size(); ++i) {
        if (mono[i] == 0) continue;
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(ZLaurent::constant(target.one()));
        while (static_cast<int>(pw.size()) <= mono[i]) pw.push_back(pw.back() * images[i]);
        t *= pw[mono[i]];
      }
      out += t;
    }
  }
  return out;
}

NovikovSeries jProjective(int n, int order) {
  if (n < 1 || order < 0) fail(ErrorKind::Input, "jProjective needs n >= 1 and order >= 0");
  QuotientRing ring = QuotientRing::truncated("p", n);
  NovikovSeries out(ring, {Rational(1)}, order);
  out.setPrefactor({ring.gen(0)});
  const RingElement p = ring.gen(0);
  ZLaurent den = ZLaurent::constant(ring.one());
  out.set({0}, den);
  for (int d = 1; d <= order; ++d) {
    ZLaurent f = linearInZ(p, d);
    for (int i = 0; i < n; ++i) den *= f;
    out.set({d}, nilpotentInverse(den));
  }
  return out;
}

NovikovSeries toricI(const QuotientData& quotient, int order) {
  if (order < 0) fail(ErrorKind::Input, "order must be nonnegative");
  const QuotientRing& ring = quotient.ring;
  const auto& glsm = quotient.glsm;
  std::vector<RingElement> u;
  for (int i = 0; i < glsm.n(); ++i) u.push_back(quotient.divisor(i));

  std::vector<std::vector<int>> classes;
  for (auto& d : quotient.classesUpTo(0, order))
    if (quotient.supportsClass(d)) classes.push_back(d);
  std::vector<ZLaurent> coeffs(classes.size());
  parallelFor(static_cast<int>(classes.size()), [&](int idx) {
    const auto& d = classes[idx];
    ZLaurent c = ZLaurent::constant(ring.one());
    for (int i = 0; i < glsm.n(); ++i) {
      int m = 0;
      for (int a = 0; a < glsm.l(); ++a) m += glsm.weights[i][a] * d[a];
      if (m != 0) c *= hypergeometricRatio(u[i], m);
    }
    coeffs[idx] = c;
  });

  NovikovSeries out(ring, glsm.chamber, order);
  std::vector<RingElement> pre;
  for (int a = 0; a < glsm.l(); ++a) pre.push_back(ring.gen(a));
  out.setPrefactor(pre);
  for (size_t i = 0; i < classes.size(); ++i) out.set(classes[i], coeffs[i]);
  return out;
}

EquivariantI toricIEquivariant(const QuotientData& quotient, int order) {
  const auto& glsm = quotient.glsm;
  const int n = glsm.n(), l = glsm.l();
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("m" + std::to_string(i + 1));
  names.push_back("z");
  EquivariantI out;
  out.vars = makeVars(names);
  const VarsPtr& vars = out.vars;
  Poly z = Poly::var(vars, n);
  for (auto& d : quotient.classesUpTo(0, order))
    if (quotient.supportsClass(d)) out.classes.push_back(d);

  for (auto& fp : quotient.fixedPoints) {
    // lambda* = -D_S^{-1} mu_S, u_i = D_i . lambda* + mu_i
    std::vector<Poly> lam(l, Poly(vars));
    for (int a = 0; a < l; ++a)
      for (int k = 0; k < l; ++k) lam[a] -= Poly::var(vars, fp.subset[k]) * fp.inverse[a][k];
    std::vector<Poly> u;
    for (int i = 0; i < n; ++i) {
      Poly x = Poly::var(vars, i);
      for (int a = 0; a < l; ++a) x += lam[a] * Rational(glsm.weights[i][a]);
      u.push_back(x);
    }
    std::vector<LocalizedFunction> vals(out.classes.size());
    parallelFor(static_cast<int>(out.classes.size()), [&](int idx) {
      const auto& d = out.classes[idx];
      Poly num(vars, 1);
      std::vector<Poly> den;
      for (int i = 0; i < n; ++i) {
        int m = 0;
        for (int a = 0; a < l; ++a) m += glsm.weights[i][a] * d[a];
        for (int c = 1; c <= m; ++c) den.push_back(u[i] + z * Rational(c));
        for (int c = m + 1; c <= 0; ++c) num *= u[i] + z * Rational(c);
      }
      vals[idx] = LocalizedFunction::fraction(num, den);
    });
    std::map<std::vector<int>, LocalizedFunction> m;
    for (size_t i = 0; i < vals.size(); ++i) m.emplace(out.classes[i], vals[i]);
    out.values.push_back(std::move(m));
    out.restrictions.push_back(u);
  }
  return out;
}

NovikovSeries splitBundleJ(int baseDim, const std::vector<int>& twists, int order) {
  if (baseDim < 0 || order < 0) fail(ErrorKind::Input, "splitBundleJ needs baseDim >= 0 and order >= 0");
  for (int t : twists)
    if (t > 0) fail(ErrorKind::Unsupported, "positive twist O(" + std::to_string(t) + ") is not supported");
  if (baseDim == 0) {
    VarsPtr v = makeVars({"l"});
    QuotientRing ring(v, {});
    NovikovSeries out(ring, {}, order);
    out.set({}, ZLaurent::constant(ring.one()));
    return out;
  }
  VarsPtr v = makeVars({"h", "l"});
  QuotientRing ring(v, {Poly::var(v, 0).pow(baseDim + 1)});
  const RingElement h = ring.gen(0), lam = ring.gen(1);
  NovikovSeries out(ring, {Rational(1)}, order);
  out.setPrefactor({h});
  for (int d = 0; d <= order; ++d) {
    ZLaurent c = hypergeometricRatio(h, d);
    ZLaurent base = c;
    for (int i = 1; i <= baseDim; ++i) c *= base;
    for (int t : twists) {
      RingElement e = lam + h * Rational(t);
      for (int k = t * d + 1; k <= 0; ++k) c *= linearInZ(e, k);
    }
    out.set({d}, c);
  }
  return out;
}

NovikovSeries brownI(const BundleData& bundle, const std::vector<RingElement>& chernRoots, const NovikovSeries& jV,
                     int order) {
  if (order < 0) fail(ErrorKind::Input, "order must be nonnegative");
  if (static_cast<int>(chernRoots.size()) != bundle.rank) fail(ErrorKind::Input, "need one Chern root per rank");
  if (jV.latticeDenominator() != 1) fail(ErrorKind::Unsupported, "refined lattice for J_V");
  QuotientRing ring = lerayHirsch(bundle);
  const RingElement p = ring.gen(0);
  const VarsPtr& src = jV.ring().ambient();
  const int lamIndex = src->find("l");
  if (lamIndex < 0) fail(ErrorKind::Input, "J_V must depend on the fibre parameter l");

  // Base generators keep their names; l is replaced per k.
  auto imagesFor = [&](int k) {
    std::vector<ZLaurent> images;
    for (int i = 0; i < src->size(); ++i) {
      if (i == lamIndex) images.push_back(linearInZ(p, k));
      else images.push_back(ZLaurent::constant(ring.gen(src->names[i])));
    }
    return images;
  };
  auto toTarget = [&](const RingElement& x) {
    // Chern roots live in the base ring, whose generators are named in `ring`.
    Poly lifted = x.lift();
    std::vector<Poly> images;
    if (lifted.vars())
      for (auto& name : lifted.vars()->names) images.push_back(ring.gen(name).lift());
    if (!lifted.vars() || lifted.vars()->size() == 0) return ring.scalar(x.constantPart());
    return ring.reduce(lifted.substitute(images));
  };
  std::vector<RingElement> delta;
  for (auto& c : chernRoots) delta.push_back(toTarget(c));

  std::vector<Rational> omega = jV.omega();
  omega.push_back(1);
  NovikovSeries out(ring, omega, order);
  std::vector<RingElement> pre;
  for (auto& x : jV.prefactor()) pre.push_back(mapLaurent(ZLaurent::constant(x), ring, imagesFor(0)).at(0));
  if (jV.hasPrefactor() || jV.rank() == 0) {
    pre.push_back(p);
    out.setPrefactor(pre);
  }

  std::vector<int> ks;
  for (int k = 0; k <= order; ++k) ks.push_back(k);
  std::vector<std::vector<std::pair<NovikovSeries::Exponent, ZLaurent>>> parts(ks.size());
  parallelFor(static_cast<int>(ks.size()), [&](int idx) {
    const int k = ks[idx];
    ZLaurent den = ZLaurent::constant(ring.one());
    for (int c = 1; c <= k; ++c)
      for (auto& d : delta) den *= linearInZ(d + p, c);
    ZLaurent inv = k == 0 ? den : nilpotentInverse(den);
    auto images = imagesFor(k);
    for (auto& [d, c] : jV.terms()) {
      if (jV.pairing(d) + k > order) continue;
      parts[idx].emplace_back(concat(d, k), inv * mapLaurent(c, ring, images));
    }
  });
  for (auto& part : parts)
    for (auto& [e, c] : part) out.set(e, c);
  return out;
}

}  // namespace qfourier
