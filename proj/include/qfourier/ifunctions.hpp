#pragma once

#include <map>
#include <vector>

#include "qfourier/bundles.hpp"
#include "qfourier/glsm.hpp"
#include "qfourier/novikov.hpp"

namespace qfourier {

/// prod_{c<=0}(u + cz) / prod_{c<=m}(u + cz) for u with nilpotent ring part
/// and unit part zero.
ZLaurent hypergeometricRatio(const RingElement& u, int m);

/// Ring homomorphism applied coefficientwise: generator i of x's ring goes to images[i].
ZLaurent mapLaurent(const ZLaurent& x, const QuotientRing& target, const std::vector<ZLaurent>& images);

/// J-function of P^{n-1} over C[p]/(p^n) with prefactor q^{p/z}.
NovikovSeries jProjective(int n, int order);

/// sum_d q^d prod_i hypergeometricRatio(u_i, D_i.d), u_i = kappa(D_i.lambda),
/// over classes with <omega, d> <= order. Prefactor q^{p/z}.
NovikovSeries toricI(const QuotientData& quotient, int order);

/// Fixed-point restrictions of the equivariant toric I-function.
struct EquivariantI {
  VarsPtr vars;  // mu1..mun, z
  std::vector<std::vector<int>> classes;
  /// values[F][d]: coefficient at q^d restricted to fixed point F.
  std::vector<std::map<std::vector<int>, LocalizedFunction>> values;
  /// u_i|_F as linear forms in mu.
  std::vector<std::vector<Poly>> restrictions;
};
EquivariantI toricIEquivariant(const QuotientData& quotient, int order);

/// S^1-equivariant J-function of O(m_1) + ... + O(m_r) over P^m, m_i <= 0, over
/// C[h, l]/(h^{m+1}) with l the fibre parameter. The base point (m = 0) gives 1
/// on a rank-zero lattice over C[l].
NovikovSeries splitBundleJ(int baseDim, const std::vector<int>& twists, int order);

/// sum_k q^k / prod_{c=1}^k prod_delta (delta + p + cz) * J_V^{p + kz} over the
/// Leray-Hirsch ring of P(V). Exponents are (base degree, k); the lattice
/// pairing is the base pairing plus k.
NovikovSeries brownI(const BundleData& bundle, const std::vector<RingElement>& chernRoots, const NovikovSeries& jV,
                     int order);

}  // namespace qfourier
