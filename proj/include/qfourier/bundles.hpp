#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "qfourier/ring.hpp"

namespace qfourier {

/// Rank r bundle V over B through its Chern classes.
struct BundleData {
  QuotientRing base;
  int rank = 0;
  std::vector<RingElement> chern;  // c_1..c_r
  RingElement baseC1;              // c_1(TB)
};

/// O(m_1) + ... + O(m_r) over P^m, base ring C[h]/(h^{m+1}).
BundleData splitBundle(int baseDim, const std::vector<int>& twists);
/// m_i h, the Chern roots of splitBundle.
std::vector<RingElement> splitChernRoots(const BundleData& bundle, const std::vector<int>& twists);

/// H*(P(V)) = H*(B)[p]/(p^r + c_1 p^{r-1} + ... + c_r); generators (p, base...).
/// The integral of p^{r-1} times a base top class equals its base integral.
QuotientRing lerayHirsch(const BundleData& bundle);

/// Small vertical quantum cohomology: generators (p, base..., s) with s = q^{1/r}
/// and relation p^r + c_1 p^{r-1} + ... + c_r = s^r.
struct QhSvRing {
  BundleData bundle;
  QuotientRing ring;
  /// Image of q = s^r.
  RingElement q() const;
};
QhSvRing qhSv(const BundleData& bundle);
/// The classical ring at q = 0 (same as lerayHirsch).
QuotientRing qhSvClassical(const BundleData& bundle);

/// Element of H*(B) tensor Q(zeta_r)[s, s^-1] tensor C[p]/(relation).
///
/// Cyclotomic numbers are polynomials in zeta reduced modulo the r-th
/// cyclotomic polynomial; s is a free invertible variable of degree 2.
class RootAlgebra {
 public:
  RootAlgebra(const BundleData& bundle);

  int r() const { return r_; }
  const QuotientRing& base() const { return base_; }
  int baseDim() const { return static_cast<int>(baseBasis_.size()); }
  /// Degree of Q(zeta_r) over Q.
  int cycloDegree() const { return static_cast<int>(phi_.size()) - 1; }
  const std::vector<RingElement>& chern() const { return chern_; }

  // (p-power, s-power, zeta-power, base monomial) -> coefficient
  struct Key {
    int p, s, zeta;
    Monomial base;
    auto operator<=>(const Key&) const = default;
  };
  using Element = std::map<Key, Rational>;

  Element zero() const { return {}; }
  Element one() const;
  Element p() const;
  Element s(int k = 1) const;
  Element zeta(int j) const;
  Element fromBase(const RingElement& x) const;
  Element add(const Element& a, const Element& b) const;
  Element scale(const Element& a, const Rational& c) const;
  /// Product with p-powers reduced by the relation.
  Element mul(const Element& a, const Element& b) const;
  /// Product in the polynomial ring in p (no reduction).
  Element mulRaw(const Element& a, const Element& b) const;
  /// Inverse of a p-free element whose weight-zero base part is c s^k, c != 0.
  Element inverse(const Element& a) const;
  bool isZero(const Element& a) const { return a.empty(); }
  bool equal(const Element& a, const Element& b) const { return isZero(add(a, scale(b, -1))); }
  bool pFree(const Element& a) const;
  /// p^r + c_1 p^{r-1} + ... + c_r - s^r as an unreduced polynomial in p.
  Element relation() const;
  /// f(x) = x^r + c_1 x^{r-1} + ... + c_r - s^r for p-free x.
  Element evaluateRelation(const Element& x) const;
  std::string str(const Element& a) const;

 private:
  void addTerm(Element& e, Key k, const Rational& c) const;
  Element multiply(const Element& a, const Element& b, bool reduce) const;
  Element reduceP(Element e) const;
  std::vector<Rational> cycloInverse(const std::vector<Rational>& c) const;

  int r_;
  QuotientRing base_;
  std::vector<Monomial> baseBasis_;
  std::vector<RingElement> chern_;
  std::vector<Rational> phi_;  // cyclotomic polynomial, ascending
};

struct RootDecomposition {
  std::vector<RootAlgebra::Element> roots;        // p_j, p-free
  std::vector<RootAlgebra::Element> idempotents;  // e_j
  bool productMatches = false;      // prod (p - p_j) = relation
  bool orthogonal = false;          // e_i e_j = delta_ij e_i
  bool complete = false;            // sum e_j = 1
  bool eigen = false;               // p e_j = p_j e_j
};
/// Newton iteration from zeta^j s; exact after finitely many steps because the
/// base corrections are nilpotent.
RootDecomposition rootDecomposition(const RootAlgebra& algebra);

struct EulerSpectrum {
  std::vector<std::complex<double>> eigenvalues;
  std::vector<std::complex<double>> centers;     // r q^{1/r} zeta^j
  std::vector<std::vector<int>> clusters;        // eigenvalue indices per center
  double spread = 0;                             // max distance to own center
  double gap = 0;                                // min distance between centers
  double ratio() const { return gap > 0 ? spread / gap : 0; }
};
/// Eigenvalues of (r p + c_1(V) + c_1(B)) under the vertical product at numeric q.
EulerSpectrum eulerSpectrum(const BundleData& bundle, std::complex<double> q);

}  // namespace qfourier
