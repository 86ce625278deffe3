#pragma once

#include <vector>

#include "qfourier/glsm.hpp"
#include "qfourier/localized.hpp"
#include "qfourier/novikov.hpp"

namespace qfourier {

/// kappa of a rational function of (lambda, z): the numerator is reduced in
/// the quotient ring and each linear factor a.lambda + cz is inverted as a
/// z-Laurent element. Throws IllDefined when a factor has no z-part.
ZLaurent kirwanLaurent(const QuotientData& quotient, const LocalizedFunction& f);

/// I_Y = sum_beta kappa(S^{-beta} J) S^beta for the C^n model of the quotient.
/// Classes beta run over the Mori-generator box with -order <= <omega, beta> <= order;
/// terms with vanishing Kirwan image are dropped. The result carries the
/// prefactor q^{p/z}.
NovikovSeries discreteFT(const LocalizedFunction& j, const QuotientData& quotient, int order);

struct SupportReport {
  bool ok = true;
  std::vector<std::vector<int>> violations;
};
/// Every exponent lies in the cone spanned by the Mori generators (the dual of the chamber).
SupportReport supportCheck(const NovikovSeries& series, const QuotientData& quotient);

struct MirrorResult {
  NovikovSeries f;         // F = FT(J)
  NovikovSeries w;         // z log F
  bool polynomial = false; // all z-powers of W nonnegative
  Poly potential;          // W in S1..Sn, z when polynomial
};
/// Full-torus quotient of C^n (D = identity, omega = (1, .., 1)), a point.
MirrorResult tautologicalMirror(int n, const LocalizedFunction& j, int order);

/// F_2(J_{P^{n-1}}) through the lifted C^n model, compared with
/// F_3(1) = sum S^k / (k! z^{|k|}) for classes with entries >= -1 and sum <= order.
bool chainRuleCheck(int n, int order);

/// The lifted series F_2(J_{P^{n-1}}) over the point, exponents in Z^n.
NovikovSeries projectiveMirrorSeries(int n, int order);

}  // namespace qfourier
