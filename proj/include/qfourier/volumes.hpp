#pragma once

#include <limits>
#include <string>
#include <vector>

#include "qfourier/glsm.hpp"
#include "qfourier/localized.hpp"
#include "qfourier/numeric.hpp"

namespace qfourier {

/// prod_i 1/(D_i . lambda) in equivariantVars(l). An empty D needs l >= 1.
LocalizedFunction equivariantVolume(const IntMatrix& weights, int l = -1);

/// Density at t of the push-forward of Lebesgue measure on R^n_{>=0} under
/// x -> D^T x, by iterated residues of e^{lambda.t} / prod(D_i.lambda). l <= 2.
Rational jkVolume(const IntMatrix& weights, const std::vector<Rational>& t);

/// The same density from the fibre polytope {x >= 0 : D^T x = t}, triangulated.
Rational polytopeVolumeOracle(const IntMatrix& weights, const std::vector<Rational>& t);

/// prod_i Gamma(1 + a_i p) in C[p]/(p^n), for Chern roots a_i p.
NumericNilSeries gammaClassNumeric(const std::vector<cplx>& roots, int n);

enum class VolumeMethod { ResidueSeries, MellinBarnes, CohomologicalSeries, Saddle };
const char* methodName(VolumeMethod m);

struct QuantumVolumeResult {
  cplx value;
  VolumeMethod method = VolumeMethod::ResidueSeries;
  double errorEstimate = 0;
};

/// Quantum volume of P^{n-1}: sum_d Res_{u=-d} Q^{-u} Gamma(u)^n du, Q = q / z^n.
QuantumVolumeResult quantumVolumeSeries(int n, cplx q, double z, double tol = 1e-12);
/// int_{P^{n-1}} Gamma-hat e^{-p log Q} sum_d Q^d / prod_{c=1}^d (p - c)^n.
QuantumVolumeResult quantumVolumeCohomological(int n, cplx q, double z, double tol = 1e-12);

struct MellinOptions {
  double epsilon = std::numeric_limits<double>::quiet_NaN();  // contour Re(lambda); default z / 2
  double halfWidth = -1; // |Im lambda| cutoff; default from the Gamma tail
  int steps = 0;         // initial panel count; doubled until stable
  double tol = 1e-12;
};
/// (1 / 2 pi i z) int z^{n lambda/z} Gamma(lambda/z)^n q^{-lambda/z} d lambda over Re lambda = epsilon.
QuantumVolumeResult mellinBarnes(int n, cplx q, double z, const MellinOptions& opt = {});

/// (2 pi)^{(n-1)/2} / (sqrt(n) sfq^{(n-1)/(2n)}) e^{-n sfq^{1/n}}.
cplx saddleAsymptotic(int n, double sfq);

/// Toric target for the equivariant quantum volume: a GLSM (possibly with
/// l = 0 for C^n) and a section W of the ray map, so that the torus of X
/// acts on C^n with weights mu = W lambda.
struct ToricTarget {
  GlsmData glsm;
  IntMatrix section;  // n x k
  int n() const { return static_cast<int>(section.size()); }
  int k() const { return section.empty() ? 0 : static_cast<int>(section[0].size()); }
};
ToricTarget affineSpace(int n);
ToricTarget projectiveLine();

struct EquivariantVolumeOptions {
  double tol = 1e-13;
  int maxDegree = 400;
  bool regularize = false;  // Richardson limit when a tangent weight sits on a Gamma pole
};
/// sum_F I(tau, -z)|_F prod_{w in T_F X} z^{w/z} Gamma(w/z).
cplx equivariantQuantumVolume(const ToricTarget& x, const std::vector<double>& tau, const std::vector<double>& lambda,
                              double z, const EquivariantVolumeOptions& opt = {});

struct QuadratureResult {
  double value = 0;
  double errorEstimate = 0;
};
/// int_{R_{>0}^k} exp(-(sum_i e^{tau_i} x^{b_i} - lambda . log x) / z) dx / x, k <= 2.
QuadratureResult lgOscillatoryIntegral(const IntMatrix& rays, const std::vector<double>& tau,
                                       const std::vector<double>& lambda, double z, double tol = 1e-13);

struct DHMeasureSample {
  double t;
  double value;     // underflows to 0 far outside the support
  double logValue;  // natural log of the exact value
};
/// exp(-(e^{tau1 - t} + e^{tau2 + t}) / z) on the grid.
std::vector<DHMeasureSample> quantumDHMeasure(double tau1, double tau2, double z, const std::vector<double>& grid);
/// Points a, a + step, .. up to b (inclusive within half a step).
std::vector<double> parseGrid(const std::string& spec);

/// Central charge of O(m) on P^{n-1}: the residue series after log q -> log q - 2 pi i m.
QuantumVolumeResult centralCharge(int n, int m, cplx q, double z, double tol = 1e-12);
/// The same through int Gamma-hat e^{2 pi i m p} e^{-p log Q} J.
QuantumVolumeResult centralChargeCohomological(int n, int m, cplx q, double z, double tol = 1e-12);

}  // namespace qfourier
