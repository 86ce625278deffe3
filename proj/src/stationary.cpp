#include "qfourier/stationary.hpp"

#include <cmath>
#include <string>

#include "qfourier/errors.hpp"

namespace qfourier {

namespace {

// log(-z) for z rotated slightly off the positive axis.
cplx logNegated(cplx z) {
  const cplx lz = std::log(z);
  return std::arg(z) >= 0 ? lz - cplx(0, kPi) : lz + cplx(0, kPi);
}

}  // namespace

int FixedComponentWeights::cF() const {
  int s = 0;
  for (auto& b : blocks) s += b.rank * b.weight;
  return s;
}

int FixedComponentWeights::rF() const {
  int s = 0;
  for (auto& b : blocks) s += b.rank;
  return s;
}

void FixedComponentWeights::validate() const {
  for (auto& b : blocks) {
    if (b.rank < 1) fail(ErrorKind::Input, "normal bundle ranks must be positive");
    if (b.weight == 0) fail(ErrorKind::Unsupported, "zero normal weight: component is not isolated");
  }
}

cplx principalLog(cplx x) {
  if (x == cplx(0)) fail(ErrorKind::Pole, "logarithm at zero");
  if (x.imag() == 0 && x.real() < 0) return {std::log(-x.real()), kPi};
  return std::log(x);
}

cplx gammaFactorG(const FixedComponentWeights& weights, cplx lambda, cplx z) {
  weights.validate();
  if (z == cplx(0)) fail(ErrorKind::Input, "z must be nonzero");
  const cplx ln = logNegated(z);
  cplx out = 1;
  for (auto& b : weights.blocks) {
    const cplx x = -static_cast<double>(b.weight) * lambda / z;
    const cplx f = std::exp(-0.5 * (std::log(2 * kPi) + ln) + x * ln) * gammaFn(x);
    out *= std::pow(f, b.rank);
  }
  return out;
}

cplx deltaExpansion(cplx delta, cplx z, int M) {
  if (M < 1 || M > 20) fail(ErrorKind::Input, "expansion order must be in 1..20");
  if (delta == cplx(0) || z == cplx(0)) fail(ErrorKind::Input, "delta and z must be nonzero");
  const cplx ld = principalLog(delta);
  cplx e = (delta * ld - delta) / z + 0.5 * ld;
  const auto B = bernoulliNumbers(M);
  const cplx r = z / delta;
  cplx rp = r;
  for (int m = 2; m <= M; ++m, rp *= r) e += B[m].get_d() / (m * (m - 1.0)) * rp;
  return std::exp(e);
}

cplx deltaReference(cplx delta, cplx z) {
  const cplx x = delta / z;
  return std::exp(0.5 * (principalLog(z) - std::log(2 * kPi)) + x * principalLog(z) + logGamma(1.0 + x));
}

PotentialValue effectivePotential(const FixedComponentWeights& weights, cplx lambda) {
  weights.validate();
  PotentialValue v{0, 0};
  for (auto& b : weights.blocks) {
    const cplx wl = static_cast<double>(b.weight) * lambda;
    const cplx lg = principalLog(wl);
    v.w += static_cast<double>(b.rank) * (wl * lg - wl);
    v.dw += static_cast<double>(b.rank * b.weight) * lg;
  }
  return v;
}

std::vector<CriticalPoint> criticalPoints(const FixedComponentWeights& weights, cplx q) {
  weights.validate();
  const int c = weights.cF();
  if (c == 0) fail(ErrorKind::Unsupported, "c_F = 0: no isolated critical points");
  if (q == cplx(0)) fail(ErrorKind::Input, "q must be nonzero");
  const cplx lq = principalLog(q);
  cplx a = 0;
  for (auto& b : weights.blocks) a += static_cast<double>(b.rank * b.weight) * principalLog(cplx(b.weight));
  std::vector<CriticalPoint> out;
  for (int k = 0; k < std::abs(c); ++k) {
    const cplx lam = std::exp((lq - a + cplx(0, 2 * kPi * k)) / static_cast<double>(c));
    const cplx dw = effectivePotential(weights, lam).dw;
    const double shift = std::round(((dw - lq) / cplx(0, 2 * kPi)).real());
    const cplx branchLog = lq + cplx(0, 2 * kPi * shift);
    if (std::abs(dw - branchLog) > 1e-9 * std::max(1.0, std::abs(branchLog)))
      fail(ErrorKind::Numeric, "critical point equation not satisfied on branch " + std::to_string(k));
    out.push_back({lam, k, branchLog});
  }
  return out;
}

cplx saddleAmplitude(const FixedComponentWeights& weights, cplx q, cplx z, int branch) {
  auto pts = criticalPoints(weights, q);
  if (branch < 0 || branch >= static_cast<int>(pts.size())) fail(ErrorKind::Input, "no critical point on this branch");
  if (z == cplx(0)) fail(ErrorKind::Input, "z must be nonzero");
  const CriticalPoint& cp = pts[branch];
  const cplx lam = cp.lambda;
  const cplx hess = static_cast<double>(weights.cF()) / lam;
  const cplx phase = effectivePotential(weights, lam).w - lam * cp.logQBranch;
  cplx logAmp = 0;
  for (auto& b : weights.blocks)
    logAmp += 0.5 * b.rank * (std::log(2 * kPi * z) - principalLog(static_cast<double>(b.weight) * lam));
  return std::sqrt(2 * kPi * z / hess) * std::exp(logAmp + phase / z) / (2 * kPi * z);
}

}  // namespace qfourier
