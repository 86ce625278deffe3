#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qfourier/bundles.hpp"
#include "qfourier/fourier.hpp"
#include "qfourier/glsm.hpp"
#include "qfourier/novikov.hpp"
#include "qfourier/stationary.hpp"
#include "qfourier/volumes.hpp"

namespace qfourier {

using Json = nlohmann::ordered_json;

/// GLSM input file:
///
///   weights = [[1, 0], [0, 1], [1, 0], [1, 1]]
///   chamber = [2, 1]            # integers or "a/b" strings
///   rays = [[1], [-1]]          # optional, fan rays for oscint
///   section = [[1], [0]]        # optional, n x k section of the ray map
///   [names]
///   coordinates = ["x1", ...]
///   parameters = ["p1", ...]
struct GlsmFile {
  GlsmData glsm;
  IntMatrix rays;
  IntMatrix section;
};
GlsmFile parseGlsmToml(std::string_view text, const std::string& source = "<string>");
GlsmFile loadGlsmFile(const std::string& path);

/// Split bundle O(m_1) + ... + O(m_r) over P^m:  base_dim = m, twists = [..].
struct SplitBundleSpec {
  int baseDim = 0;
  std::vector<int> twists;
};
SplitBundleSpec parseBundleToml(std::string_view text, const std::string& source = "<string>");
SplitBundleSpec loadBundleFile(const std::string& path);

/// Normal weights at a fixed component:  blocks = [[weight, rank], ..].
FixedComponentWeights parseWeightsToml(std::string_view text, const std::string& source = "<string>");
FixedComponentWeights loadWeightsFile(const std::string& path);

Json complexJson(cplx v);
Json elementJson(const RingElement& x);
/// Canonical form: terms ordered by exponent, then z-power, then basis monomial.
Json seriesJson(const NovikovSeries& s);
Json supportJson(const SupportReport& r);
/// {value_re, value_im, method, error}.
Json volumeJson(const QuantumVolumeResult& r);

/// Positive decimal for exp(logValue), exact in exponent beyond double range.
std::string formatLogValue(double logValue);
/// t,value rows.
void writeDhCsv(std::ostream& os, const std::vector<DHMeasureSample>& samples);

}  // namespace qfourier
