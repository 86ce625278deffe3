#include "qfourier/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "qfourier/errors.hpp"
#include "toml.hpp"

namespace qfourier {

namespace {

toml::table parseToml(std::string_view text, const std::string& source) {
  try {
    return toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << source << ": " << e.description() << " at line " << e.source().begin.line;
    fail(ErrorKind::Input, msg.str());
  }
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Input, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int intValue(const toml::node& node, const std::string& what) {
  auto v = node.value<int64_t>();
  if (!v) fail(ErrorKind::Input, what + " must be an integer");
  if (*v < -1000000 || *v > 1000000) fail(ErrorKind::Input, what + " out of range");
  return static_cast<int>(*v);
}

std::vector<int> intRow(const toml::node& node, const std::string& what) {
  const toml::array* arr = node.as_array();
  if (!arr) fail(ErrorKind::Input, what + " must be an array");
  std::vector<int> out;
  for (auto& x : *arr) out.push_back(intValue(x, what));
  return out;
}

IntMatrix intMatrix(const toml::table& t, const std::string& key) {
  IntMatrix m;
  const toml::node* node = t.get(key);
  if (!node) return m;
  const toml::array* rows = node->as_array();
  if (!rows) fail(ErrorKind::Input, key + " must be an array of arrays");
  for (auto& r : *rows) m.push_back(intRow(r, key));
  return m;
}

std::vector<std::string> stringList(const toml::node* node, const std::string& what) {
  std::vector<std::string> out;
  if (!node) return out;
  const toml::array* arr = node->as_array();
  if (!arr) fail(ErrorKind::Input, what + " must be an array of strings");
  for (auto& x : *arr) {
    auto s = x.value<std::string>();
    if (!s) fail(ErrorKind::Input, what + " must be an array of strings");
    out.push_back(*s);
  }
  return out;
}

}  // namespace

GlsmFile parseGlsmToml(std::string_view text, const std::string& source) {
  toml::table t = parseToml(text, source);
  GlsmFile f;
  f.glsm.weights = intMatrix(t, "weights");
  if (f.glsm.weights.empty()) fail(ErrorKind::Input, source + ": no weights given");
  if (const toml::node* c = t.get("chamber")) {
    const toml::array* arr = c->as_array();
    if (!arr) fail(ErrorKind::Input, "chamber must be an array");
    for (auto& x : *arr) {
      if (auto i = x.value<int64_t>()) f.glsm.chamber.push_back(Rational(static_cast<long>(*i)));
      else if (auto s = x.value<std::string>()) f.glsm.chamber.push_back(parseRational(*s));
      else fail(ErrorKind::Input, "chamber entries must be integers or \"a/b\" strings");
    }
  } else {
    fail(ErrorKind::Input, source + ": no chamber given");
  }
  if (const toml::table* names = t["names"].as_table()) {
    f.glsm.coordinateNames = stringList(names->get("coordinates"), "names.coordinates");
    f.glsm.parameterNames = stringList(names->get("parameters"), "names.parameters");
  }
  f.glsm.validate();
  f.rays = intMatrix(t, "rays");
  f.section = intMatrix(t, "section");
  if (!f.section.empty() && static_cast<int>(f.section.size()) != f.glsm.n())
    fail(ErrorKind::Input, "section must have one row per coordinate");
  return f;
}

GlsmFile loadGlsmFile(const std::string& path) { return parseGlsmToml(readFile(path), path); }

SplitBundleSpec parseBundleToml(std::string_view text, const std::string& source) {
  toml::table t = parseToml(text, source);
  SplitBundleSpec b;
  const toml::node* dim = t.get("base_dim");
  if (!dim) fail(ErrorKind::Input, source + ": no base_dim given");
  b.baseDim = intValue(*dim, "base_dim");
  const toml::node* tw = t.get("twists");
  if (!tw) fail(ErrorKind::Input, source + ": no twists given");
  b.twists = intRow(*tw, "twists");
  if (b.baseDim < 0) fail(ErrorKind::Input, "base_dim must be nonnegative");
  if (b.twists.empty()) fail(ErrorKind::Input, source + ": twists is empty");
  return b;
}

SplitBundleSpec loadBundleFile(const std::string& path) { return parseBundleToml(readFile(path), path); }

FixedComponentWeights parseWeightsToml(std::string_view text, const std::string& source) {
  toml::table t = parseToml(text, source);
  FixedComponentWeights w;
  for (auto& row : intMatrix(t, "blocks")) {
    if (row.size() != 2) fail(ErrorKind::Input, "each block is [weight, rank]");
    w.blocks.push_back({row[0], row[1]});
  }
  if (w.blocks.empty()) fail(ErrorKind::Input, source + ": no weight blocks given");
  w.validate();
  return w;
}

FixedComponentWeights loadWeightsFile(const std::string& path) { return parseWeightsToml(readFile(path), path); }

Json complexJson(cplx v) { return Json{{"re", v.real()}, {"im", v.imag()}}; }

Json elementJson(const RingElement& x) {
  Json out = Json::array();
  for (auto& [m, c] : x.coeffs()) out.push_back(Json{{"monomial", m}, {"coefficient", toString(c)}});
  return out;
}

Json seriesJson(const NovikovSeries& s) {
  Json j;
  j["generators"] = s.ring().valid() ? s.ring().ambient()->names : std::vector<std::string>{};
  Json omega = Json::array();
  for (auto& w : s.omega()) omega.push_back(toString(w));
  j["omega"] = omega;
  j["order"] = toString(s.order());
  j["lattice_denominator"] = s.latticeDenominator();
  Json pre = Json::array();
  for (auto& p : s.prefactor()) pre.push_back(elementJson(p));
  j["prefactor"] = pre;
  Json terms = Json::array();
  for (auto& [d, c] : s.terms())
    for (auto& [k, x] : c.coeffs())
      for (auto& [m, v] : x.coeffs())
        terms.push_back(Json{{"exponent", d}, {"z_power", k}, {"monomial", m}, {"coefficient", toString(v)}});
  j["terms"] = terms;
  return j;
}

Json supportJson(const SupportReport& r) { return Json{{"ok", r.ok}, {"violations", r.violations}}; }

Json volumeJson(const QuantumVolumeResult& r) {
  return Json{{"value_re", r.value.real()},
              {"value_im", r.value.imag()},
              {"method", methodName(r.method)},
              {"error", r.errorEstimate}};
}

std::string formatLogValue(double logValue) {
  if (std::isnan(logValue)) fail(ErrorKind::Numeric, "log value is NaN");
  if (std::isinf(logValue)) return logValue < 0 ? "0" : "inf";
  char buf[64];
  if (logValue > -700 && logValue < 700) {
    std::snprintf(buf, sizeof buf, "%.15e", std::exp(logValue));
    return buf;
  }
  const double e10 = logValue / std::log(10.0);
  long expo = static_cast<long>(std::floor(e10));
  std::snprintf(buf, sizeof buf, "%.15f", std::pow(10.0, e10 - static_cast<double>(expo)));
  std::string mant = buf;
  if (mant.rfind("10.", 0) == 0) {
    mant = "1.000000000000000";
    ++expo;
  }
  std::snprintf(buf, sizeof buf, "e%+03ld", expo);
  return mant + buf;
}

void writeDhCsv(std::ostream& os, const std::vector<DHMeasureSample>& samples) {
  os << "t,value\n";
  char buf[64];
  for (auto& s : samples) {
    std::snprintf(buf, sizeof buf, "%.10g", s.t);
    os << buf << ',' << formatLogValue(s.logValue) << '\n';
  }
}

}  // namespace qfourier
