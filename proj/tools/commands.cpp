#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "qfourier/errors.hpp"
#include "qfourier/ifunctions.hpp"
#include "qfourier/shiftops.hpp"

namespace qfourier::cli {

namespace {

std::vector<std::string> splitComma(const std::string& s) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (s.back() == ',') out.push_back("");
  return out;
}

Json rationalList(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (auto& x : v) out.push_back(toString(x));
  return out;
}

Json ringJson(const QuotientRing& r, bool finite) {
  Json rel = Json::array();
  for (auto& p : r.relations()) rel.push_back(p.str());
  Json j{{"generators", r.ambient()->names}, {"relations", rel}};
  if (finite) {
    Json basis = Json::array();
    for (auto& m : r.basis()) basis.push_back(r.monomialString(m));
    j["basis"] = basis;
    j["dimension"] = r.dimension();
  }
  return j;
}

std::string volumeCsv(const QuantumVolumeResult& r) {
  std::ostringstream os;
  os.precision(17);
  os << "value_re,value_im,method,error\n"
     << r.value.real() << ',' << r.value.imag() << ',' << methodName(r.method) << ',' << r.errorEstimate << '\n';
  return os.str();
}

CommandOutput volumeOutput(const QuantumVolumeResult& r) { return {volumeJson(r), volumeCsv(r)}; }

GlsmData glsmOf(const JobConfig& c) { return loadGlsmFile(c.glsm).glsm; }

BundleData bundleOf(const JobConfig& c, SplitBundleSpec* spec = nullptr) {
  SplitBundleSpec s = loadBundleFile(c.bundle);
  if (spec) *spec = s;
  return splitBundle(s.baseDim, s.twists);
}

std::vector<double> tauOf(const JobConfig& c, size_t size) {
  std::vector<double> tau = c.tau;
  if (c.tau1) {
    if (tau.size() < 1) tau.resize(1, 0);
    tau[0] = *c.tau1;
  }
  if (c.tau2) {
    if (tau.size() < 2) tau.resize(2, 0);
    tau[1] = *c.tau2;
  }
  if (tau.empty()) tau.assign(size, 0);
  if (tau.size() != size)
    fail(ErrorKind::Input, "expected " + std::to_string(size) + " tau values, got " + std::to_string(tau.size()));
  return tau;
}

CommandOutput runChambers(const JobConfig& c) {
  GlsmData g = glsmOf(c);
  Json list = Json::array();
  for (auto& ch : chambers(g.weights))
    list.push_back(
        Json{{"representative", rationalList(ch.representative)}, {"empty", ch.empty}, {"fixed_points", ch.fixedPointCount}});
  return {Json{{"chambers", list}}, {}};
}

CommandOutput runQuotient(const JobConfig& c) {
  QuotientData q = quotientPresentation(glsmOf(c));
  Json j = ringJson(q.ring, true);
  Json fps = Json::array();
  for (auto& f : q.fixedPoints) fps.push_back(Json{{"subset", f.subset}, {"complement", f.complement}});
  j["fixed_points"] = fps;
  j["sr_subsets"] = q.srSubsets;
  Json divisors = Json::array();
  for (int i = 0; i < q.glsm.n(); ++i) divisors.push_back(q.divisor(i).str());
  j["divisors"] = divisors;
  std::vector<Rational> mu(q.glsm.n());
  for (int i = 0; i < q.glsm.n(); ++i) mu[i] = frac(17 * i * i + 5 * i + 3, 29 + 2 * i);
  Json integrals = Json::array();
  for (auto& m : q.ring.basisInWeight(q.ring.topWeight())) {
    RingElement x(q.ring, {{m, 1}});
    integrals.push_back(Json{{"monomial", q.ring.monomialString(m)},
                             {"integral", toString(q.integrate(x))},
                             {"localization", toString(q.integrateByLocalization(x, mu))}});
  }
  j["integrals"] = integrals;
  return {j, {}};
}

CommandOutput runVolume(const JobConfig& c) {
  GlsmData g = glsmOf(c);
  LocalizedFunction f = equivariantVolume(g.weights, g.l());
  Json residues = Json::array();
  const VarsPtr& v = f.vars();
  for (auto& [factor, mult] : f.denominatorFactors()) {
    if (factor.degreeIn(0) != 1) continue;
    // Factors are normalized with leading coefficient one.
    Poly pole = Poly::var(v, 0) - factor;
    residues.push_back(Json{{"pole", pole.str()}, {"multiplicity", mult}, {"residue", residueAt(f, 0, pole).str()}});
  }
  return {Json{{"volume", f.str()}, {"residues", residues}}, {}};
}

CommandOutput runJk(const JobConfig& c) {
  GlsmData g = glsmOf(c);
  std::vector<Rational> t = g.chamber;
  if (!c.t.empty()) {
    t.clear();
    for (auto& s : c.t) t.push_back(parseRational(s));
  }
  Rational jk = jkVolume(g.weights, t);
  Rational poly = polytopeVolumeOracle(g.weights, t);
  return {Json{{"t", rationalList(t)},
               {"jk_volume", toString(jk)},
               {"polytope_volume", toString(poly)},
               {"agree", jk == poly}},
          {}};
}

CommandOutput runShift(const JobConfig& c) {
  GlsmData g = glsmOf(c);
  std::vector<int> k = c.shift;
  if (k.empty()) {
    k.assign(g.l(), 0);
    k[0] = 1;
  }
  if (static_cast<int>(k.size()) != g.l()) fail(ErrorKind::Input, "--shift needs one entry per torus factor");
  ShiftOperator s = shiftOperator(g.weights, k);
  LocalizedFunction vol = equivariantVolume(g.weights, g.l());
  Json comm = Json::array();
  for (int a = 0; a < g.l(); ++a) comm.push_back(checkCommutation(g.weights, k, a));
  return {Json{{"k", k},
               {"prefactor", s.prefactor.str()},
               {"shifted_volume", applyShift(g.weights, k, vol).str()},
               {"commutation", comm}},
          {}};
}

CommandOutput runGkz(const JobConfig& c) {
  QuotientData q = quotientPresentation(glsmOf(c));
  NovikovSeries I = toricI(q, c.order);
  Json ops = Json::array();
  for (int a = 0; a < q.glsm.l(); ++a) {
    std::vector<int> k(q.glsm.l(), 0);
    k[a] = 1;
    DifferenceRelation rel = gkzRelation(q.glsm.weights, k);
    DifferentialOperator op = toDifferential(rel);
    NovikovSeries res = applyDifferential(op, I);
    ops.push_back(Json{{"k", k},
                       {"relation", rel.str()},
                       {"operator", op.str()},
                       {"checked_order", toString(res.order())},
                       {"annihilates", res.terms().empty()}});
  }
  return {Json{{"order", c.order}, {"operators", ops}}, {}};
}

CommandOutput runIft(const JobConfig& c) {
  QuotientData q = quotientPresentation(glsmOf(c));
  LocalizedFunction one(Poly(equivariantVars(q.glsm.l()), 1));
  NovikovSeries f = discreteFT(one, q, c.order);
  Json j = seriesJson(f);
  j["support"] = supportJson(supportCheck(f, q));
  return {j, {}};
}

CommandOutput runMirror(const JobConfig& c) {
  MirrorResult r = tautologicalMirror(c.n, LocalizedFunction(Poly(equivariantVars(c.n), 1)), c.order);
  return {Json{{"f", seriesJson(r.f)},
               {"w", seriesJson(r.w)},
               {"polynomial", r.polynomial},
               {"potential", r.polynomial ? r.potential.str() : std::string()}},
          {}};
}

CommandOutput runChainRule(const JobConfig& c) {
  bool ok = chainRuleCheck(c.n, c.order);
  return {Json{{"n", c.n}, {"order", c.order}, {"holds", ok}, {"series", seriesJson(projectiveMirrorSeries(c.n, c.order))}},
          {}};
}

CommandOutput runQvol(const JobConfig& c) {
  if (c.method == "series") return volumeOutput(quantumVolumeSeries(c.n, c.q, c.z, c.tol));
  if (c.method == "cohomological") return volumeOutput(quantumVolumeCohomological(c.n, c.q, c.z, c.tol));
  fail(ErrorKind::Input, "--method must be series or cohomological");
}

CommandOutput runMb(const JobConfig& c) {
  MellinOptions opt;
  opt.epsilon = c.eps;
  opt.tol = c.tol;
  return volumeOutput(mellinBarnes(c.n, c.q, c.z, opt));
}

CommandOutput runSaddle(const JobConfig& c) {
  QuantumVolumeResult r;
  r.value = saddleAsymptotic(c.n, c.q / std::pow(c.z, c.n));
  r.method = VolumeMethod::Saddle;
  return volumeOutput(r);
}

CommandOutput runOscint(const JobConfig& c) {
  ToricTarget x;
  IntMatrix rays;
  if (!c.glsm.empty()) {
    GlsmFile f = loadGlsmFile(c.glsm);
    if (f.rays.empty() || f.section.empty()) fail(ErrorKind::Input, c.glsm + ": oscint needs rays and section");
    x.glsm = f.glsm;
    x.section = f.section;
    rays = f.rays;
  } else {
    x = affineSpace(c.n);
    rays = x.section;
  }
  const int k = x.k();
  for (auto& r : rays)
    if (static_cast<int>(r.size()) != k) fail(ErrorKind::Input, "rays must have one entry per section column");
  std::vector<double> tau = tauOf(c, rays.size());
  std::vector<double> lambda = c.lambda.empty() ? std::vector<double>(k, 0.0) : c.lambda;
  if (static_cast<int>(lambda.size()) != k) fail(ErrorKind::Input, "--lambda needs " + std::to_string(k) + " entries");
  QuadratureResult osc = lgOscillatoryIntegral(rays, tau, lambda, c.z, std::min(c.tol, 1e-10));
  EquivariantVolumeOptions opt;
  opt.regularize = c.regularize;
  cplx vol = equivariantQuantumVolume(x, tau, lambda, c.z, opt);
  return {Json{{"integral", Json{{"value", osc.value}, {"error", osc.errorEstimate}}},
               {"volume", complexJson(vol)},
               {"ratio", osc.value / vol.real()}},
          {}};
}

CommandOutput runQdh(const JobConfig& c) {
  auto samples = quantumDHMeasure(c.tau1.value_or(0), c.tau2.value_or(0), c.z, parseGrid(c.grid));
  std::ostringstream csv;
  writeDhCsv(csv, samples);
  Json list = Json::array();
  for (auto& s : samples) list.push_back(Json{{"t", s.t}, {"value", formatLogValue(s.logValue)}, {"log_value", s.logValue}});
  return {Json{{"samples", list}}, csv.str()};
}

CommandOutput runCharge(const JobConfig& c) {
  if (c.method == "series") return volumeOutput(centralCharge(c.n, c.twist, c.q, c.z, c.tol));
  if (c.method == "cohomological") return volumeOutput(centralChargeCohomological(c.n, c.twist, c.q, c.z, c.tol));
  fail(ErrorKind::Input, "--method must be series or cohomological");
}

CommandOutput runBundle(const JobConfig& c) {
  SplitBundleSpec spec;
  BundleData b = bundleOf(c, &spec);
  QhSvRing qh = qhSv(b);
  RootAlgebra alg(b);
  RootDecomposition dec = rootDecomposition(alg);
  Json roots = Json::array(), idem = Json::array();
  for (auto& r : dec.roots) roots.push_back(alg.str(r));
  for (auto& e : dec.idempotents) idem.push_back(alg.str(e));
  NovikovSeries I = brownI(b, splitChernRoots(b, spec.twists), splitBundleJ(spec.baseDim, spec.twists, c.order), c.order);
  Json checks{{"product", dec.productMatches},
              {"orthogonal", dec.orthogonal},
              {"complete", dec.complete},
              {"eigen", dec.eigen}};
  if (spec.baseDim == 0) checks["matches_j_projective"] = I == jProjective(b.rank, c.order);
  return {Json{{"rank", b.rank},
               {"leray_hirsch", ringJson(lerayHirsch(b), true)},
               {"qhsv", ringJson(qh.ring, false)},
               {"roots", roots},
               {"idempotents", idem},
               {"checks", checks},
               {"brown_i", seriesJson(I)}},
          {}};
}

CommandOutput runSpectrum(const JobConfig& c) {
  EulerSpectrum s = eulerSpectrum(bundleOf(c), c.q);
  Json eig = Json::array(), centers = Json::array();
  for (auto& e : s.eigenvalues) eig.push_back(complexJson(e));
  for (auto& e : s.centers) centers.push_back(complexJson(e));
  return {Json{{"eigenvalues", eig},
               {"centers", centers},
               {"clusters", s.clusters},
               {"spread", s.spread},
               {"gap", s.gap},
               {"spread_gap_ratio", s.ratio()}},
          {}};
}

CommandOutput runStationary(const JobConfig& c) {
  FixedComponentWeights w = loadWeightsFile(c.weights);
  Json j{{"c_F", w.cF()}, {"r_F", w.rF()}};
  if (w.cF() != 0) {
    auto pts = criticalPoints(w, c.q);
    Json cps = Json::array(), pots = Json::array(), amps = Json::array();
    for (auto& p : pts) {
      cps.push_back(Json{{"lambda", complexJson(p.lambda)}, {"branch", p.branch}, {"log_q", complexJson(p.logQBranch)}});
      pots.push_back(complexJson(effectivePotential(w, p.lambda).w));
      amps.push_back(complexJson(saddleAmplitude(w, c.q, c.z, p.branch)));
    }
    j["critical_points"] = cps;
    j["potential_values"] = pots;
    j["amplitudes"] = amps;
  } else {
    j["critical_points"] = Json::array();
    j["potential_values"] = Json::array();
  }
  if (!c.lambda.empty()) j["gamma_factor"] = complexJson(gammaFactorG(w, c.lambda[0], c.z));
  if (c.delta) {
    j["delta_expansion"] = complexJson(deltaExpansion(*c.delta, c.z, c.order));
    j["delta_reference"] = complexJson(deltaReference(*c.delta, c.z));
  }
  return {j, {}};
}

}  // namespace

const std::vector<CommandSpec>& commandTable() {
  static const std::vector<CommandSpec> table{
      {"chambers", "chamber structure of the weight arrangement", Input::Glsm, "json", {"glsm.chambers"}, runChambers},
      {"quotient",
       "Kirwan presentation, fixed points and integrals",
       Input::Glsm,
       "json",
       {"glsm.quotientPresentation", "glsm.integrate", "algebra.reduce"},
       runQuotient},
      {"volume",
       "equivariant volume of C^n and its residues",
       Input::Glsm,
       "json",
       {"volumes.equivariantVolume", "algebra.residueAt"},
       runVolume},
      {"jk",
       "Duistermaat-Heckman density by iterated residues and by the fibre polytope",
       Input::Glsm,
       "json",
       {"volumes.jkVolume", "volumes.polytopeVolumeOracle"},
       runJk},
      {"shift", "shift operator and commutation check", Input::Glsm, "json",
       {"shiftops.applyShift", "shiftops.checkCommutation", "volumes.equivariantVolume"}, runShift},
      {"gkz",
       "GKZ operators applied to the toric I-function",
       Input::Glsm,
       "json",
       {"shiftops.gkzRelation", "shiftops.toDifferential", "shiftops.applyDifferential", "ifunctions.toricI"},
       runGkz},
      {"ift",
       "discrete Fourier transform of J = 1 with support report",
       Input::Glsm,
       "json",
       {"fourier.discreteFT", "fourier.supportCheck", "algebra.nilpotentInverse"},
       runIft},
      {"mirror", "tautological mirror of C^n", Input::None, "json", {"fourier.tautologicalMirror"}, runMirror},
      {"chainrule", "chain rule for C^n over P^{n-1}", Input::None, "json", {"fourier.chainRuleCheck"}, runChainRule},
      {"qvol",
       "quantum volume of P^{n-1}",
       Input::None,
       "json",
       {"volumes.quantumVolumeSeries", "volumes.gammaClassNumeric", "algebra.gammaExpand", "algebra.expSeries"},
       runQvol},
      {"mb", "Mellin-Barnes integral for the quantum volume", Input::None, "json", {"volumes.mellinBarnes"}, runMb},
      {"saddle", "leading saddle-point asymptotics", Input::None, "json", {"volumes.saddleAsymptotic"}, runSaddle},
      {"oscint",
       "oscillatory LG integral against the equivariant quantum volume",
       Input::None,
       "json",
       {"volumes.lgOscillatoryIntegral", "volumes.equivariantQuantumVolume"},
       runOscint},
      {"qdh", "quantum Duistermaat-Heckman measure of P^1", Input::None, "csv", {"volumes.quantumDHMeasure"}, runQdh},
      {"charge", "central charge of O(m) on P^{n-1}", Input::None, "json", {"volumes.centralCharge"}, runCharge},
      {"bundle",
       "projective bundle rings, root decomposition and Brown I-function",
       Input::Bundle,
       "json",
       {"bundles.lerayHirsch", "bundles.qhSv", "bundles.rootDecomposition", "ifunctions.brownI",
        "ifunctions.splitBundleJ", "ifunctions.jProjective"},
       runBundle},
      {"spectrum", "Euler vector field spectrum at large q", Input::Bundle, "json", {"bundles.eulerSpectrum"},
       runSpectrum},
      {"stationary",
       "critical points and stationary-phase data of a fixed component",
       Input::Weights,
       "json",
       {"stationary.criticalPoints", "stationary.effectivePotential", "stationary.saddleAmplitude",
        "stationary.gammaFactorG", "stationary.deltaExpansion"},
       runStationary},
  };
  return table;
}

const CommandSpec* findCommand(const std::string& name) {
  for (auto& c : commandTable())
    if (c.name == name) return &c;
  return nullptr;
}

std::vector<double> parseDoubles(const std::string& s) {
  std::vector<double> out;
  for (auto& item : splitComma(s)) {
    try {
      size_t used = 0;
      double v = std::stod(item, &used);
      if (used != item.size() || !std::isfinite(v)) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      fail(ErrorKind::Input, "not a number list: '" + s + "'");
    }
  }
  return out;
}

std::vector<int> parseInts(const std::string& s) {
  std::vector<int> out;
  for (auto& item : splitComma(s)) {
    try {
      size_t used = 0;
      long v = std::stol(item, &used);
      if (used != item.size() || v < -100000 || v > 100000) throw std::invalid_argument(item);
      out.push_back(static_cast<int>(v));
    } catch (const std::exception&) {
      fail(ErrorKind::Input, "not an integer list: '" + s + "'");
    }
  }
  return out;
}

std::vector<std::string> parseStrings(const std::string& s) {
  auto out = splitComma(s);
  for (auto& x : out)
    if (x.empty()) fail(ErrorKind::Input, "empty entry in list '" + s + "'");
  return out;
}

void validate(const JobConfig& cfg) {
  const CommandSpec* spec = findCommand(cfg.command);
  if (!spec) fail(ErrorKind::Input, "unknown command '" + cfg.command + "'");
  auto finite = [](double x) { return std::isfinite(x); };
  if (cfg.order < 0 || cfg.order > 40) fail(ErrorKind::Input, "--order must be in 0..40");
  if (!finite(cfg.tol) || cfg.tol <= 0 || cfg.tol >= 1) fail(ErrorKind::Input, "--tol must be in (0, 1)");
  if (!finite(cfg.z) || cfg.z <= 0) fail(ErrorKind::Input, "--z must be positive");
  if (!finite(cfg.q) || cfg.q <= 0) fail(ErrorKind::Input, "--q must be positive");
  if (cfg.n < 1 || cfg.n > 12) fail(ErrorKind::Input, "--n must be in 1..12");
  if (!std::isnan(cfg.eps) && !finite(cfg.eps)) fail(ErrorKind::Input, "--eps must be finite");
  for (double x : cfg.lambda)
    if (!finite(x)) fail(ErrorKind::Input, "--lambda entries must be finite");
  for (double x : cfg.tau)
    if (!finite(x)) fail(ErrorKind::Input, "--tau entries must be finite");
  if ((cfg.tau1 && !finite(*cfg.tau1)) || (cfg.tau2 && !finite(*cfg.tau2)))
    fail(ErrorKind::Input, "--tau1/--tau2 must be finite");
  if (cfg.delta && !finite(*cfg.delta)) fail(ErrorKind::Input, "--delta must be finite");
  if (!cfg.format.empty() && cfg.format != "json" && cfg.format != "csv")
    fail(ErrorKind::Input, "--format must be json or csv");
  if (cfg.method != "series" && cfg.method != "cohomological")
    fail(ErrorKind::Input, "--method must be series or cohomological");
  if (cfg.command == "qdh") parseGrid(cfg.grid);

  auto needFile = [](const std::string& path, const char* flag) {
    if (path.empty()) fail(ErrorKind::Input, std::string("missing ") + flag);
    if (!std::filesystem::is_regular_file(path)) fail(ErrorKind::Input, "no such file: " + path);
  };
  switch (spec->input) {
    case Input::Glsm: needFile(cfg.glsm, "--glsm"); break;
    case Input::Bundle: needFile(cfg.bundle, "--bundle"); break;
    case Input::Weights: needFile(cfg.weights, "--weights"); break;
    case Input::None:
      if (!cfg.glsm.empty()) needFile(cfg.glsm, "--glsm");
      break;
  }
}

int run(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
    const CommandSpec* spec = findCommand(cfg.command);
    CommandOutput result = spec->handler(cfg);
    const std::string format = cfg.format.empty() ? spec->defaultFormat : cfg.format;
    std::string text;
    if (format == "csv") {
      if (result.csv.empty()) fail(ErrorKind::Input, cfg.command + " has no CSV output");
      text = result.csv;
    } else {
      text = result.json.dump(2) + "\n";
    }
    if (cfg.out.empty()) {
      out << text;
    } else {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!f) fail(ErrorKind::Input, "cannot write " + cfg.out);
      f << text;
      if (!f) fail(ErrorKind::Input, "write failed: " + cfg.out);
    }
    return 0;
  } catch (const Error& e) {
    err << "qfourier " << cfg.command << ": " << kindName(e.kind()) << ": " << e.what() << '\n';
    return exitCode(e.kind());
  } catch (const std::exception& e) {
    err << "qfourier " << cfg.command << ": internal error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace qfourier::cli
