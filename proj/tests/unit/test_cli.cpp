#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "doctest.h"
#include "qfourier/errors.hpp"
#include "qfourier/ifunctions.hpp"
#include "support.hpp"

using namespace qfourier;
using qftest::kindOf;

namespace {

const std::string kData = QF_DATA_DIR;
const std::string kCli = QF_CLI_PATH;

struct Proc {
  int code;
  std::string out;
};

Proc runCli(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + "'" + kCli + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string readAll(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path tempFile(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qfourier_test_" + std::to_string(::getpid()) + "_" + name);
}

cli::JobConfig job(const std::string& command) {
  cli::JobConfig c;
  c.command = command;
  return c;
}

}  // namespace

TEST_CASE("empty weights file exits with a validation error") {
  CHECK(runCli("ift --glsm '" + kData + "/empty_weights.toml'").code == 2);
  auto blank = tempFile("blank.toml");
  std::ofstream(blank).close();
  CHECK(runCli("quotient --glsm '" + blank.string() + "'").code == 2);
  CHECK(runCli("stationary --weights '" + blank.string() + "'").code == 2);
  std::filesystem::remove(blank);
}

TEST_CASE("ift on P^2 equals the J-function golden file") {
  Proc p = runCli("ift --glsm '" + kData + "/pn.toml' --order 6");
  REQUIRE(p.code == 0);
  Json got = Json::parse(p.out);
  REQUIRE(got.contains("support"));
  CHECK(got["support"]["ok"] == true);
  CHECK(got["support"]["violations"].empty());
  got.erase("support");
  Json golden = Json::parse(readAll(kData + "/jprojective_n3_order6.json"));
  CHECK(got == golden);
  // The library's own J-function serializes to the same document.
  CHECK(seriesJson(jProjective(3, 6)) == golden);
}

TEST_CASE("output is byte-identical across runs and thread counts") {
  const std::string ift = "ift --glsm '" + kData + "/f1.toml' --order 4";
  Proc a = runCli(ift), b = runCli(ift), c = runCli(ift, "QFOURIER_THREADS=1");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  const std::string qdh = "qdh --tau1 -20 --tau2 -20 --z 1 --grid -30:30:0.1";
  Proc d = runCli(qdh), e = runCli(qdh, "QFOURIER_THREADS=2");
  REQUIRE(d.code == 0);
  CHECK(d.out == e.out);
  const std::string mb = "mb --n 2 --q 5 --tol 1e-10";
  CHECK(runCli(mb).out == runCli(mb, "QFOURIER_THREADS=1").out);
}

TEST_CASE("qdh CSV") {
  Proc p = runCli("qdh --tau1 -20 --tau2 -20 --z 1 --grid -30:30:0.1");
  REQUIRE(p.code == 0);
  std::istringstream in(p.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,value");
  int rows = 0;
  double atZero = -1;
  while (std::getline(in, line)) {
    ++rows;
    auto comma = line.find(',');
    REQUIRE(comma != std::string::npos);
    double t = std::stod(line.substr(0, comma));
    std::string v = line.substr(comma + 1);
    CHECK(v.find('-') != 0);  // values stay positive
    if (t == 0) atZero = std::stod(v);
  }
  CHECK(rows == 601);
  CHECK(std::abs(atZero - std::exp(-2 * std::exp(-20.0))) < 1e-15);
  Proc j = runCli("qdh --tau1 -20 --tau2 -20 --grid -1:1:0.5 --format json");
  REQUIRE(j.code == 0);
  CHECK(Json::parse(j.out)["samples"].size() == 5);
}

TEST_CASE("exit codes") {
  CHECK(runCli("qvol --n 3 --q 1e6").code == 3);             // residue series diverges numerically
  CHECK(runCli("mb --n 1 --eps -1").code == 3);              // contour on a Gamma pole
  auto orbifold = tempFile("orbifold.toml");
  std::ofstream(orbifold) << "weights = [[1], [2]]\nchamber = [1]\n";
  CHECK(runCli("quotient --glsm '" + orbifold.string() + "'").code == 4);
  std::filesystem::remove(orbifold);
  CHECK(runCli("qvol --z -1").code == 2);
  CHECK(runCli("qvol --tol 0").code == 2);
  CHECK(runCli("qdh --grid 1:0:0.1").code == 2);
  CHECK(runCli("ift --glsm /nonexistent/file.toml").code == 2);
  CHECK(runCli("nosuchcommand").code == 2);
  CHECK(runCli("qvol --n 2 --format csv").code == 0);
  CHECK(runCli("chambers --glsm '" + kData + "/f1.toml' --format csv").code == 2);
  CHECK(runCli("--help").code == 0);
}

TEST_CASE("--out writes the same bytes as stdout") {
  auto out = tempFile("out.json");
  Proc a = runCli("jk --glsm '" + kData + "/f1.toml' --out '" + out.string() + "'");
  REQUIRE(a.code == 0);
  CHECK(a.out.empty());
  CHECK(readAll(out.string()) == runCli("jk --glsm '" + kData + "/f1.toml'").out);
  std::filesystem::remove(out);
}

TEST_CASE("dispatch table covers every module operation") {
  const std::set<std::string> expected{
      "algebra.reduce", "algebra.nilpotentInverse", "algebra.residueAt", "algebra.gammaExpand", "algebra.expSeries",
      "glsm.chambers", "glsm.quotientPresentation", "glsm.integrate",
      "shiftops.applyShift", "shiftops.checkCommutation", "shiftops.gkzRelation", "shiftops.toDifferential",
      "shiftops.applyDifferential",
      "ifunctions.jProjective", "ifunctions.toricI", "ifunctions.splitBundleJ", "ifunctions.brownI",
      "fourier.discreteFT", "fourier.supportCheck", "fourier.tautologicalMirror", "fourier.chainRuleCheck",
      "volumes.equivariantVolume", "volumes.jkVolume", "volumes.polytopeVolumeOracle", "volumes.gammaClassNumeric",
      "volumes.quantumVolumeSeries", "volumes.mellinBarnes", "volumes.saddleAsymptotic",
      "volumes.equivariantQuantumVolume", "volumes.lgOscillatoryIntegral", "volumes.quantumDHMeasure",
      "volumes.centralCharge",
      "stationary.gammaFactorG", "stationary.deltaExpansion", "stationary.effectivePotential",
      "stationary.criticalPoints", "stationary.saddleAmplitude",
      "bundles.lerayHirsch", "bundles.qhSv", "bundles.rootDecomposition", "bundles.eulerSpectrum"};
  const std::set<std::string> commands{"chambers", "quotient", "volume", "jk", "shift", "gkz",
                                       "ift", "mirror", "chainrule", "qvol", "mb", "saddle",
                                       "oscint", "qdh", "charge", "bundle", "spectrum", "stationary"};
  std::set<std::string> reached, names;
  for (auto& c : cli::commandTable()) {
    names.insert(c.name);
    reached.insert(c.operations.begin(), c.operations.end());
  }
  CHECK(names == commands);
  for (auto& op : expected) CHECK_MESSAGE(reached.count(op), op);
  for (auto& op : reached) CHECK_MESSAGE(expected.count(op), op);
}

TEST_CASE("every command runs in process") {
  auto withFile = [](cli::JobConfig c, const std::string& file) {
    if (c.command == "bundle" || c.command == "spectrum") c.bundle = kData + "/" + file;
    else if (c.command == "stationary") c.weights = kData + "/" + file;
    else c.glsm = kData + "/" + file;
    return c;
  };
  std::vector<cli::JobConfig> jobs{
      withFile(job("chambers"), "f1.toml"), withFile(job("quotient"), "f1.toml"), withFile(job("volume"), "f1.toml"),
      withFile(job("jk"), "f1.toml"),       withFile(job("shift"), "f1.toml"),    withFile(job("gkz"), "p1p1.toml"),
      withFile(job("ift"), "f1.toml"),      job("mirror"),                        job("chainrule"),
      job("qvol"),                          job("mb"),                            job("saddle"),
      withFile(job("oscint"), "p1.toml"),   job("qdh"),                           job("charge"),
      withFile(job("bundle"), "o_plus_o_minus1.toml"), withFile(job("spectrum"), "o_plus_o_minus1.toml"),
      withFile(job("stationary"), "blowup3.toml")};
  for (auto& j : jobs) {
    if (j.command == "mirror" || j.command == "chainrule" || j.command == "bundle") j.order = 2;
    if (j.command == "oscint") {
      j.tau = {-3, -3};
      j.lambda = {0.3};
    }
    if (j.command == "stationary") {
      j.q = 3;
      j.delta = 50.0;
      j.lambda = {0.3};
    }
    if (j.command == "spectrum") j.q = 1e6;
    std::ostringstream out, err;
    CHECK_MESSAGE(cli::run(j, out, err) == 0, j.command << ": " << err.str());
    CHECK_MESSAGE(!out.str().empty(), j.command);
  }
}

TEST_CASE("command outputs") {
  auto runJson = [](cli::JobConfig c) {
    std::ostringstream out, err;
    REQUIRE_MESSAGE(cli::run(c, out, err) == 0, err.str());
    return Json::parse(out.str());
  };
  auto jk = job("jk");
  jk.glsm = kData + "/f1.toml";
  jk.t = {"3", "1"};
  Json j = runJson(jk);
  CHECK(j["agree"] == true);
  CHECK(j["jk_volume"] == j["polytope_volume"]);

  auto gkz = job("gkz");
  gkz.glsm = kData + "/f1.toml";
  for (auto& op : runJson(gkz)["operators"]) CHECK(op["annihilates"] == true);

  auto quot = job("quotient");
  quot.glsm = kData + "/f1.toml";
  for (auto& row : runJson(quot)["integrals"]) CHECK(row["integral"] == row["localization"]);

  auto q = job("qvol");
  q.n = 1;
  q.tol = 1e-12;
  CHECK(std::abs(runJson(q)["value_re"].get<double>() - std::exp(-1.0)) < 1e-10);

  auto bundle = job("bundle");
  bundle.bundle = tempFile("point.toml").string();
  std::ofstream(bundle.bundle) << "base_dim = 0\ntwists = [0, 0, 0]\n";
  bundle.order = 3;
  Json b = runJson(bundle);
  CHECK(b["checks"]["matches_j_projective"] == true);
  for (auto& [k, v] : b["checks"].items()) CHECK_MESSAGE(v == true, k);
  std::filesystem::remove(bundle.bundle);

  auto st = job("stationary");
  st.weights = kData + "/blowup3.toml";
  st.q = 3;
  Json s = runJson(st);
  CHECK(s["c_F"] == -2);
  CHECK(s["critical_points"].size() == 2);
}

TEST_CASE("input parsing") {
  GlsmFile f = parseGlsmToml("weights = [[1, 0], [0, 1], [1, 1]]\nchamber = [\"1/2\", 1]\n"
                             "[names]\ncoordinates = [\"a\", \"b\", \"c\"]\n");
  CHECK(f.glsm.chamber[0] == frac(1, 2));
  CHECK(f.glsm.coordinateNames[2] == "c");
  CHECK(f.glsm.parameterNames == std::vector<std::string>{"p1", "p2"});
  CHECK(kindOf([] { parseGlsmToml("weights = [[1], [1]\n"); }) == ErrorKind::Input);
  CHECK(kindOf([] { parseGlsmToml("weights = [[1], [1]]\n"); }) == ErrorKind::Input);
  CHECK(kindOf([] { parseGlsmToml("weights = [[1], [1, 2]]\nchamber = [1]\n"); }) == ErrorKind::Input);
  CHECK(kindOf([] { parseGlsmToml("weights = [[1], [1]]\nchamber = [\"x\"]\n"); }) == ErrorKind::Input);
  CHECK(kindOf([] { parseGlsmToml("weights = [[1.5], [1]]\nchamber = [1]\n"); }) == ErrorKind::Input);
  CHECK(kindOf([] { parseBundleToml("twists = [0]\n"); }) == ErrorKind::Input);
  CHECK(kindOf([] { parseWeightsToml("blocks = [[1, 2, 3]]\n"); }) == ErrorKind::Input);
  CHECK(kindOf([] { parseWeightsToml("blocks = [[0, 2]]\n"); }) == ErrorKind::Unsupported);
  CHECK(cli::parseDoubles("0.3,-1e-2") == std::vector<double>{0.3, -0.01});
  CHECK(kindOf([] { cli::parseDoubles("1,,2"); }) == ErrorKind::Input);
  CHECK(kindOf([] { cli::parseDoubles("nan"); }) == ErrorKind::Input);
  CHECK(kindOf([] { cli::parseInts("1.5"); }) == ErrorKind::Input);
}

TEST_CASE("log-scale value formatting") {
  CHECK(formatLogValue(0) == "1.000000000000000e+00");
  CHECK(std::abs(std::stod(formatLogValue(std::log(2.5e-7))) / 2.5e-7 - 1) < 1e-14);
  CHECK(formatLogValue(std::log(2.5e-7)).size() == 21);
  // far below the double range
  CHECK(formatLogValue(-1e5 * std::log(10.0)) == "1.000000000000000e-100000");
  CHECK(std::stod(formatLogValue(std::log(0.125))) == 0.125);
  CHECK(formatLogValue(-INFINITY) == "0");
}
