#pragma once

#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qfourier/io.hpp"

namespace qfourier::cli {

struct JobConfig {
  std::string command;
  std::string glsm;     // GLSM TOML
  std::string bundle;   // split bundle TOML
  std::string weights;  // fixed-component weight TOML
  int order = 5;
  double tol = 1e-6;
  double q = 1;
  double z = 1;
  int n = 2;
  std::vector<double> lambda;
  std::vector<double> tau;
  std::optional<double> tau1, tau2;
  int twist = 0;
  std::string grid = "-30:30:0.1";
  std::string out;
  std::string format;  // json or csv; empty picks the command default
  double eps = std::numeric_limits<double>::quiet_NaN();
  std::vector<int> shift;
  std::vector<std::string> t;
  std::string method = "series";
  int branch = 0;
  std::optional<double> delta;
  bool regularize = false;
};

struct CommandOutput {
  Json json;
  std::string csv;  // empty when the command has no CSV form
};

enum class Input { None, Glsm, Bundle, Weights };

struct CommandSpec {
  std::string name;
  std::string summary;
  Input input;
  std::string defaultFormat;
  /// module.operation names this command reaches
  std::vector<std::string> operations;
  std::function<CommandOutput(const JobConfig&)> handler;
};

const std::vector<CommandSpec>& commandTable();
const CommandSpec* findCommand(const std::string& name);

/// Throws Input on a malformed config.
void validate(const JobConfig& cfg);

/// Validates, dispatches and writes the output; returns the exit code.
int run(const JobConfig& cfg, std::ostream& out, std::ostream& err);

/// Comma-separated list parsers; throw Input.
std::vector<double> parseDoubles(const std::string& s);
std::vector<int> parseInts(const std::string& s);
std::vector<std::string> parseStrings(const std::string& s);

}  // namespace qfourier::cli
