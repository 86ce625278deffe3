#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "qfourier/errors.hpp"

using namespace qfourier;

int main(int argc, char** argv) {
  CLI::App app{"Quantum Fourier transforms, I-functions and quantum volumes of toric GLSMs"};
  app.require_subcommand(1);
  app.fallthrough();

  cli::JobConfig cfg;
  std::string lambda, tau, shift, t;
  double tau1 = 0, tau2 = 0, delta = 0;

  app.add_option("--glsm", cfg.glsm, "GLSM TOML file");
  app.add_option("--bundle", cfg.bundle, "split bundle TOML file");
  app.add_option("--weights", cfg.weights, "fixed-component weights TOML file");
  app.add_option("--order", cfg.order, "truncation order")->capture_default_str();
  app.add_option("--tol", cfg.tol, "tolerance")->capture_default_str();
  app.add_option("--q", cfg.q, "Novikov parameter")->capture_default_str();
  app.add_option("--z", cfg.z, "z > 0")->capture_default_str();
  app.add_option("--n", cfg.n, "number of coordinates of C^n or P^{n-1}")->capture_default_str();
  app.add_option("--lambda", lambda, "equivariant parameters, comma separated");
  app.add_option("--tau", tau, "Kahler parameters, comma separated");
  auto* o1 = app.add_option("--tau1", tau1, "first Kahler parameter");
  auto* o2 = app.add_option("--tau2", tau2, "second Kahler parameter");
  app.add_option("--twist", cfg.twist, "twist m of O(m)")->capture_default_str();
  app.add_option("--grid", cfg.grid, "sample grid a:b:step")->capture_default_str();
  app.add_option("--out", cfg.out, "output file (default stdout)");
  app.add_option("--format", cfg.format, "json or csv");
  app.add_option("--eps", cfg.eps, "Mellin-Barnes contour Re(lambda)");
  app.add_option("--shift", shift, "shift cocharacter k, comma separated");
  app.add_option("--t", t, "point t for jk, comma separated rationals");
  app.add_option("--method", cfg.method, "series or cohomological")->capture_default_str();
  app.add_option("--branch", cfg.branch, "critical point branch")->capture_default_str();
  auto* od = app.add_option("--delta", delta, "delta for the Stirling expansion");
  app.add_flag("--regularize", cfg.regularize, "Richardson limit on Gamma poles");

  for (auto& c : cli::commandTable()) {
    auto* sub = app.add_subcommand(c.name, c.summary);
    sub->callback([&cfg, name = c.name] { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "qfourier: " << e.what() << '\n';
    return exitCode(ErrorKind::Input);
  }

  try {
    if (o1->count()) cfg.tau1 = tau1;
    if (o2->count()) cfg.tau2 = tau2;
    if (od->count()) cfg.delta = delta;
    cfg.lambda = cli::parseDoubles(lambda);
    cfg.tau = cli::parseDoubles(tau);
    cfg.shift = cli::parseInts(shift);
    cfg.t = cli::parseStrings(t);
  } catch (const Error& e) {
    std::cerr << "qfourier: " << e.what() << '\n';
    return exitCode(e.kind());
  }
  return cli::run(cfg, std::cout, std::cerr);
}
