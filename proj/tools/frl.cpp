#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "frl/config.hpp"
#include "frl/experiments.hpp"
#include "frl/numerics.hpp"

namespace {

enum Exit { kOk = 0, kValidation = 2, kResource = 3, kNonConvergence = 4 };

struct Options {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out = "out";
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  bool check_only = false;
};

int run(const std::string& experiment, const Options& opt) {
  try {
    if (opt.threads > 0) frl::set_thread_count(opt.threads);
    const auto cfg = frl::config::load_config(
        experiment, opt.config_path.empty() ? std::nullopt : std::optional<std::string>(opt.config_path),
        opt.overrides, opt.out, opt.seed);
    std::cout << "config " << cfg.experiment << " seed=" << cfg.seed << " " << cfg.params.dump() << "\n";
    if (opt.check_only) return kOk;
    const auto res = frl::experiments::run_experiment(cfg);
    for (const auto& f : res.files) std::cout << "wrote " << f << "\n";
    std::cout << res.summary["results"].dump() << "\n";
    if (!res.converged) {
      std::cerr << "error: quadrature did not converge (see flags in the summary)\n";
      return kNonConvergence;
    }
    return kOk;
  } catch (const frl::DomainError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const frl::ResourceError& e) {
    std::cerr << "resource error (" << experiment << "): " << e.what() << "\n";
    return kResource;
  } catch (const frl::ConvergenceError& e) {
    std::cerr << "convergence error (" << experiment << "): " << e.what() << "\n";
    return kNonConvergence;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical lab for fractal restriction bounds"};
  app.require_subcommand(1);
  Options opt;
  std::string chosen;
  for (const auto& name : frl::config::experiment_names()) {
    auto* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("--config", opt.config_path, "JSON parameter file");
    sub->add_option("--set", opt.overrides, "parameter override key=value (repeatable)");
    sub->add_option("--out", opt.out, "output directory")->capture_default_str();
    sub->add_option("--seed", opt.seed, "random seed");
    sub->add_option("--threads", opt.threads, "worker threads (0 = hardware)");
    sub->add_flag("--check", opt.check_only, "validate and echo the configuration only");
    sub->callback([&chosen, name] { chosen = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kValidation;
  }
  return run(chosen, opt);
}
