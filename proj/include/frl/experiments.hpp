#pragma once

#include <string>
#include <vector>

#include "frl/config.hpp"
#include "frl/geometry.hpp"
#include "frl/hecke.hpp"
#include "frl/measures.hpp"

namespace frl::experiments {

struct RunResult {
  std::vector<std::string> files;  // written artifacts, CSV first
  config::Json summary;
  bool converged = true;  // false when any quadrature missed its doubling tolerance
};

/// Run one configured experiment, writing `<out>/<experiment>.csv` and `<out>/<experiment>_summary.json`.
/// Artifacts are removed again if the run throws.
RunResult run_experiment(const config::ExperimentConfig& cfg);

/// Identity followed by count - 1 points of the unit-ball grid.
std::vector<geometry::GroupElement> conjugator_grid(std::size_t count);

struct ShapeRow {
  long long n = 0;
  double kappa = 0.0;
  std::size_t g_index = 0;
  long long count = 0;
  double shape_ratio = 0.0;  // M / ((n/kappa)^{0.1} (n sqrt(kappa) + 1))
};
/// Hecke-return counts over n <= n_max, the kappa list and the conjugators.
std::vector<ShapeRow> lemma51_shape(const hecke::QuatAlgebra& alg, long long n_max, const std::vector<double>& kappas,
                                    const std::vector<geometry::GroupElement>& gs);

/// Cantor measure of dimension alpha and its lambda-scale weight.
struct WeightBundle {
  measures::FractalMeasure nu;
  measures::WeightFunction w;
};
WeightBundle cantor_weight(double alpha, int depth, double lambda, double c_ell, double samples_per_wavelength);

/// Shortest round-trippable decimal form used in every CSV cell.
std::string format_number(double v);

}  // namespace frl::experiments
