#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "frl/frequency.hpp"
#include "frl/sampled.hpp"

namespace frl::measures {

/// Finite atomic approximation of a measure on [0, 1].
/// Atoms are sorted, distinct and lie in [0, 1]; weights are nonnegative.
struct FractalMeasure {
  std::vector<double> atoms;
  std::vector<double> weights;
  double alpha = 1.0;
  int depth = 0;

  double total_mass() const;
  void validate() const;  // throws DomainError
};

/// Sampled weight on a uniform grid over [-2, 2]. Interval integrals treat sample i as the cell
/// [x_i - h/2, x_i + h/2]; energies use the piecewise-linear interpolant.
struct WeightFunction {
  UniformGrid grid;
  std::vector<double> values;
  double lambda_ref = 1.0;
  double frostman_alpha = 1.0;

  void validate() const;
  double total_mass() const;
  /// Integral of w over [lo, hi] under the piecewise-constant cell model.
  double integral(double lo, double hi) const;
  /// L^2(w) norm squared of phi sampled on the same grid.
  double l2w_norm_squared(std::span<const cplx> phi) const;
};

inline constexpr std::size_t kDefaultAtomBudget = std::size_t{1} << 22;
inline constexpr std::size_t kDefaultGridBudget = std::size_t{1} << 23;

/// Two-branch Cantor measure of dimension alpha, contraction ratio 2^{-1/alpha}.
FractalMeasure make_cantor_measure(double alpha, int depth, std::size_t atom_budget = kDefaultAtomBudget);

/// Equal-weight midpoints of a uniform partition of [0,1] into `count` cells (dimension 1).
FractalMeasure make_uniform_measure(std::size_t count);

/// sup over atoms x and radii r of mu(B(x, r)) / r^alpha, B the open ball.
double frostman_ratio(const FractalMeasure& m, std::span<const double> r_grid);

/// s-energy of an atomic measure, diagonal pairs excluded.
double energy(const FractalMeasure& m, double s);

/// s-energy of the piecewise-linear interpolant of a weight (exact in the grid model).
double energy(const WeightFunction& w, double s);

/// I_s(phi w) with phi sampled on w's grid.
cplx weighted_energy(const WeightFunction& w, std::span<const cplx> phi, double s);
cplx weighted_energy(const WeightFunction& w, const SampledFunction& phi, double s);

/// Integral of 1_{|x-y|<=delta} w(y) |x-y|^{-s} dy.
double truncated_riesz(const WeightFunction& w, double x, double s, double delta);

struct WeightOptions {
  double c_ell = 2.0;                 // distance-derivative constant C_l
  double samples_per_wavelength = 0;  // samples per 1/lambda; 0 -> 8 * c_ell
  double rho_sharpness = 1.0;
  std::size_t grid_budget = kDefaultGridBudget;
};

/// w(t) = rho(t) * sum_i nu_i sqrt(lambda^2 eta_L(lambda (s_i - t))^2 + 1),
/// eta_L(x) = 4 C_l eta(4 C_l x) with eta from `bump`.
WeightFunction build_weight(const FractalMeasure& nu, double lambda, const frequency::BumpPair& bump,
                            const WeightOptions& opts = {});

/// The fixed plateau cutoff: 1 on |s| <= 3/2, 0 on |s| >= 2.
double rho(double s, double sharpness = 1.0);

/// For each r in r_grid: sup over centers a (grid points of w) of
/// (integral of w over [a-r, a+r]) / r^alpha.
std::vector<double> interval_ratio_sweep(const WeightFunction& w, double alpha, std::span<const double> r_grid);

}  // namespace frl::measures
