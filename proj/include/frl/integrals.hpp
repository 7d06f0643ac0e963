#pragma once

#include <functional>
#include <vector>

#include "frl/frequency.hpp"
#include "frl/geometry.hpp"
#include "frl/hecke.hpp"
#include "frl/measures.hpp"
#include "frl/sampled.hpp"
#include "frl/spherical.hpp"

namespace frl::integrals {

/// Cutoffs b (1 on |x| <= 5W/6, 0 on |x| >= W) and b1 (1 on [-6,6], 0 outside [-7,7]).
struct TestWindow {
  double half_width = 3.0;
  double sharpness = 1.0;

  double b(double x) const;
  double b1(double x) const;
};

struct IntegralReport {
  cplx value{0.0, 0.0};
  cplx coarse_value{0.0, 0.0};  // same rule on every other grid point
  double error = 0.0;           // |value - coarse_value|
  bool converged = true;        // error <= 1% of |value|
  double lambda = 0.0;
  double step = 0.0;
  std::size_t kernel_evaluations = 0;
};

/// I(lambda, phi, g) = iint b(x1) b(x2) conj(phi(x1)) phi(x2) k_lambda(a(-x1) g a(x2)) dx1 dx2
/// by the rectangle rule on phi's grid (>= 8 samples per 1/lambda).
IntegralReport eval_I(const spherical::SphericalKernel& k, const TestWindow& w, const SampledFunction& phi,
                      const geometry::GroupElement& g);

/// Radial argument of k_lambda at (x1, g, x2): d(a(x1) i, g a(x2) i).
double radial_argument(double x1, const geometry::GroupElement& g, double x2);

struct AmplifiedReport {
  double value = 0.0;        // sum of |alpha_m alpha_n| d/sqrt(mn) |I(lambda, phi, g0^{-1} gamma g0)|
  double identity_term = 0.0;  // sum |alpha_m|^2 |I(lambda, phi, e)|
  std::size_t gamma_terms = 0;
  bool converged = true;
};

/// Right side of the amplified pretrace inequality, with gamma restricted to elements whose
/// displacement can bring the window segment within the kernel support.
AmplifiedReport amplified_rhs(const hecke::QuatAlgebra& alg, const hecke::Amplifier& amp,
                              const spherical::SphericalKernel& k, const TestWindow& w, const SampledFunction& phi,
                              const geometry::GroupElement& g0);

/// Standard test family: phi(x) = e^{i lambda x} e^{-x^2}.
cplx standard_phi(double lambda, double x);

/// phi * w on w's grid.
SampledFunction weighted_phi(const measures::WeightFunction& w, const std::function<cplx(double)>& phi);

struct BetaRow {
  double beta = 0.0;
  double value = 0.0;       // |I(lambda, Pi_beta^perp(phi w), e)|
  double normalized = 0.0;  // value / (lambda^{1/2} beta^{-(alpha-1/2)} ||phi||^2_{L^2(w)})
  double error = 0.0;
  bool converged = true;
};
struct BetaScaling {
  std::vector<BetaRow> rows;
  double slope = 0.0;  // d log value / d log beta
  double phi_norm_squared = 0.0;
};
BetaScaling beta_scaling_experiment(const spherical::SphericalKernel& k, const TestWindow& win,
                                    const measures::WeightFunction& w, const frequency::BumpPair& bump, double alpha,
                                    const std::vector<double>& betas, const std::function<cplx(double)>& phi);

struct DecayRow {
  double t = 0.0;
  double dist_to_A = 0.0;
  double value = 0.0;  // |I(lambda, Pi_beta(phi w), g_t)|
  double error = 0.0;
  bool converged = true;
};
struct RapidDecay {
  double threshold = 0.0;  // lambda^{-1/2 + eps0} beta^{1/2}
  std::vector<DecayRow> rows;
  double contrast = 0.0;  // value at the largest t / value at t = 0
  double near_median = 0.0;
  double far_median = 0.0;
};
/// g_t = [[1, 0], [t, 1]] for t = m * threshold, m in multipliers (0 included automatically).
RapidDecay rapid_decay_experiment(const spherical::SphericalKernel& k, const TestWindow& win,
                                  const measures::WeightFunction& w, const frequency::BumpPair& bump, double beta,
                                  double epsilon0, const std::vector<double>& multipliers,
                                  const std::function<cplx(double)>& phi);

/// max over a fixed 20-point grid of g with d(g, e) <= 1 of |I(lambda, Pi_beta(phi w), g)| /
/// (lambda^{1/2} ||phi||^2_{L^2(w)}).
double uniform_bound_experiment(const spherical::SphericalKernel& k, const TestWindow& win,
                                const measures::WeightFunction& w, const frequency::BumpPair& bump, double beta,
                                const std::function<cplx(double)>& phi);

/// Deterministic grid of group elements exp(X) with algebra norm of X in (0, radius].
std::vector<geometry::GroupElement> unit_ball_grid(std::size_t count, double radius);

/// exp of the algebra element [[x1, x2], [x3, -x1]].
geometry::GroupElement exp_algebra(double x1, double x2, double x3);

}  // namespace frl::integrals
