#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "frl/geometry.hpp"
#include "frl/numerics.hpp"

namespace frl::spherical {

/// phi_s(g) = int_K exp((is + 1/2) A(k g)) dk by trapezoid on K with doubling to 1e-8.
cplx phi_s(double s, const geometry::GroupElement& g);
/// phi_s(a(x)) (real for real s).
double phi_s_radial(double s, double x);

/// Harish-Chandra transform of a radial function f(r) supported in r <= support_radius:
/// 2 pi int_0^R f(r) phi_{-s}(a(r)) sinh r dr.
double hc_forward(const std::function<double(double)>& f, double support_radius, double s);

/// Inverse transform at a(x): int_0^T H(s) phi_s(a(x)) (2pi)^{-1} s tanh(pi s) ds, with H
/// negligible beyond `truncation`. Evaluated through the Mehler-Dirichlet representation.
double hc_inverse(const std::function<double(double)>& H, double truncation, double x);

/// h(s) = (sin(eps s / 2) / (eps s / 2))^4.
double h_profile(double s, double eps);

struct KernelOptions {
  double h_width = 0.05;                // eps in h_profile
  double x_max = 4.0;                   // radial table range
  double samples_per_wavelength = 32;   // radial table samples per 1/lambda (>= 16)
  std::size_t budget = std::size_t{1} << 22;
};

/// k_lambda with Harish-Chandra transform (h0_lambda)^2, h0_lambda(s) = h(s - lambda) + h(-s - lambda).
class SphericalKernel {
 public:
  SphericalKernel(double lambda, const KernelOptions& opts);

  double lambda() const { return lambda_; }
  double h_width() const { return eps_; }
  double h0(double s) const;
  double H(double s) const;  // (h0)^2
  double truncation() const { return s_max_; }
  /// Radius beyond which k_lambda vanishes (4 * h_width).
  double support_radius() const { return 4.0 * eps_; }

  /// k_lambda(a(x)) from the radial table (even in x; 0 beyond the support or the table).
  double operator()(double x) const;
  /// k_lambda(a(x)) by direct quadrature of the Mehler integral.
  double direct(double x) const;

  const UniformTable& table() const { return table_; }

 private:
  double lambda_;
  double eps_;
  double s_max_;
  UniformTable q_;      // Q(theta) = (2pi)^{-1} int H(s) s tanh(pi s) cos(s theta) ds
  UniformTable table_;  // k_lambda(a(x)), x >= 0
};

SphericalKernel make_kernel(double lambda, const KernelOptions& opts = {});

/// Mehler-Dirichlet outer integral (sqrt2/pi) int_0^x q(theta) (cosh x - cosh theta)^{-1/2} d theta
/// for an integrand oscillating at frequency up to `freq`.
double mehler_integral(const std::function<double(double)>& q, double x, double freq);

struct EigenResidual {
  double max_abs = 0.0;       // sup |(Delta + 1/4 + s^2) phi_s|
  double max_relative = 0.0;  // max_abs / (1/4 + s^2)
};
/// Radial eigen-equation residual of phi_s on [r_lo, r_hi] by fourth-order differences with step h.
EigenResidual radial_eigen_residual(double s, double r_lo, double r_hi, double h);

struct AsymptoticFit {
  std::vector<double> x;
  std::vector<cplx> f_plus;   // amplitude of e^{isx}
  std::vector<cplx> f_minus;  // amplitude of e^{-isx}
  double sup_scaled = 0.0;    // sup |f_+| (s x)^{1/2}
  double residual = 0.0;      // sup |phi - fit| over the fit windows
  double residual_bound_ratio = 0.0;  // sup residual(x) / (10 (s x)^{-2})
  bool flagged = false;       // ill-conditioned local fit encountered
};
/// Demodulates phi_s(a(x)) = f_+ e^{isx} + f_- e^{-isx} on [x_lo, x_hi] by local least squares
/// with quadratic amplitudes. `samples` supplies phi values; defaults to phi_s_radial.
AsymptoticFit asymptotic_check(double s, double x_lo, double x_hi, std::size_t points = 32,
                               const std::function<double(double)>& samples = {});

}  // namespace frl::spherical
