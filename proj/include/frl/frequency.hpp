#pragma once

#include <memory>
#include <utility>

#include "frl/numerics.hpp"
#include "frl/sampled.hpp"

namespace frl::measures {
struct WeightFunction;
}

namespace frl::frequency {

/// Even bump eta-hat with eta-hat = 1 on [-1/2, 1/2] and 0 outside (-1, 1), and
/// its inverse transform eta(x) = (1/2pi) int eta-hat(xi) e^{i x xi} d xi.
class BumpPair {
 public:
  explicit BumpPair(double transition_sharpness = 1.0);

  double fourier(double xi) const;
  /// eta(x) from the tabulated inverse transform (direct quadrature past the table).
  double spatial(double x) const;
  /// eta(x) by direct Gauss-Legendre quadrature of the cosine transform.
  double spatial_direct(double x) const;

  double sharpness() const { return sharpness_; }
  double table_range() const { return table_.x_max(); }

 private:
  double sharpness_;
  UniformTable table_;  // eta on [0, X], even extension
};

BumpPair make_bump_pair(double transition_sharpness = 1.0);

/// eta_beta(x) = 2 beta cos(lambda x) eta(beta x). Requires 1 <= beta <= lambda.
double eta_beta(const BumpPair& b, double lambda, double beta, double x);

/// eta-hat((xi - lambda)/beta) + eta-hat((xi + lambda)/beta).
double eta_beta_hat(const BumpPair& b, double lambda, double beta, double xi);

enum class BandMode { pass, complement };

inline constexpr int kPadFactor = 4;

/// Pi_beta f (pass) or f - Pi_beta f (complement), computed spectrally on a grid
/// zero-padded to kPadFactor times the input length. The result lives on the padded grid.
SampledFunction band_project(const BumpPair& b, double lambda, double beta, const SampledFunction& f,
                             BandMode mode);

/// Samples of f-hat(xi) = int f(x) e^{-i x xi} dx at the DFT frequencies of f's grid
/// after zero-padding by `pad` (Riemann-sum transform; frequencies ordered ascending).
struct Spectrum {
  double xi_min = 0.0;
  double xi_step = 1.0;
  std::vector<cplx> values;
  double xi(std::size_t k) const { return xi_min + xi_step * static_cast<double>(k); }
};
Spectrum spectrum(const SampledFunction& f, int pad = 1);

/// gamma(s) = pi^{s-1/2} Gamma((1-s)/2) / Gamma(s/2).
double riesz_gamma(double s);

struct EnergyIdentity {
  double lhs = 0.0;  // gamma(s)/(2pi)^s int |(phi w)^|^2 |xi|^{s-1}
  double rhs = 0.0;  // I_s(phi w) by double quadrature
  double relative_gap() const;
};

/// Both sides of the Fourier form of the energy, computed independently.
/// xi_max <= 0 selects the Nyquist frequency of w's grid.
EnergyIdentity fourier_energy_identity(const measures::WeightFunction& w, const SampledFunction& phi, double s,
                                       double xi_max = 0.0);

/// gamma(s)/(2pi)^s int |F^|^2 |xi|^{s-1} d xi for F = phi*w (transform side only).
double fourier_energy(const measures::WeightFunction& w, const SampledFunction& phi, double s, double xi_max = 0.0);

}  // namespace frl::frequency
