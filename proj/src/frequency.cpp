#include "frl/frequency.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

#include "frl/measures.hpp"

namespace frl::frequency {

namespace {

constexpr std::size_t kTableLog2 = 19;
constexpr double kTableStep = 1.0 / 64.0;

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// In-place complex DFT, sign = FFTW_FORWARD (e^{-i...}) or FFTW_BACKWARD. Unnormalized.
void dft(std::vector<cplx>& data, int sign) {
  const int n = static_cast<int>(data.size());
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw ResourceError("FFTW plan creation failed");
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(plan);
}

// Signed DFT frequency index for bin k of an M-point transform.
long long signed_bin(std::size_t k, std::size_t m) {
  const auto kk = static_cast<long long>(k);
  const auto mm = static_cast<long long>(m);
  return kk <= mm / 2 ? kk : kk - mm;
}

double sinc(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

}  // namespace

BumpPair::BumpPair(double transition_sharpness) : sharpness_(transition_sharpness) {
  if (!(transition_sharpness > 0.0)) throw DomainError("BumpPair: sharpness must be positive");
  // Trapezoid rule for (1/2pi) int eta-hat(xi) e^{i x xi} d xi on the DFT lattice.
  const std::size_t n = std::size_t{1} << kTableLog2;
  const double dxi = 2.0 * kPi / (static_cast<double>(n) * kTableStep);
  std::vector<cplx> data(n);
  for (std::size_t k = 0; k < n; ++k) data[k] = fourier(dxi * static_cast<double>(signed_bin(k, n)));
  dft(data, FFTW_BACKWARD);
  const std::size_t keep = n / 2;
  std::vector<double> values(keep);
  for (std::size_t j = 0; j < keep; ++j) values[j] = data[j].real() * dxi / (2.0 * kPi);
  table_ = UniformTable(0.0, kTableStep, std::move(values));
}

double BumpPair::fourier(double xi) const {
  const double a = std::abs(xi);
  if (a <= 0.5) return 1.0;
  if (a >= 1.0) return 0.0;
  return smooth_step((1.0 - a) / 0.5, sharpness_);
}

double BumpPair::spatial(double x) const {
  const double a = std::abs(x);
  if (a <= table_.x_max()) return table_(a);
  return spatial_direct(a);
}

double BumpPair::spatial_direct(double x) const {
  const double a = std::abs(x);
  // (1/pi) [ int_0^{1/2} cos(a xi) + int_{1/2}^1 eta-hat(xi) cos(a xi) ].
  const double plateau_part = a < 1e-12 ? 0.5 : std::sin(0.5 * a) / a;
  const auto panels = static_cast<std::size_t>(std::max(8.0, std::ceil(a * 0.5 / kPi * 2.0)));
  const QuadRule q = composite_gauss(panels, 16, 0.5, 1.0);
  double tail = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) tail += q.weights[i] * fourier(q.nodes[i]) * std::cos(a * q.nodes[i]);
  return (plateau_part + tail) / kPi;
}

BumpPair make_bump_pair(double transition_sharpness) { return BumpPair(transition_sharpness); }

namespace {
void check_band(double lambda, double beta) {
  if (!(beta >= 1.0)) throw DomainError("band kernel: beta must be >= 1");
  if (!(beta <= lambda)) throw DomainError("band kernel: beta must not exceed lambda");
}
}  // namespace

double eta_beta(const BumpPair& b, double lambda, double beta, double x) {
  check_band(lambda, beta);
  return 2.0 * beta * std::cos(lambda * x) * b.spatial(beta * x);
}

double eta_beta_hat(const BumpPair& b, double lambda, double beta, double xi) {
  check_band(lambda, beta);
  return b.fourier((xi - lambda) / beta) + b.fourier((xi + lambda) / beta);
}

SampledFunction band_project(const BumpPair& b, double lambda, double beta, const SampledFunction& f,
                             BandMode mode) {
  check_band(lambda, beta);
  const std::size_t n = f.values.size();
  if (n == 0 || f.grid.size != n) throw DomainError("band_project: empty or inconsistent sampled function");
  const double h = f.grid.step;
  if (h > 2.0 * kPi / (4.0 * (lambda + beta))) {
    throw DomainError("band_project: grid does not resolve frequency lambda + beta");
  }
  const std::size_t m = n * static_cast<std::size_t>(kPadFactor);
  const std::size_t offset = (m - n) / 2;
  SampledFunction padded{UniformGrid{f.grid.min - static_cast<double>(offset) * h, h, m}, std::vector<cplx>(m)};
  std::copy(f.values.begin(), f.values.end(), padded.values.begin() + static_cast<std::ptrdiff_t>(offset));

  std::vector<cplx> data = padded.values;
  dft(data, FFTW_FORWARD);
  const double dxi = 2.0 * kPi / (static_cast<double>(m) * h);
  for (std::size_t k = 0; k < m; ++k) {
    const double xi = dxi * static_cast<double>(signed_bin(k, m));
    data[k] *= eta_beta_hat(b, lambda, beta, xi) / static_cast<double>(m);
  }
  dft(data, FFTW_BACKWARD);
  if (mode == BandMode::pass) {
    padded.values = std::move(data);
  } else {
    for (std::size_t k = 0; k < m; ++k) padded.values[k] -= data[k];
  }
  return padded;
}

Spectrum spectrum(const SampledFunction& f, int pad) {
  if (pad < 1) throw DomainError("spectrum: pad must be >= 1");
  const std::size_t n = f.values.size();
  if (n == 0) throw DomainError("spectrum: empty sampled function");
  const std::size_t m = n * static_cast<std::size_t>(pad);
  const double h = f.grid.step;
  std::vector<cplx> data(m);
  std::copy(f.values.begin(), f.values.end(), data.begin());
  dft(data, FFTW_FORWARD);
  const double dxi = 2.0 * kPi / (static_cast<double>(m) * h);
  Spectrum s;
  s.xi_step = dxi;
  const auto half = static_cast<long long>(m / 2);
  s.xi_min = -static_cast<double>(half) * dxi;
  s.values.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    const long long idx = static_cast<long long>(k) - half;
    const std::size_t src = static_cast<std::size_t>((idx + static_cast<long long>(m)) % static_cast<long long>(m));
    const double xi = dxi * static_cast<double>(idx);
    s.values[k] = data[src] * h * std::polar(1.0, -xi * f.grid.min);
  }
  return s;
}

double riesz_gamma(double s) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("riesz_gamma: s must lie in (0,1)");
  return std::pow(kPi, s - 0.5) * std::tgamma(0.5 * (1.0 - s)) / std::tgamma(0.5 * s);
}

double EnergyIdentity::relative_gap() const {
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
}

double fourier_energy(const measures::WeightFunction& w, const SampledFunction& phi, double s, double xi_max) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("fourier_energy: s must lie in (0,1)");
  if (!phi.grid.same_as(w.grid)) throw DomainError("fourier_energy: phi grid does not match w grid");
  const double h = w.grid.step;
  std::size_t lo = 0, hi = w.values.size();
  while (lo < hi && w.values[lo] == 0.0) ++lo;
  while (hi > lo && w.values[hi - 1] == 0.0) --hi;
  if (lo >= hi) return 0.0;
  std::vector<cplx> f(hi - lo);
  for (std::size_t i = lo; i < hi; ++i) f[i - lo] = phi.values[i] * w.values[i];
  const double x0 = w.grid.at(lo);

  // Transform of the piecewise-linear interpolant through the samples.
  auto transform = [&](double xi) {
    const cplx step = std::polar(1.0, -h * xi);
    cplx phase = std::polar(1.0, -x0 * xi);
    cplx acc{0.0, 0.0};
    for (const cplx& v : f) {
      acc += v * phase;
      phase *= step;
    }
    const double sc = sinc(0.5 * xi * h);
    return acc * h * sc * sc;
  };
  auto both_sides = [&](double xi) { return std::norm(transform(xi)) + std::norm(transform(-xi)); };

  const double cap = xi_max > 0.0 ? xi_max : kPi / h;
  const double xi1 = std::min(0.5, cap);
  // Near zero: u = xi^s removes the |xi|^{s-1} singularity.
  const QuadRule q0 = gauss_legendre(32, 0.0, std::pow(xi1, s));
  double head = 0.0;
  for (std::size_t i = 0; i < q0.nodes.size(); ++i) head += q0.weights[i] * both_sides(std::pow(q0.nodes[i], 1.0 / s));
  head /= s;

  double tail = 0.0;
  if (cap > xi1) {
    const auto panels = static_cast<std::size_t>(std::ceil((cap - xi1) / 0.5));
    const QuadRule q = composite_gauss(panels, 8, xi1, cap);
    tail = block_reduce(q.nodes.size(), [&](std::size_t i) {
      return q.weights[i] * both_sides(q.nodes[i]) * std::pow(q.nodes[i], s - 1.0);
    }, 64);
  }
  return riesz_gamma(s) / std::pow(2.0 * kPi, s) * (head + tail);
}

EnergyIdentity fourier_energy_identity(const measures::WeightFunction& w, const SampledFunction& phi, double s,
                                       double xi_max) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("fourier_energy_identity: s must lie in (0,1)");
  EnergyIdentity e;
  e.lhs = fourier_energy(w, phi, s, xi_max);
  e.rhs = measures::weighted_energy(w, phi, s).real();
  return e;
}

}  // namespace frl::frequency
