#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace frl {

using cplx = std::complex<double>;

/// Precondition violated (bad parameter, out-of-range argument, grid mismatch).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured budget (atoms, grid points, coefficient box) would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative or refining computation failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kPi = 3.14159265358979323846;

/// Gauss-Legendre nodes and weights on [a, b].
struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadRule gauss_legendre(std::size_t n, double a, double b);

/// Composite Gauss-Legendre: `panels` equal panels of `order` nodes each.
QuadRule composite_gauss(std::size_t panels, std::size_t order, double a, double b);

/// C-infinity step on [0,1] glued from exp(-sharpness/t): 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t, double sharpness = 1.0);

/// Plateau cutoff: 1 on |x| <= inner, 0 on |x| >= outer, smooth in between.
double plateau(double x, double inner, double outer, double sharpness = 1.0);

/// Uniformly tabulated real function with cubic (Catmull-Rom) interpolation.
class UniformTable {
 public:
  UniformTable() = default;
  UniformTable(double x0, double step, std::vector<double> values);

  double operator()(double x) const;
  double x0() const { return x0_; }
  double step() const { return step_; }
  double x_max() const { return x0_ + step_ * static_cast<double>(values_.size() - 1); }
  const std::vector<double>& values() const { return values_; }
  bool empty() const { return values_.empty(); }

 private:
  double x0_ = 0.0;
  double step_ = 1.0;
  std::vector<double> values_;
};

/// Least-squares line y = intercept + slope x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS residual
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Runs body(begin, end) over [0, n) split into contiguous blocks, one per worker.
/// Blocks are assigned by index, so callers that store per-block partials and
/// reduce them in ascending order get thread-count-independent results only
/// when the block count is fixed; see `block_reduce`.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

/// Sum of f(i) over [0, n), accumulated in fixed blocks of `block` indices and
/// reduced in ascending block order. Bit-identical for any thread count.
double block_reduce(std::size_t n, const std::function<double(std::size_t)>& f, std::size_t block = 256);
cplx block_reduce_complex(std::size_t n, const std::function<cplx(std::size_t)>& f, std::size_t block = 256);

/// Worker count used by parallel helpers (default: 1; set from --threads).
void set_thread_count(unsigned n);
unsigned thread_count();

}  // namespace frl
