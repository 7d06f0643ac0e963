#pragma once

#include <cstddef>
#include <vector>

#include "frl/numerics.hpp"

namespace frl {

/// Uniform 1-D grid x_i = min + i * step, i in [0, size).
struct UniformGrid {
  double min = 0.0;
  double step = 1.0;
  std::size_t size = 0;

  double at(std::size_t i) const { return min + step * static_cast<double>(i); }
  double max() const { return at(size == 0 ? 0 : size - 1); }

  /// Grid covering [lo, hi] with the given step (endpoints included up to rounding).
  static UniformGrid covering(double lo, double hi, double step);

  bool same_as(const UniformGrid& o) const;
};

/// Complex samples on a uniform grid.
struct SampledFunction {
  UniformGrid grid;
  std::vector<cplx> values;

  static SampledFunction tabulate(const UniformGrid& g, const std::function<cplx(double)>& f);
  double l2_norm_squared() const;  // h * sum |f_i|^2
};

}  // namespace frl
