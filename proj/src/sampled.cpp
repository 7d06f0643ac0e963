#include "frl/sampled.hpp"

#include <cmath>

namespace frl {

UniformGrid UniformGrid::covering(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw DomainError("UniformGrid::covering: bad range or step");
  const auto n = static_cast<std::size_t>(std::llround(std::ceil((hi - lo) / step - 1e-9))) + 1;
  return UniformGrid{lo, step, n};
}

bool UniformGrid::same_as(const UniformGrid& o) const {
  return size == o.size && std::abs(step - o.step) <= 1e-12 * step && std::abs(min - o.min) <= 1e-9 * step;
}

SampledFunction SampledFunction::tabulate(const UniformGrid& g, const std::function<cplx(double)>& f) {
  SampledFunction out{g, std::vector<cplx>(g.size)};
  for (std::size_t i = 0; i < g.size; ++i) out.values[i] = f(g.at(i));
  return out;
}

double SampledFunction::l2_norm_squared() const {
  double s = 0.0;
  for (const cplx& v : values) s += std::norm(v);
  return s * grid.step;
}

}  // namespace frl
