#include "frl/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace frl::measures {

namespace {

// Antiderivative of |u|^{-s}: sign(u) |u|^{1-s} / (1-s).
double riesz_primitive(double u, double s) {
  const double a = std::pow(std::abs(u), 1.0 - s) / (1.0 - s);
  return u < 0.0 ? -a : a;
}

void check_exponent(double s, const char* where) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError(std::string(where) + ": exponent s must lie in (0,1)");
}

// Index range [lo, hi) of nonzero weight samples.
std::pair<std::size_t, std::size_t> support_range(const std::vector<double>& v) {
  std::size_t lo = 0, hi = v.size();
  while (lo < hi && v[lo] == 0.0) ++lo;
  while (hi > lo && v[hi - 1] == 0.0) --hi;
  return {lo, hi};
}

// c[d] = h^{-1} int B(u - d h) |u|^{-s} du with B the autocorrelation of the grid hat function, so that
// h sum f_i conj(f_j) c[|i-j|] is the s-energy of the piecewise-linear interpolant of f.
std::vector<double> hat_kernel(std::size_t n, double h, double s) {
  std::vector<double> c(n);
  const double p = (1.0 - s) * (2.0 - s) * (3.0 - s) * (4.0 - s);
  const double c2 = s * (s + 1.0) / 6.0;
  const double c4 = s * (s + 1.0) * (s + 2.0) * (s + 3.0) / 80.0;
  const double hs = std::pow(h, 1.0 - s);
  for (std::size_t d = 0; d < n; ++d) {
    const double x = static_cast<double>(d);
    if (d < 16) {
      // Fourth difference of |u|^{4-s} / p.
      static constexpr double w[5] = {1.0, -4.0, 6.0, -4.0, 1.0};
      double acc = 0.0;
      for (int k = -2; k <= 2; ++k) acc += w[k + 2] * std::pow(std::abs(x + k), 4.0 - s);
      c[d] = hs * acc / p;
    } else {
      const double x2 = 1.0 / (x * x);
      c[d] = hs * std::pow(x, -s) * (1.0 + c2 * x2 + c4 * x2 * x2);
    }
  }
  return c;
}

}  // namespace

double FractalMeasure::total_mass() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

void FractalMeasure::validate() const {
  if (atoms.size() != weights.size()) throw DomainError("FractalMeasure: atoms/weights size mismatch");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("FractalMeasure: alpha must lie in (0,1]");
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!(atoms[i] >= 0.0 && atoms[i] <= 1.0)) throw DomainError("FractalMeasure: atom outside [0,1]");
    if (!(weights[i] >= 0.0)) throw DomainError("FractalMeasure: negative weight");
    if (i > 0 && !(atoms[i] > atoms[i - 1])) throw DomainError("FractalMeasure: atoms must be strictly increasing");
  }
}

FractalMeasure make_cantor_measure(double alpha, int depth, std::size_t atom_budget) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("make_cantor_measure: alpha must lie in (0,1]");
  if (depth < 0) throw DomainError("make_cantor_measure: depth must be >= 0");
  if (depth >= 62 || (std::size_t{1} << depth) > atom_budget) {
    throw ResourceError("make_cantor_measure: 2^depth exceeds the atom budget");
  }
  const double ratio = std::pow(2.0, -1.0 / alpha);
  std::vector<double> left{0.0};
  double length = 1.0;
  for (int k = 0; k < depth; ++k) {
    std::vector<double> next;
    next.reserve(left.size() * 2);
    const double child = length * ratio;
    for (double a : left) {
      next.push_back(a);
      next.push_back(a + length - child);
    }
    left = std::move(next);
    length = child;
  }
  FractalMeasure m;
  m.alpha = alpha;
  m.depth = depth;
  m.atoms.reserve(left.size());
  for (double a : left) m.atoms.push_back(a + 0.5 * length);
  m.weights.assign(left.size(), std::ldexp(1.0, -depth));
  m.validate();
  return m;
}

FractalMeasure make_uniform_measure(std::size_t count) {
  if (count == 0) throw DomainError("make_uniform_measure: count must be positive");
  FractalMeasure m;
  m.alpha = 1.0;
  m.depth = 0;
  const double h = 1.0 / static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) {
    m.atoms.push_back((static_cast<double>(i) + 0.5) * h);
    m.weights.push_back(h);
  }
  return m;
}

double frostman_ratio(const FractalMeasure& m, std::span<const double> r_grid) {
  if (r_grid.empty()) throw DomainError("frostman_ratio: empty radius grid");
  if (m.atoms.empty()) throw DomainError("frostman_ratio: empty measure");
  for (double r : r_grid) {
    if (!(r > 0.0 && r <= 1.0)) throw DomainError("frostman_ratio: radii must lie in (0,1]");
  }
  std::vector<double> prefix(m.weights.size() + 1, 0.0);
  std::partial_sum(m.weights.begin(), m.weights.end(), prefix.begin() + 1);
  double best = 0.0;
  for (double x : m.atoms) {
    for (double r : r_grid) {
      // Open ball; the relative shrink keeps atoms at distance exactly r outside despite rounding.
      const double rr = r * (1.0 - 1e-12);
      const auto lo = std::upper_bound(m.atoms.begin(), m.atoms.end(), x - rr) - m.atoms.begin();
      const auto hi = std::lower_bound(m.atoms.begin(), m.atoms.end(), x + rr) - m.atoms.begin();
      best = std::max(best, (prefix[hi] - prefix[lo]) / std::pow(r, m.alpha));
    }
  }
  return best;
}

double energy(const FractalMeasure& m, double s) {
  check_exponent(s, "energy");
  const std::size_t n = m.atoms.size();
  // Row i holds the j > i half; the sum is symmetric.
  const double half = block_reduce(n, [&](std::size_t i) {
    double row = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) row += m.weights[j] * std::pow(m.atoms[j] - m.atoms[i], -s);
    return m.weights[i] * row;
  }, 16);
  return 2.0 * half;
}

void WeightFunction::validate() const {
  if (values.size() != grid.size) throw DomainError("WeightFunction: values/grid size mismatch");
  if (!(frostman_alpha > 0.0 && frostman_alpha <= 1.0)) throw DomainError("WeightFunction: alpha must lie in (0,1]");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0)) throw DomainError("WeightFunction: negative value");
    if (std::abs(grid.at(i)) > 2.0 + 1e-12 && values[i] != 0.0) {
      throw DomainError("WeightFunction: nonzero value outside [-2,2]");
    }
  }
}

double WeightFunction::total_mass() const {
  return grid.step * std::accumulate(values.begin(), values.end(), 0.0);
}

double WeightFunction::integral(double lo, double hi) const {
  if (hi <= lo || values.empty()) return 0.0;
  const double h = grid.step;
  const double edge0 = grid.min - 0.5 * h;
  const auto n = static_cast<std::ptrdiff_t>(values.size());
  const auto first = std::max<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(std::floor((lo - edge0) / h)), 0);
  const auto last = std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(std::floor((hi - edge0) / h)), n - 1);
  double total = 0.0;
  for (std::ptrdiff_t j = first; j <= last; ++j) {
    const double cl = std::max(lo, edge0 + h * static_cast<double>(j));
    const double cr = std::min(hi, edge0 + h * static_cast<double>(j + 1));
    if (cr > cl) total += values[static_cast<std::size_t>(j)] * (cr - cl);
  }
  return total;
}

double WeightFunction::l2w_norm_squared(std::span<const cplx> phi) const {
  if (phi.size() != values.size()) throw DomainError("l2w_norm_squared: grid mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += std::norm(phi[i]) * values[i];
  return s * grid.step;
}

double energy(const WeightFunction& w, double s) {
  std::vector<cplx> one(w.values.size(), cplx{1.0, 0.0});
  return weighted_energy(w, one, s).real();
}

cplx weighted_energy(const WeightFunction& w, std::span<const cplx> phi, double s) {
  check_exponent(s, "weighted_energy");
  if (phi.size() != w.values.size()) throw DomainError("weighted_energy: phi grid does not match w grid");
  const auto [lo, hi] = support_range(w.values);
  if (lo >= hi) return {0.0, 0.0};
  const std::size_t m = hi - lo;
  const double h = w.grid.step;
  const std::vector<double> c = hat_kernel(m, h, s);
  std::vector<cplx> f(m);
  for (std::size_t i = 0; i < m; ++i) f[i] = phi[lo + i] * w.values[lo + i];
  const cplx total = block_reduce_complex(m, [&](std::size_t i) {
    cplx row{0.0, 0.0};
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t d = i > j ? i - j : j - i;
      row += std::conj(f[j]) * c[d];
    }
    return f[i] * row;
  }, 32);
  return total * h;
}

cplx weighted_energy(const WeightFunction& w, const SampledFunction& phi, double s) {
  if (!phi.grid.same_as(w.grid)) throw DomainError("weighted_energy: phi grid does not match w grid");
  return weighted_energy(w, std::span<const cplx>(phi.values), s);
}

double truncated_riesz(const WeightFunction& w, double x, double s, double delta) {
  check_exponent(s, "truncated_riesz");
  if (!(delta > 0.0)) throw DomainError("truncated_riesz: delta must be positive");
  const double h = w.grid.step;
  const double edge0 = w.grid.min - 0.5 * h;
  const double a = x - delta, b = x + delta;
  const auto n = static_cast<std::ptrdiff_t>(w.values.size());
  auto first = static_cast<std::ptrdiff_t>(std::floor((a - edge0) / h));
  auto last = static_cast<std::ptrdiff_t>(std::floor((b - edge0) / h));
  first = std::max<std::ptrdiff_t>(first, 0);
  last = std::min<std::ptrdiff_t>(last, n - 1);
  double total = 0.0;
  for (std::ptrdiff_t j = first; j <= last; ++j) {
    const double v = w.values[static_cast<std::size_t>(j)];
    if (v == 0.0) continue;
    const double cl = std::max(a, edge0 + h * static_cast<double>(j));
    const double cr = std::min(b, edge0 + h * static_cast<double>(j + 1));
    if (cr <= cl) continue;
    total += v * (riesz_primitive(cr - x, s) - riesz_primitive(cl - x, s));
  }
  return total;
}

double rho(double s, double sharpness) { return plateau(s, 1.5, 2.0, sharpness); }

WeightFunction build_weight(const FractalMeasure& nu, double lambda, const frequency::BumpPair& bump,
                            const WeightOptions& opts) {
  if (!(lambda >= 1.0)) throw DomainError("build_weight: lambda must be >= 1");
  if (!(opts.c_ell > 0.0)) throw DomainError("build_weight: C_l must be positive");
  nu.validate();
  const double spw = opts.samples_per_wavelength > 0.0 ? opts.samples_per_wavelength : 8.0 * opts.c_ell;
  if (spw < 8.0) throw DomainError("build_weight: need at least 8 samples per 1/lambda");
  const double h = 1.0 / (lambda * spw);
  const double cells = 4.0 / h;
  if (cells + 1.0 > static_cast<double>(opts.grid_budget)) {
    throw ResourceError("build_weight: grid of " + std::to_string(static_cast<long long>(cells + 1)) +
                        " points exceeds budget");
  }
  const auto half = static_cast<std::size_t>(std::llround(2.0 / h));
  WeightFunction w;
  w.grid = UniformGrid{-static_cast<double>(half) * h, h, 2 * half + 1};
  w.values.assign(w.grid.size, 0.0);
  w.lambda_ref = lambda;
  w.frostman_alpha = nu.alpha;

  const double scale = 4.0 * opts.c_ell;  // eta_L(x) = scale * eta(scale * x)
  const double reach = bump.table_range() / (scale * lambda);
  double mass = nu.total_mass();
  if (mass == 0.0) return w;

  parallel_for(w.grid.size, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const double t = w.grid.at(i);
      const double r = rho(t, opts.rho_sharpness);
      if (r == 0.0) continue;
      // Atoms farther than `reach` contribute sqrt(0 + 1) = 1 each.
      const auto first = std::lower_bound(nu.atoms.begin(), nu.atoms.end(), t - reach) - nu.atoms.begin();
      const auto last = std::upper_bound(nu.atoms.begin(), nu.atoms.end(), t + reach) - nu.atoms.begin();
      double near_mass = 0.0, acc = 0.0;
      for (auto k = first; k < last; ++k) {
        const double e = lambda * scale * bump.spatial(scale * lambda * (nu.atoms[k] - t));
        acc += nu.weights[k] * std::sqrt(e * e + 1.0);
        near_mass += nu.weights[k];
      }
      w.values[i] = r * (acc + (mass - near_mass));
    }
  });
  for (std::size_t i = 0; i < w.grid.size; ++i) {
    if (std::abs(w.grid.at(i)) > 2.0) w.values[i] = 0.0;
  }
  return w;
}

std::vector<double> interval_ratio_sweep(const WeightFunction& w, double alpha, std::span<const double> r_grid) {
  const double h = w.grid.step;
  const double edge0 = w.grid.min - 0.5 * h;
  std::vector<double> prefix(w.values.size() + 1, 0.0);
  for (std::size_t i = 0; i < w.values.size(); ++i) prefix[i + 1] = prefix[i] + w.values[i] * h;
  // Cumulative integral from the left edge of cell 0 to x.
  auto cumulative = [&](double x) {
    const double u = (x - edge0) / h;
    if (u <= 0.0) return 0.0;
    if (u >= static_cast<double>(w.values.size())) return prefix.back();
    const auto j = static_cast<std::size_t>(u);
    return prefix[j] + w.values[j] * (u - static_cast<double>(j)) * h;
  };
  std::vector<double> out;
  out.reserve(r_grid.size());
  for (double r : r_grid) {
    if (!(r > 0.0)) throw DomainError("interval_ratio_sweep: radii must be positive");
    double best = 0.0;
    for (std::size_t i = 0; i < w.grid.size; ++i) {
      const double a = w.grid.at(i);
      best = std::max(best, cumulative(a + r) - cumulative(a - r));
    }
    out.push_back(best / std::pow(r, alpha));
  }
  return out;
}

}  // namespace frl::measures
