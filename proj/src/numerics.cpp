#include "frl/numerics.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

namespace frl {

namespace {

struct ReferenceRule {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

const ReferenceRule& reference_rule(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, ReferenceRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(n);
  if (table == nullptr) throw ResourceError("gauss_legendre: cannot allocate table");
  ReferenceRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    gsl_integration_glfixed_point(-1.0, 1.0, i, &rule.x[i], &rule.w[i], table);
  }
  gsl_integration_glfixed_table_free(table);
  return cache.emplace(n, std::move(rule)).first->second;
}

std::atomic<unsigned> g_threads{1};

}  // namespace

QuadRule gauss_legendre(std::size_t n, double a, double b) {
  if (n == 0) throw DomainError("gauss_legendre: n must be positive");
  const ReferenceRule& ref = reference_rule(n);
  QuadRule out;
  out.nodes.resize(n);
  out.weights.resize(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  for (std::size_t i = 0; i < n; ++i) {
    out.nodes[i] = mid + half * ref.x[i];
    out.weights[i] = half * ref.w[i];
  }
  return out;
}

QuadRule composite_gauss(std::size_t panels, std::size_t order, double a, double b) {
  if (panels == 0) throw DomainError("composite_gauss: panels must be positive");
  QuadRule out;
  out.nodes.reserve(panels * order);
  out.weights.reserve(panels * order);
  const double width = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + width * static_cast<double>(p);
    QuadRule r = gauss_legendre(order, lo, lo + width);
    out.nodes.insert(out.nodes.end(), r.nodes.begin(), r.nodes.end());
    out.weights.insert(out.weights.end(), r.weights.begin(), r.weights.end());
  }
  return out;
}

double smooth_step(double t, double sharpness) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double f0 = std::exp(-sharpness / t);
  const double f1 = std::exp(-sharpness / (1.0 - t));
  return f0 / (f0 + f1);
}

double plateau(double x, double inner, double outer, double sharpness) {
  const double r = std::abs(x);
  if (r <= inner) return 1.0;
  if (r >= outer) return 0.0;
  return smooth_step((outer - r) / (outer - inner), sharpness);
}

UniformTable::UniformTable(double x0, double step, std::vector<double> values)
    : x0_(x0), step_(step), values_(std::move(values)) {
  if (!(step_ > 0.0)) throw DomainError("UniformTable: step must be positive");
  if (values_.size() < 4) throw DomainError("UniformTable: need at least 4 samples");
}

double UniformTable::operator()(double x) const {
  const double u = (x - x0_) / step_;
  const auto n = static_cast<std::ptrdiff_t>(values_.size());
  if (u < 0.0 || u > static_cast<double>(n - 1)) return 0.0;
  auto i = static_cast<std::ptrdiff_t>(std::floor(u));
  if (i >= n - 1) i = n - 2;
  const double t = u - static_cast<double>(i);
  auto at = [&](std::ptrdiff_t k) {
    // Linear extrapolation past the ends keeps the stencil defined.
    if (k < 0) return 2.0 * values_[0] - values_[1];
    if (k >= n) return 2.0 * values_[n - 1] - values_[n - 2];
    return values_[k];
  };
  const double p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
  return p1 + 0.5 * t * (p2 - p0 + t * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 + t * (3.0 * (p1 - p2) + p3 - p0)));
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("fit_line: size mismatch");
  if (x.size() < 2) throw DomainError("fit_line: need at least 2 points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 1e-300) throw DomainError("fit_line: degenerate abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

void set_thread_count(unsigned n) { g_threads = std::max(1u, n); }
unsigned thread_count() { return g_threads; }

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(thread_count(), std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

namespace {

template <typename T>
T block_reduce_impl(std::size_t n, const std::function<T(std::size_t)>& f, std::size_t block) {
  if (block == 0) block = 1;
  const std::size_t blocks = (n + block - 1) / block;
  std::vector<T> partial(blocks, T{});
  parallel_for(blocks, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t b = lo; b < hi; ++b) {
      T acc{};
      const std::size_t end = std::min(n, (b + 1) * block);
      for (std::size_t i = b * block; i < end; ++i) acc += f(i);
      partial[b] = acc;
    }
  });
  T total{};
  for (const T& p : partial) total += p;
  return total;
}

}  // namespace

double block_reduce(std::size_t n, const std::function<double(std::size_t)>& f, std::size_t block) {
  return block_reduce_impl<double>(n, f, block);
}

cplx block_reduce_complex(std::size_t n, const std::function<cplx(std::size_t)>& f, std::size_t block) {
  return block_reduce_impl<cplx>(n, f, block);
}

}  // namespace frl
