#include "frl/spherical.hpp"

#include <fftw3.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <mutex>

namespace frl::spherical {

using geometry::GroupElement;

namespace {

constexpr double kPhiTolerance = 1e-8;
constexpr std::size_t kPhiMaxNodes = std::size_t{1} << 22;

std::size_t next_pow2(double v) {
  std::size_t n = 1;
  while (static_cast<double>(n) < v) n <<= 1;
  return n;
}

// Sum of exp((is + 1/2) A(k_theta g)) over theta = pi (j + offset) / n, j < n.
cplx k_sum(double s, const GroupElement& g, std::size_t n, double offset) {
  const cplx expo{0.5, s};
  return block_reduce_complex(n, [&](std::size_t j) {
    const double th = kPi * (static_cast<double>(j) + offset) / static_cast<double>(n);
    const double sn = std::sin(th), cs = std::cos(th);
    const double c = -sn * g.a + cs * g.c;
    const double d = -sn * g.b + cs * g.d;
    return std::exp(expo * (-std::log(c * c + d * d)));
  }, 1024);
}

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

cplx phi_s(double s, const GroupElement& g) {
  const double dist = geometry::dist_to_identity(g).value;
  std::size_t n = next_pow2(std::max(64.0, 16.0 * std::abs(s) * dist));
  cplx sum = k_sum(s, g, n, 0.0);
  cplx prev = sum / static_cast<double>(n);
  while (true) {
    if (2 * n > kPhiMaxNodes) throw ConvergenceError("phi_s: K-quadrature did not converge");
    sum += k_sum(s, g, n, 0.5);
    n *= 2;
    const cplx cur = sum / static_cast<double>(n);
    if (std::abs(cur - prev) <= kPhiTolerance) return cur;
    prev = cur;
  }
}

double phi_s_radial(double s, double x) { return phi_s(s, geometry::a_of(x)).real(); }

double hc_forward(const std::function<double(double)>& f, double support_radius, double s) {
  if (!(support_radius > 0.0)) throw DomainError("hc_forward: support radius must be positive");
  const auto panels = static_cast<std::size_t>(std::ceil(support_radius * (std::abs(s) + 1.0))) + 2;
  const QuadRule q = composite_gauss(panels, 10, 0.0, support_radius);
  double total = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    const double r = q.nodes[i];
    const double fr = f(r);
    if (fr == 0.0) continue;
    total += q.weights[i] * fr * phi_s_radial(-s, r) * std::sinh(r);
  }
  return 2.0 * kPi * total;
}

double mehler_integral(const std::function<double(double)>& q, double x, double freq) {
  x = std::abs(x);
  if (x < 1e-14) return q(0.0);
  const auto panels = static_cast<std::size_t>(std::ceil(std::max(freq, 1.0) * x / 2.0)) + 2;
  const QuadRule rule = composite_gauss(panels, 8, 0.0, 0.5 * kPi);
  double total = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double ph = rule.nodes[i];
    const double sp = std::sin(ph), cp = std::cos(ph);
    const double th = x * sp;
    // cosh x - cosh th = 2 sinh((x+th)/2) sinh((x-th)/2), with x - th = x cos^2 / (1 + sin).
    const double gap = 2.0 * std::sinh(0.5 * (x + th)) * std::sinh(0.5 * x * cp * cp / (1.0 + sp));
    total += rule.weights[i] * q(th) * x * cp / std::sqrt(gap);
  }
  return std::sqrt(2.0) / kPi * total;
}

double hc_inverse(const std::function<double(double)>& H, double truncation, double x) {
  if (!(truncation > 0.0)) throw DomainError("hc_inverse: truncation point must be positive");
  const auto panels = static_cast<std::size_t>(std::ceil(truncation / 0.5));
  const QuadRule rule = composite_gauss(panels, 8, 0.0, truncation);
  std::vector<double> w(rule.nodes.size());
  bool any = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double s = rule.nodes[i];
    w[i] = rule.weights[i] * H(s) * s * std::tanh(kPi * s) / (2.0 * kPi);
    any = any || w[i] != 0.0;
  }
  if (!any) return 0.0;
  auto q = [&](double th) {
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * std::cos(rule.nodes[i] * th);
    return acc;
  };
  return mehler_integral(q, x, truncation);
}

double h_profile(double s, double eps) {
  const double u = 0.5 * eps * s;
  const double sc = std::abs(u) < 1e-8 ? 1.0 - u * u / 6.0 : std::sin(u) / u;
  const double sq = sc * sc;
  return sq * sq;
}

SphericalKernel::SphericalKernel(double lambda, const KernelOptions& opts) : lambda_(lambda), eps_(opts.h_width) {
  if (!(lambda >= 10.0)) throw DomainError("make_kernel: lambda must be >= 10");
  if (!(eps_ > 0.0 && 4.0 * eps_ <= 0.25)) throw DomainError("make_kernel: h_width must lie in (0, 1/16]");
  if (!(opts.x_max > 0.0)) throw DomainError("make_kernel: x_max must be positive");
  if (!(opts.samples_per_wavelength >= 16.0)) throw DomainError("make_kernel: need >= 16 samples per 1/lambda");
  // H <= 4 (2 / (eps (s - lambda)))^8 past lambda; below 1e-12 from here on.
  s_max_ = lambda + (2.0 / eps_) * std::pow(4e12, 0.125);

  // Q on a uniform theta grid: trapezoid in s (even, smooth integrand) via a DCT-I.
  const double ds = 0.1;
  const double span = std::max(s_max_, 64.0 * kPi * lambda);
  const std::size_t n = next_pow2(span / ds);
  if (n > opts.budget) throw ResourceError("make_kernel: spectral grid exceeds budget");
  std::vector<double> data(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    const double s = ds * static_cast<double>(j);
    data[j] = s > s_max_ ? 0.0 : H(s) * s * std::tanh(kPi * s);
  }
  {
    fftw_plan plan;
    {
      std::lock_guard<std::mutex> lock(planner_mutex());
      plan = fftw_plan_r2r_1d(static_cast<int>(n + 1), data.data(), data.data(), FFTW_REDFT00, FFTW_ESTIMATE);
    }
    if (plan == nullptr) throw ResourceError("make_kernel: FFTW plan creation failed");
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  const double dtheta = kPi / (static_cast<double>(n) * ds);
  const auto keep = std::min(n + 1, static_cast<std::size_t>(std::ceil((opts.x_max + 1.0) / dtheta)) + 4);
  std::vector<double> qv(keep);
  for (std::size_t k = 0; k < keep; ++k) qv[k] = data[k] * ds / (4.0 * kPi);
  q_ = UniformTable(0.0, dtheta, std::move(qv));

  const double dx = 1.0 / (opts.samples_per_wavelength * lambda);
  const auto m = static_cast<std::size_t>(std::ceil(opts.x_max / dx)) + 1;
  if (m > opts.budget) throw ResourceError("make_kernel: radial table exceeds budget");
  std::vector<double> kv(m);
  parallel_for(m, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) kv[i] = direct(dx * static_cast<double>(i));
  });
  table_ = UniformTable(0.0, dx, std::move(kv));
}

double SphericalKernel::h0(double s) const { return h_profile(s - lambda_, eps_) + h_profile(-s - lambda_, eps_); }

double SphericalKernel::H(double s) const {
  const double v = h0(s);
  return v * v;
}

double SphericalKernel::operator()(double x) const {
  const double a = std::abs(x);
  return a >= support_radius() || a > table_.x_max() ? 0.0 : table_(a);
}

double SphericalKernel::direct(double x) const {
  return mehler_integral([this](double th) { return q_(th); }, x, lambda_ + 8.0 / eps_);
}

SphericalKernel make_kernel(double lambda, const KernelOptions& opts) { return SphericalKernel(lambda, opts); }

EigenResidual radial_eigen_residual(double s, double r_lo, double r_hi, double h) {
  if (!(r_lo - 2.0 * h > 0.0 && r_hi > r_lo && h > 0.0)) throw DomainError("radial_eigen_residual: bad range");
  const auto n = static_cast<std::size_t>(std::floor((r_hi - r_lo) / h + 1e-9)) + 1;
  std::vector<double> f(n + 4);
  for (std::size_t i = 0; i < n + 4; ++i) f[i] = phi_s_radial(s, r_lo + h * (static_cast<double>(i) - 2.0));
  EigenResidual out;
  const double mu = 0.25 + s * s;
  for (std::size_t i = 2; i < n + 2; ++i) {
    const double r = r_lo + h * (static_cast<double>(i) - 2.0);
    const double d2 = (-f[i + 2] + 16.0 * f[i + 1] - 30.0 * f[i] + 16.0 * f[i - 1] - f[i - 2]) / (12.0 * h * h);
    const double d1 = (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) / (12.0 * h);
    out.max_abs = std::max(out.max_abs, std::abs(d2 + d1 / std::tanh(r) + mu * f[i]));
  }
  out.max_relative = out.max_abs / mu;
  return out;
}

AsymptoticFit asymptotic_check(double s, double x_lo, double x_hi, std::size_t points,
                               const std::function<double(double)>& samples) {
  if (!(s > 0.0)) throw DomainError("asymptotic_check: s must be positive");
  if (!(x_lo > 0.0 && x_hi < 3.0 && x_hi > x_lo)) throw DomainError("asymptotic_check: range must lie in (0,3)");
  if (points < 2) throw DomainError("asymptotic_check: need at least 2 points");
  const std::function<double(double)> phi = samples ? samples : [s](double x) { return phi_s_radial(s, x); };
  const double half = std::min(4.0 * kPi / s, 0.5 * x_lo);
  constexpr int kSamples = 41;
  AsymptoticFit out;
  for (std::size_t p = 0; p < points; ++p) {
    const double x0 = x_lo + (x_hi - x_lo) * static_cast<double>(p) / static_cast<double>(points - 1);
    Eigen::MatrixXd a(kSamples, 6);
    Eigen::VectorXd y(kSamples);
    for (int j = 0; j < kSamples; ++j) {
      const double t = -1.0 + 2.0 * j / (kSamples - 1.0);
      const double x = x0 + half * t;
      const double c = std::cos(s * x), sn = std::sin(s * x);
      for (int k = 0; k < 3; ++k) {
        const double tk = std::pow(t, k);
        a(j, k) = tk * c;
        a(j, 3 + k) = tk * sn;
      }
      y(j) = phi(x);
    }
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    const Eigen::VectorXd coef = qr.solve(y);
    const Eigen::VectorXd diag = qr.matrixR().diagonal().cwiseAbs();
    if (diag.maxCoeff() > 1e8 * diag.minCoeff()) out.flagged = true;
    const double res = (a * coef - y).cwiseAbs().maxCoeff();
    const cplx fp{0.5 * coef(0), -0.5 * coef(3)};
    out.x.push_back(x0);
    out.f_plus.push_back(fp);
    out.f_minus.push_back(std::conj(fp));
    out.sup_scaled = std::max(out.sup_scaled, std::abs(fp) * std::sqrt(s * x0));
    out.residual = std::max(out.residual, res);
    out.residual_bound_ratio = std::max(out.residual_bound_ratio, res / (10.0 / ((s * x0) * (s * x0))));
  }
  return out;
}

}  // namespace frl::spherical
