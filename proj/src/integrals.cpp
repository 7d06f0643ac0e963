#include "frl/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace frl::integrals {

using geometry::GroupElement;

double TestWindow::b(double x) const { return plateau(x, half_width - half_width / 6.0, half_width, sharpness); }

double TestWindow::b1(double x) const { return plateau(x, 6.0, 7.0, sharpness); }

double radial_argument(double x1, const GroupElement& g, double x2) {
  const geometry::Point z = geometry::act(g * geometry::a_of(x2), geometry::Point{0.0, 1.0});
  return geometry::dist_hyp(geometry::Point{0.0, std::exp(x1)}, z);
}

IntegralReport eval_I(const spherical::SphericalKernel& k, const TestWindow& w, const SampledFunction& phi,
                      const GroupElement& g) {
  const double lambda = k.lambda();
  const double h = phi.grid.step;
  if (phi.values.size() != phi.grid.size) throw DomainError("eval_I: inconsistent sampled function");
  if (h > 1.0 / (8.0 * lambda) * (1.0 + 1e-12)) throw DomainError("eval_I: phi needs >= 8 samples per 1/lambda");
  IntegralReport rep;
  rep.lambda = lambda;
  rep.step = h;

  // Contiguous index range where b * phi can be nonzero.
  std::size_t lo = phi.grid.size, hi = 0;
  for (std::size_t i = 0; i < phi.grid.size; ++i) {
    if (phi.values[i] != cplx{0.0, 0.0} && w.b(phi.grid.at(i)) != 0.0) {
      lo = std::min(lo, i);
      hi = i + 1;
    }
  }
  if (lo >= hi) return rep;
  const std::size_t n = hi - lo;
  std::vector<cplx> f(n);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = phi.grid.at(lo + i);
    f[i] = w.b(x[i]) * phi.values[lo + i];
  }
  const double reach = std::min(k.support_radius(), k.table().x_max());
  constexpr std::size_t kBlock = 16;
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<cplx> row_full(n), row_even(n);
  std::vector<std::size_t> evals(n, 0);
  parallel_for(n, [&](std::size_t r0, std::size_t r1) {
    for (std::size_t i = r0; i < r1; ++i) {
      cplx full{0.0, 0.0}, even{0.0, 0.0};
      std::size_t count = 0;
      for (std::size_t bk = 0; bk < blocks; ++bk) {
        const std::size_t j0 = bk * kBlock, j1 = std::min(n, j0 + kBlock);
        const double xc = 0.5 * (x[j0] + x[j1 - 1]);
        const double half = 0.5 * (x[j1 - 1] - x[j0]);
        // Unit-speed dependence on x2 bounds the distance over the block.
        if (radial_argument(x[i], g, xc) - half > reach) continue;
        for (std::size_t j = j0; j < j1; ++j) {
          const double r = radial_argument(x[i], g, x[j]);
          if (r > reach) continue;
          const cplx term = f[j] * k(r);
          ++count;
          full += term;
          if ((lo + j) % 2 == 0) even += term;
        }
      }
      row_full[i] = full;
      row_even[i] = even;
      evals[i] = count;
    }
  });
  cplx full{0.0, 0.0}, coarse{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    full += std::conj(f[i]) * row_full[i];
    if ((lo + i) % 2 == 0) coarse += std::conj(f[i]) * row_even[i];
    rep.kernel_evaluations += evals[i];
  }
  rep.value = full * h * h;
  rep.coarse_value = coarse * 4.0 * h * h;
  rep.error = std::abs(rep.value - rep.coarse_value);
  rep.converged = rep.error == 0.0 || rep.error <= 0.01 * std::abs(rep.value);
  return rep;
}

AmplifiedReport amplified_rhs(const hecke::QuatAlgebra& alg, const hecke::Amplifier& amp,
                              const spherical::SphericalKernel& k, const TestWindow& w, const SampledFunction& phi,
                              const GroupElement& g0) {
  AmplifiedReport rep;
  if (amp.alpha.empty()) return rep;
  // d(i, h i) <= 2W + support is necessary for a nonzero I(lambda, phi, h).
  const double reach = 2.0 * w.half_width + k.support_radius();
  const double frob_max = 2.0 * std::cosh(reach);
  const double op = g0.operator_norm();
  const GroupElement gi = g0.inverse();
  std::map<long long, double> sums;  // norm -> sum over gamma of |I|
  auto gamma_sum = [&](long long norm) {
    if (auto it = sums.find(norm); it != sums.end()) return it->second;
    const double bound = std::sqrt(static_cast<double>(norm) * frob_max) * op * op;
    const auto elems = hecke::enumerate_with_bound(alg, norm, bound, [&](const GroupElement& h) {
      return (gi * h * g0).frobenius_squared() <= frob_max;
    });
    double total = 0.0;
    for (const auto& e : elems) {
      const IntegralReport r = eval_I(k, w, phi, gi * hecke::iota(alg, e) * g0);
      rep.converged = rep.converged && r.converged;
      total += std::abs(r.value);
      ++rep.gamma_terms;
    }
    sums[norm] = total;
    return total;
  };
  for (const auto& [m, am] : amp.alpha) {
    for (const auto& [n, an] : amp.alpha) {
      const long long gcd = std::gcd(m, n);
      for (long long d = 1; d <= gcd; ++d) {
        if (gcd % d != 0) continue;
        const long long norm = (m / d) * (n / d);
        rep.value += std::abs(am * an) * static_cast<double>(d) / std::sqrt(static_cast<double>(m) * n) * gamma_sum(norm);
      }
    }
  }
  const double at_e = std::abs(eval_I(k, w, phi, GroupElement::identity()).value);
  for (const auto& [m, am] : amp.alpha) rep.identity_term += am * am * at_e;
  return rep;
}

cplx standard_phi(double lambda, double x) { return std::polar(std::exp(-x * x), lambda * x); }

SampledFunction weighted_phi(const measures::WeightFunction& w, const std::function<cplx(double)>& phi) {
  SampledFunction out{w.grid, std::vector<cplx>(w.grid.size)};
  for (std::size_t i = 0; i < w.grid.size; ++i) {
    if (w.values[i] != 0.0) out.values[i] = phi(w.grid.at(i)) * w.values[i];
  }
  return out;
}

namespace {
double phi_norm_squared(const measures::WeightFunction& w, const std::function<cplx(double)>& phi) {
  std::vector<cplx> s(w.grid.size);
  for (std::size_t i = 0; i < w.grid.size; ++i) s[i] = phi(w.grid.at(i));
  return w.l2w_norm_squared(s);
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}
}  // namespace

BetaScaling beta_scaling_experiment(const spherical::SphericalKernel& k, const TestWindow& win,
                                    const measures::WeightFunction& w, const frequency::BumpPair& bump, double alpha,
                                    const std::vector<double>& betas, const std::function<cplx(double)>& phi) {
  if (!(alpha > 0.5 && alpha <= 1.0)) throw DomainError("beta_scaling: alpha must lie in (1/2, 1]");
  if (betas.empty()) throw DomainError("beta_scaling: empty beta list");
  const double lambda = k.lambda();
  BetaScaling out;
  out.phi_norm_squared = phi_norm_squared(w, phi);
  const SampledFunction f = weighted_phi(w, phi);
  std::vector<double> lx, ly;
  for (double beta : betas) {
    const SampledFunction perp = frequency::band_project(bump, lambda, beta, f, frequency::BandMode::complement);
    const IntegralReport r = eval_I(k, win, perp, GroupElement::identity());
    BetaRow row;
    row.beta = beta;
    row.value = std::abs(r.value);
    row.error = r.error;
    row.converged = r.converged;
    const double scale = std::sqrt(lambda) * std::pow(beta, -(alpha - 0.5)) * out.phi_norm_squared;
    row.normalized = scale > 0.0 ? row.value / scale : 0.0;
    out.rows.push_back(row);
    if (row.value > 0.0) {
      lx.push_back(std::log(beta));
      ly.push_back(std::log(row.value));
    }
  }
  if (lx.size() >= 2) out.slope = fit_line(lx, ly).slope;
  return out;
}

RapidDecay rapid_decay_experiment(const spherical::SphericalKernel& k, const TestWindow& win,
                                  const measures::WeightFunction& w, const frequency::BumpPair& bump, double beta,
                                  double epsilon0, const std::vector<double>& multipliers,
                                  const std::function<cplx(double)>& phi) {
  if (!(epsilon0 > 0.0 && epsilon0 < 0.5)) throw DomainError("rapid_decay: epsilon0 must lie in (0, 1/2)");
  const double lambda = k.lambda();
  RapidDecay out;
  out.threshold = std::pow(lambda, -0.5 + epsilon0) * std::sqrt(beta);
  std::vector<double> mult = multipliers;
  mult.push_back(0.0);
  std::sort(mult.begin(), mult.end());
  mult.erase(std::unique(mult.begin(), mult.end()), mult.end());
  if (mult.front() < 0.0) throw DomainError("rapid_decay: multipliers must be nonnegative");
  const SampledFunction pass =
      frequency::band_project(bump, lambda, beta, weighted_phi(w, phi), frequency::BandMode::pass);
  std::vector<double> near, far;
  for (double m : mult) {
    DecayRow row;
    row.t = m * out.threshold;
    const GroupElement g{1.0, 0.0, row.t, 1.0};
    row.dist_to_A = geometry::dist_to_diag(g).value;
    const IntegralReport r = eval_I(k, win, pass, g);
    row.value = std::abs(r.value);
    row.error = r.error;
    row.converged = r.converged;
    (row.t <= out.threshold ? near : far).push_back(row.value);
    out.rows.push_back(row);
  }
  const double base = out.rows.front().value;
  out.contrast = base > 0.0 ? out.rows.back().value / base : 0.0;
  out.near_median = median(near);
  out.far_median = median(far);
  return out;
}

GroupElement exp_algebra(double x1, double x2, double x3) {
  const double mu2 = x1 * x1 + x2 * x3;
  double c = 1.0, s = 1.0;
  if (mu2 > 0.0) {
    const double mu = std::sqrt(mu2);
    c = std::cosh(mu);
    s = std::sinh(mu) / mu;
  } else if (mu2 < 0.0) {
    const double nu = std::sqrt(-mu2);
    c = std::cos(nu);
    s = std::sin(nu) / nu;
  }
  return GroupElement{c + s * x1, s * x2, s * x3, c - s * x1}.renormalized();
}

std::vector<GroupElement> unit_ball_grid(std::size_t count, double radius) {
  std::vector<GroupElement> out;
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < count; ++i) {
    const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(count);
    const double rxy = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double th = golden * static_cast<double>(i);
    const double r = radius * static_cast<double>(i + 1) / static_cast<double>(count);
    // Unit vector for the norm sqrt(4 x1^2 + 2 x2^2 + 2 x3^2).
    out.push_back(exp_algebra(0.5 * r * z, r * rxy * std::cos(th) / std::sqrt(2.0), r * rxy * std::sin(th) / std::sqrt(2.0)));
  }
  return out;
}

double uniform_bound_experiment(const spherical::SphericalKernel& k, const TestWindow& win,
                                const measures::WeightFunction& w, const frequency::BumpPair& bump, double beta,
                                const std::function<cplx(double)>& phi) {
  const double lambda = k.lambda();
  const double norm = phi_norm_squared(w, phi);
  if (!(norm > 0.0)) throw DomainError("uniform_bound: phi vanishes in L^2(w)");
  const SampledFunction pass =
      frequency::band_project(bump, lambda, beta, weighted_phi(w, phi), frequency::BandMode::pass);
  double best = 0.0;
  for (const GroupElement& g : unit_ball_grid(20, 1.0)) {
    best = std::max(best, std::abs(eval_I(k, win, pass, g).value));
  }
  return best / (std::sqrt(lambda) * norm);
}

}  // namespace frl::integrals
