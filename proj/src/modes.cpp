#include "frl/modes.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>

namespace frl::modes {

namespace {

constexpr double kRescale = 1e200;

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 normalize(const Vec3& v) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (!(n > 0.0)) throw DomainError("zero vector");
  return {v[0] / n, v[1] / n, v[2] / n};
}

double polar_angle(const Vec3& p) { return std::acos(std::clamp(p[2], -1.0, 1.0)); }

// Fourth-order central differences of f at 0 with step h: (first, second) derivatives.
template <class F>
std::pair<cplx, cplx> derivatives(const F& f, double h) {
  const cplx fm2 = f(-2.0 * h), fm1 = f(-h), f0 = f(0.0), fp1 = f(h), fp2 = f(2.0 * h);
  const cplx d1 = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h);
  const cplx d2 = (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h);
  return {d1, d2};
}

// Mass of f over the band |latitude about `axis`| <= delta.
double band_mass(const std::function<double(const Vec3&)>& f, const Vec3& axis, double delta, std::size_t n_psi) {
  const Vec3 n = normalize(axis);
  const Vec3 helper = std::abs(n[2]) < 0.9 ? Vec3{0.0, 0.0, 1.0} : Vec3{1.0, 0.0, 0.0};
  const Vec3 e1 = normalize(cross(helper, n));
  const Vec3 e2 = cross(n, e1);
  const QuadRule q = gauss_legendre(16, -delta, delta);
  double total = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    const double u = q.nodes[i];
    const double cu = std::cos(u), su = std::sin(u);
    double ring = 0.0;
    for (std::size_t j = 0; j < n_psi; ++j) {
      const double psi = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n_psi);
      const double c = std::cos(psi), s = std::sin(psi);
      const Vec3 p{cu * (c * e1[0] + s * e2[0]) + su * n[0], cu * (c * e1[1] + s * e2[1]) + su * n[1],
                   cu * (c * e1[2] + s * e2[2]) + su * n[2]};
      ring += f(p);
    }
    total += q.weights[i] * cu * ring * 2.0 * kPi / static_cast<double>(n_psi);
  }
  return total;
}

std::size_t psi_nodes(const Mode& m) {
  if (m.spec().surface == Surface::sphere) return static_cast<std::size_t>(2 * m.spec().degree + 16);
  return 64;
}

}  // namespace

Mode::Mode(const ModeSpec& spec) : spec_(spec) {
  if (spec_.surface == Surface::sphere) {
    if (spec_.degree < 0 || spec_.degree > kMaxDegree) {
      throw DomainError("make_mode: degree must lie in [0, " + std::to_string(kMaxDegree) + "]");
    }
    switch (spec_.kind) {
      case ModeKind::zonal: spec_.order = 0; break;
      case ModeKind::highest_weight: spec_.order = spec_.degree; break;
      case ModeKind::harmonic:
        if (spec_.order < 0 || spec_.order > spec_.degree) throw DomainError("make_mode: need 0 <= m <= l");
        break;
      case ModeKind::plane_wave_sum: throw DomainError("make_mode: plane-wave sums live on the torus");
    }
    const double l = spec_.degree;
    lambda_ = std::sqrt(l * (l + 1.0));
  } else {
    if (spec_.kind != ModeKind::plane_wave_sum) throw DomainError("make_mode: torus modes are plane-wave sums");
    if (spec_.frequencies.empty()) throw DomainError("make_mode: empty frequency list");
    const auto& k0 = spec_.frequencies.front();
    const long long n0 = static_cast<long long>(k0[0]) * k0[0] + static_cast<long long>(k0[1]) * k0[1];
    for (const auto& k : spec_.frequencies) {
      if (static_cast<long long>(k[0]) * k[0] + static_cast<long long>(k[1]) * k[1] != n0) {
        throw DomainError("make_mode: torus frequencies must share one length");
      }
    }
    auto sorted = spec_.frequencies;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw DomainError("make_mode: repeated torus frequency");
    }
    lambda_ = std::sqrt(static_cast<double>(n0));
  }
}

double Mode::legendre_normalized(double theta) const {
  const int l = spec_.degree, m = spec_.order;
  const double x = std::cos(theta), st = std::abs(std::sin(theta));
  double log_pmm = 0.5 * std::log((2.0 * m + 1.0) / (4.0 * kPi));
  for (int k = 1; k <= m; ++k) log_pmm += 0.5 * std::log((2.0 * k - 1.0) / (2.0 * k));
  if (m > 0) {
    if (st == 0.0) return 0.0;
    log_pmm += m * std::log(st);
  }
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  if (l == m) return sign * std::exp(log_pmm);
  double prev = 1.0;
  double cur = x * std::sqrt(2.0 * m + 3.0);
  double log_scale = log_pmm;
  for (int ll = m + 2; ll <= l; ++ll) {
    const double l2 = static_cast<double>(ll) * ll, m2 = static_cast<double>(m) * m;
    const double a = std::sqrt((4.0 * l2 - 1.0) / (l2 - m2));
    const double lm1 = ll - 1.0;
    const double b = std::sqrt((lm1 * lm1 - m2) / (4.0 * lm1 * lm1 - 1.0));
    const double next = a * (x * cur - b * prev);
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescale) {
      cur /= kRescale;
      prev /= kRescale;
      log_scale += std::log(kRescale);
    }
  }
  if (!std::isfinite(cur)) throw ConvergenceError("make_mode: Legendre recurrence overflowed");
  if (cur == 0.0) return 0.0;
  return sign * (cur < 0.0 ? -1.0 : 1.0) * std::exp(std::log(std::abs(cur)) + log_scale);
}

cplx Mode::operator()(double u, double v) const {
  if (spec_.surface == Surface::sphere) return legendre_normalized(u) * std::polar(1.0, spec_.order * v);
  cplx acc{0.0, 0.0};
  for (const auto& k : spec_.frequencies) acc += std::polar(1.0, k[0] * u + k[1] * v);
  return acc / (2.0 * kPi * std::sqrt(static_cast<double>(spec_.frequencies.size())));
}

cplx Mode::at(const Vec3& p) const {
  if (spec_.surface != Surface::sphere) throw DomainError("Mode::at: sphere only");
  return (*this)(polar_angle(p), std::atan2(p[1], p[0]));
}

double Mode::modulus_squared_polar(double theta) const {
  if (!axially_symmetric()) throw DomainError("modulus_squared_polar: mode is not axially symmetric");
  const double v = legendre_normalized(theta);
  return v * v;
}

double Mode::sup_bound() const {
  if (spec_.surface == Surface::sphere) return std::sqrt((2.0 * spec_.degree + 1.0) / (4.0 * kPi));
  return std::sqrt(static_cast<double>(spec_.frequencies.size())) / (2.0 * kPi);
}

Mode make_mode(const ModeSpec& spec) { return Mode(spec); }

double l2_norm_squared(const Mode& m) {
  if (m.spec().surface == Surface::sphere) {
    const QuadRule q = gauss_legendre(static_cast<std::size_t>(m.spec().degree) + 2, -1.0, 1.0);
    double s = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * m.modulus_squared_polar(std::acos(q.nodes[i]));
    return 2.0 * kPi * s;
  }
  int kmax = 0;
  for (const auto& k : m.spec().frequencies) kmax = std::max({kmax, std::abs(k[0]), std::abs(k[1])});
  const int n = 2 * kmax + 2;
  const double h = 2.0 * kPi / n;
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) s += std::norm(m(h * i, h * j));
  }
  return s * h * h;
}

double eigen_residual(const Mode& m, std::size_t points, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double lam2 = m.lambda() * m.lambda();
  const double h = 0.05 / std::max(1.0, m.lambda());
  double worst = 0.0;
  for (std::size_t p = 0; p < points; ++p) {
    cplx res;
    if (m.spec().surface == Surface::sphere) {
      const double th = std::uniform_real_distribution<double>(0.3, kPi - 0.3)(rng);
      const double ph = std::uniform_real_distribution<double>(0.0, 2.0 * kPi)(rng);
      const auto [dt1, dt2] = derivatives([&](double d) { return m(th + d, ph); }, h);
      const auto [dp1, dp2] = derivatives([&](double d) { return m(th, ph + d); }, h);
      (void)dp1;
      const double st = std::sin(th);
      res = dt2 + std::cos(th) / st * dt1 + dp2 / (st * st) + lam2 * m(th, ph);
    } else {
      const double x = std::uniform_real_distribution<double>(0.0, 2.0 * kPi)(rng);
      const double y = std::uniform_real_distribution<double>(0.0, 2.0 * kPi)(rng);
      const auto [dx1, dx2] = derivatives([&](double d) { return m(x + d, y); }, h);
      const auto [dy1, dy2] = derivatives([&](double d) { return m(x, y + d); }, h);
      (void)dx1;
      (void)dy1;
      res = dx2 + dy2 + lam2 * m(x, y);
    }
    worst = std::max(worst, std::abs(res));
  }
  return worst / (std::max(lam2, 1.0) * m.sup_bound());
}

Vec3 SurfaceGeodesic::point(double s) const {
  if (surface == Surface::sphere) {
    const double c = std::cos(s), sn = std::sin(s);
    return {c * origin[0] + sn * tangent[0], c * origin[1] + sn * tangent[1], c * origin[2] + sn * tangent[2]};
  }
  return {origin[0] + s * tangent[0], origin[1] + s * tangent[1], 0.0};
}

cplx SurfaceGeodesic::eval(const Mode& m, double s) const {
  if (m.spec().surface != surface) throw DomainError("geodesic and mode live on different surfaces");
  const Vec3 p = point(s);
  return surface == Surface::sphere ? m.at(p) : m(p[0], p[1]);
}

SurfaceGeodesic equator(double phi0) {
  return {Surface::sphere, {std::cos(phi0), std::sin(phi0), 0.0}, {-std::sin(phi0), std::cos(phi0), 0.0}};
}

SurfaceGeodesic meridian(double phi0) {
  return {Surface::sphere, {std::cos(phi0), std::sin(phi0), 0.0}, {0.0, 0.0, 1.0}};
}

SurfaceGeodesic torus_line(double x0, double y0, double angle) {
  return {Surface::torus, {x0, y0, 0.0}, {std::cos(angle), std::sin(angle), 0.0}};
}

double restriction_norm(const Mode& m, const SurfaceGeodesic& ell, const measures::FractalMeasure& nu) {
  double s = 0.0;
  for (std::size_t i = 0; i < nu.atoms.size(); ++i) s += nu.weights[i] * std::norm(ell.eval(m, nu.atoms[i]));
  return std::sqrt(s);
}

double geodesic_l2(const Mode& m, const SurfaceGeodesic& ell, double length) {
  if (!(length > 0.0)) throw DomainError("geodesic_l2: length must be positive");
  const auto panels = static_cast<std::size_t>(std::ceil(length * (m.lambda() + 1.0) / 2.0)) + 2;
  const QuadRule q = composite_gauss(panels, 10, 0.0, length);
  double s = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * std::norm(ell.eval(m, q.nodes[i]));
  return std::sqrt(s);
}

double sphere_tube_mass(const Mode& m, const Vec3& axis, double half_width) {
  if (m.spec().surface != Surface::sphere) throw DomainError("sphere_tube_mass: sphere modes only");
  if (!(half_width > 0.0 && half_width < kPi / 2)) throw DomainError("sphere_tube_mass: bad half width");
  return band_mass([&](const Vec3& p) { return std::norm(m.at(p)); }, axis, half_width, psi_nodes(m));
}

double torus_tube_mass(const Mode& m, double x0, double y0, double angle, double half_width) {
  if (m.spec().surface != Surface::torus) throw DomainError("torus_tube_mass: torus modes only");
  if (!(half_width > 0.0)) throw DomainError("torus_tube_mass: bad half width");
  const double c = std::cos(angle), s = std::sin(angle);
  const QuadRule qu = gauss_legendre(16, -half_width, half_width);
  const auto panels = static_cast<std::size_t>(std::ceil((m.lambda() + 1.0) / 2.0)) + 1;
  const QuadRule qs = composite_gauss(panels, 8, 0.0, 1.0);
  double total = 0.0;
  for (std::size_t i = 0; i < qs.nodes.size(); ++i) {
    for (std::size_t j = 0; j < qu.nodes.size(); ++j) {
      const double x = x0 + qs.nodes[i] * c - qu.nodes[j] * s;
      const double y = y0 + qs.nodes[i] * s + qu.nodes[j] * c;
      total += qs.weights[i] * qu.weights[j] * std::norm(m(x, y));
    }
  }
  return total;
}

KNReport kn_norm(const Mode& m, const KNOptions& opts) {
  if (!(opts.width_factor > 0.0 && opts.spacing_factor > 0.0 && opts.spacing_factor <= 0.25)) {
    throw DomainError("kn_norm: need width factor > 0 and spacing factor in (0, 1/4]");
  }
  KNReport rep;
  rep.lambda = m.lambda();
  const double lam = std::max(m.lambda(), 1.0);
  rep.half_width = opts.width_factor / std::sqrt(lam);
  const double spacing = opts.spacing_factor / std::sqrt(lam);
  rep.resolution = spacing;

  if (m.spec().surface == Surface::sphere) {
    if (!(rep.half_width < kPi / 2)) throw DomainError("kn_norm: tube wider than a hemisphere");
    // |e|^2 depends on the polar angle only: tabulate it and search over the axis tilt.
    const std::size_t n_tab = 128 * static_cast<std::size_t>(m.spec().degree + 1) + 1;
    const double dt = kPi / static_cast<double>(n_tab - 1);
    std::vector<double> tab(n_tab);
    parallel_for(n_tab, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) tab[i] = m.modulus_squared_polar(dt * static_cast<double>(i));
    });
    const UniformTable density(0.0, dt, std::move(tab));
    const std::size_t n_psi = psi_nodes(m);
    auto mass = [&](double tilt) {
      const Vec3 axis{std::sin(tilt), 0.0, std::cos(tilt)};
      return band_mass([&](const Vec3& p) { return density(polar_angle(p)); }, axis, rep.half_width, n_psi);
    };
    const auto count = static_cast<std::size_t>(std::ceil((kPi / 2) / spacing)) + 1;
    if (static_cast<double>(count) * 16.0 * static_cast<double>(n_psi) > static_cast<double>(opts.budget)) {
      throw ResourceError("kn_norm: tube search exceeds the evaluation budget");
    }
    std::vector<double> values(count);
    const double step = (kPi / 2) / static_cast<double>(count - 1);
    parallel_for(count, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) values[i] = mass(step * static_cast<double>(i));
    });
    const auto best = static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
    const double a = step * static_cast<double>(best == 0 ? 0 : best - 1);
    const double b = step * static_cast<double>(std::min(count - 1, best + 1));
    const auto [tilt, neg] = boost::math::tools::brent_find_minima([&](double t) { return -mass(t); }, a, b, 30);
    double tilt_best = step * static_cast<double>(best);
    rep.s_kn = values[best];
    if (-neg > rep.s_kn) {
      rep.s_kn = -neg;
      tilt_best = tilt;
    }
    rep.axis = {std::sin(tilt_best), 0.0, std::cos(tilt_best)};
    rep.candidates = count;
    return rep;
  }

  // Torus: unit segments over a grid of directions and base points.
  const auto n_angle = static_cast<std::size_t>(std::ceil(kPi / spacing));
  const double base_spacing = std::max(spacing, 0.5 * rep.half_width);
  const auto n_base = static_cast<std::size_t>(std::ceil(2.0 * kPi / base_spacing));
  const auto panels = static_cast<std::size_t>(std::ceil((m.lambda() + 1.0) / 2.0)) + 1;
  const double per = 16.0 * 8.0 * static_cast<double>(panels);
  if (static_cast<double>(n_angle) * n_base * n_base * per > static_cast<double>(opts.budget)) {
    throw ResourceError("kn_norm: tube search exceeds the evaluation budget");
  }
  const std::size_t total = n_angle * n_base * n_base;
  std::vector<double> values(total);
  parallel_for(total, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t idx = lo; idx < hi; ++idx) {
      const std::size_t ia = idx / (n_base * n_base), ix = (idx / n_base) % n_base, iy = idx % n_base;
      values[idx] = torus_tube_mass(m, 2.0 * kPi * ix / n_base, 2.0 * kPi * iy / n_base, kPi * ia / n_angle,
                                    rep.half_width);
    }
  });
  const auto best = static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
  rep.s_kn = values[best];
  rep.angle = kPi * static_cast<double>(best / (n_base * n_base)) / static_cast<double>(n_angle);
  rep.x0 = 2.0 * kPi * static_cast<double>((best / n_base) % n_base) / static_cast<double>(n_base);
  rep.y0 = 2.0 * kPi * static_cast<double>(best % n_base) / static_cast<double>(n_base);
  rep.candidates = total;
  return rep;
}

Theorem3Table theorem3_check(ModeKind kind, const std::vector<int>& degrees, const measures::FractalMeasure& nu,
                             double alpha, const SurfaceGeodesic& ell, const KNOptions& opts) {
  if (!(alpha > 0.5 && alpha <= 1.0)) throw DomainError("theorem3_check: alpha must lie in (1/2, 1]");
  if (degrees.empty()) throw DomainError("theorem3_check: empty degree list");
  Theorem3Table out;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int l : degrees) {
    ModeSpec spec;
    spec.surface = Surface::sphere;
    spec.kind = kind;
    spec.degree = l;
    const Mode m(spec);
    Theorem3Row row;
    row.degree = l;
    row.lambda = m.lambda();
    row.lhs = restriction_norm(m, ell, nu);
    row.skn = kn_norm(m, opts).s_kn;
    row.bound = std::pow(row.lambda, 0.25) * std::pow(row.skn, alpha - 0.5);
    if (alpha == 1.0) row.bound *= std::log(row.lambda);
    row.ratio = row.lhs / row.bound;
    lo = std::min(lo, row.ratio);
    hi = std::max(hi, row.ratio);
    out.rows.push_back(row);
  }
  out.spread = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  return out;
}

double lp_chi(double tau) { return 1.0 - smooth_step((std::abs(tau) - 1.05) / (1.9 - 1.05)); }

double lp_beta(double tau) { return lp_chi(tau) - lp_chi(2.0 * tau); }

double partition_of_unity_error(double lambda, std::size_t samples) {
  if (!(lambda >= 1.0) || samples < 2) throw DomainError("partition_of_unity_error: bad arguments");
  const double lo = std::log(1.0 / std::sqrt(lambda));
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double tau = std::exp(lo * (1.0 - static_cast<double>(i) / static_cast<double>(samples - 1)));
    double sum = 0.0;
    for (int j = -64; j <= 8; ++j) sum += lp_beta(std::ldexp(tau, -j));
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

DyadicReport dyadic_kernel_check(DyadicSurface surface, double lambda, double scale,
                                 const std::vector<double>& separations, const measures::WeightFunction* w,
                                 double alpha) {
  if (!(lambda >= 1.0)) throw DomainError("dyadic_kernel_check: lambda must be >= 1");
  if (!(scale >= 1.0 / std::sqrt(lambda) * (1.0 - 1e-12) && scale <= 0.5)) {
    throw DomainError("dyadic_kernel_check: 2^k must lie in [lambda^{-1/2}, 1/2]");
  }
  DyadicReport rep;
  rep.lambda = lambda;
  rep.scale = scale;
  auto dist = [&](double s, double y1, double y2) {
    if (surface == DyadicSurface::flat) return std::hypot(y1 - s, y2);
    return std::acos(std::clamp(std::cos(y2) * std::cos(y1 - s), -1.0, 1.0));
  };
  auto d_y2 = [&](double s, double y1, double y2, double d) {
    if (surface == DyadicSurface::flat) return y2 / d;
    return std::sin(y2) * std::cos(y1 - s) / std::sin(d);
  };
  auto amp = [](double d) { return plateau(d - 0.75, 0.1, 0.25); };
  std::vector<double> lx, ly;
  for (double sep : separations) {
    if (!(sep >= 0.0 && sep <= 0.5)) throw DomainError("dyadic_kernel_check: separations must lie in [0, 1/2]");
    const double s0 = 0.0, s1 = sep;
    const double f2 = lambda * sep * 16.0 * scale + 20.0;
    const double f1 = lambda * sep * 32.0 * scale * scale + 20.0;
    const auto p2 = static_cast<std::size_t>(std::ceil(f2 * 1.5 * scale / 4.0)) + 1;
    const auto p1 = static_cast<std::size_t>(std::ceil(f1 * (sep + 2.1) / 4.0)) + 2;
    const QuadRule q1 = composite_gauss(p1, 10, -1.05, sep + 1.05);
    const QuadRule q2 = composite_gauss(p2, 10, 0.5 * scale, 2.0 * scale);
    std::size_t active = 0, degenerate = 0;
    cplx total{0.0, 0.0};
    for (int side : {1, -1}) {
      for (std::size_t j = 0; j < q2.nodes.size(); ++j) {
        const double y2 = side * q2.nodes[j];
        const double bk = lp_beta(q2.nodes[j] / scale);
        if (bk == 0.0) continue;
        for (std::size_t i = 0; i < q1.nodes.size(); ++i) {
          const double y1 = q1.nodes[i];
          const double da = dist(s0, y1, y2), db = dist(s1, y1, y2);
          const double a = amp(da) * amp(db);
          if (a == 0.0) continue;
          const double weight = q1.weights[i] * q2.weights[j] * a * bk * bk;
          total += weight * std::polar(1.0, lambda * (da - db));
          if (sep > 0.0 && a * bk * bk > 1e-3) {
            ++active;
            const double g = std::abs(d_y2(s0, y1, y2, da) - d_y2(s1, y1, y2, db));
            if (g < 0.1 * scale * sep) ++degenerate;
          }
        }
      }
    }
    DyadicSample smp;
    smp.separation = sep;
    smp.scaled = scale * scale * lambda * sep;
    smp.value = std::abs(total);
    smp.ratio = smp.value / (scale * std::pow(1.0 + smp.scaled, -2.0));
    smp.degenerate = active > 0 && static_cast<double>(degenerate) > 0.1 * static_cast<double>(active);
    rep.flagged = rep.flagged || smp.degenerate;
    rep.sup_ratio = std::max(rep.sup_ratio, smp.ratio);
    if (smp.scaled >= 4.0 && smp.value > 0.0) {
      lx.push_back(std::log(smp.scaled));
      ly.push_back(std::log(smp.value));
    }
    rep.samples.push_back(smp);
  }
  if (lx.size() >= 2) rep.slope = fit_line(lx, ly).slope;
  if (w != nullptr) {
    const double h = w->grid.step;
    const std::size_t n = w->grid.size;
    const std::size_t stride = std::max<std::size_t>(1, n / 512);
    double best = 0.0;
    for (std::size_t t = 0; t < n; t += stride) {
      const double sp = w->grid.at(t);
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (w->values[i] == 0.0) continue;
        const double x = scale * scale * lambda * std::abs(w->grid.at(i) - sp);
        acc += h * w->values[i] * scale / ((1.0 + x) * (1.0 + x));
      }
      best = std::max(best, acc);
    }
    rep.weight_ratio = best / (scale * std::pow(lambda, -alpha) * std::pow(scale, -2.0 * alpha));
  }
  return rep;
}

double gamma_exponent(double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("gamma_exponent: alpha must lie in (0, 2]");
  if (alpha <= 0.5) return 0.5 - 0.5 * alpha;
  if (alpha <= 1.0) return 0.25;
  return (2.0 - alpha) / 4.0;
}

double delta_exponent(double alpha) {
  if (!(alpha > 0.5 && alpha <= 1.0)) return std::numeric_limits<double>::quiet_NaN();
  return (alpha - 0.5) / (24.0 * (alpha - 0.5) + 2.0);
}

double marshall_exponent(double alpha) {
  if (!(alpha > 0.5 && alpha <= 1.0)) return std::numeric_limits<double>::quiet_NaN();
  return (alpha - 0.5) / 14.0;
}

ExactRational gamma_exact(ExactRational alpha) {
  if (alpha <= ExactRational(0) || alpha > ExactRational(2)) throw DomainError("gamma_exact: alpha must lie in (0, 2]");
  if (alpha <= ExactRational(1, 2)) return ExactRational(1, 2) - alpha / 2;
  if (alpha <= ExactRational(1)) return ExactRational(1, 4);
  return (ExactRational(2) - alpha) / 4;
}

ExactRational delta_exact(ExactRational alpha) {
  if (alpha <= ExactRational(1, 2) || alpha > ExactRational(1)) {
    throw DomainError("delta_exact: alpha must lie in (1/2, 1]");
  }
  const ExactRational t = alpha - ExactRational(1, 2);
  return t / (ExactRational(24) * t + 2);
}

ExactRational marshall_exact(ExactRational alpha) {
  if (alpha <= ExactRational(1, 2) || alpha > ExactRational(1)) {
    throw DomainError("marshall_exact: alpha must lie in (1/2, 1]");
  }
  return (alpha - ExactRational(1, 2)) / 14;
}

std::vector<ExponentRow> exponent_table(std::vector<double> alpha_grid) {
  if (alpha_grid.empty()) {
    for (int i = 1; i <= 100; ++i) alpha_grid.push_back(i / 50.0);
  }
  std::vector<ExponentRow> out;
  for (double a : alpha_grid) out.push_back({a, gamma_exponent(a), delta_exponent(a), marshall_exponent(a)});
  return out;
}

LineFit fit_exponent(const std::vector<double>& lambdas, const std::vector<double>& values) {
  if (lambdas.size() != values.size()) throw DomainError("fit_exponent: size mismatch");
  if (lambdas.size() < 3) throw DomainError("fit_exponent: need at least 3 points");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0 && values[i] > 0.0)) throw DomainError("fit_exponent: data must be positive");
    lx.push_back(std::log(lambdas[i]));
    ly.push_back(std::log(values[i]));
  }
  if (std::all_of(lx.begin(), lx.end(), [&](double v) { return v == lx.front(); })) {
    throw DomainError("fit_exponent: degenerate fit (identical lambda)");
  }
  return fit_line(lx, ly);
}

}  // namespace frl::modes
