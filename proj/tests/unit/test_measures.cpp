#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "frl/frequency.hpp"
#include "frl/measures.hpp"

using namespace frl;
using namespace frl::measures;

namespace {

const double kCantor = std::log(2.0) / std::log(3.0);

// Exhaustive interval count around every atom.
double brute_frostman(const FractalMeasure& m, const std::vector<double>& radii) {
  double best = 0.0;
  for (double x : m.atoms) {
    for (double r : radii) {
      double mass = 0.0;
      for (std::size_t j = 0; j < m.atoms.size(); ++j) {
        if (std::abs(m.atoms[j] - x) < r * (1.0 - 1e-12)) mass += m.weights[j];
      }
      best = std::max(best, mass / std::pow(r, m.alpha));
    }
  }
  return best;
}

double brute_energy(const FractalMeasure& m, double s) {
  double e = 0.0;
  for (std::size_t i = 0; i < m.atoms.size(); ++i) {
    for (std::size_t j = 0; j < m.atoms.size(); ++j) {
      if (i != j) e += m.weights[i] * m.weights[j] * std::pow(std::abs(m.atoms[i] - m.atoms[j]), -s);
    }
  }
  return e;
}

std::vector<double> geometric(double lo, double hi, int n) {
  std::vector<double> r;
  for (int i = 0; i < n; ++i) r.push_back(lo * std::pow(hi / lo, i / double(n - 1)));
  return r;
}

WeightFunction indicator_weight(double a, double b, double h) {
  WeightFunction w;
  const auto half = static_cast<std::size_t>(std::llround(2.0 / h));
  w.grid = UniformGrid{-2.0, h, 2 * half + 1};
  w.values.assign(w.grid.size, 0.0);
  for (std::size_t i = 0; i < w.grid.size; ++i) {
    const double t = w.grid.at(i);
    if (t > a + 1e-12 && t < b - 1e-12) w.values[i] = 1.0;
    if (std::abs(t - a) < 1e-12 || std::abs(t - b) < 1e-12) w.values[i] = 0.5;
  }
  return w;
}

}  // namespace

TEST_CASE("cantor base cases") {
  const auto m0 = make_cantor_measure(kCantor, 0);
  REQUIRE(m0.atoms.size() == 1);
  CHECK(m0.atoms[0] == doctest::Approx(0.5));
  CHECK(m0.weights[0] == 1.0);

  const auto m1 = make_cantor_measure(kCantor, 1);
  REQUIRE(m1.atoms.size() == 2);
  CHECK(m1.atoms[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(m1.atoms[1] == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
  CHECK(m1.weights[0] == 0.5);
  CHECK(m1.weights[1] == 0.5);
}

TEST_CASE("alpha one gives equally spaced midpoints") {
  const int d = 7;
  const auto m = make_cantor_measure(1.0, d);
  REQUIRE(m.atoms.size() == 128);
  for (std::size_t i = 0; i < m.atoms.size(); ++i) {
    CHECK(m.atoms[i] == doctest::Approx((i + 0.5) / 128.0).epsilon(1e-12));
    CHECK(m.weights[i] == doctest::Approx(1.0 / 128.0));
  }
  const auto r = geometric(1.0 / 128, 1.0, 15);
  CHECK(frostman_ratio(m, r) == doctest::Approx(brute_frostman(m, r)).epsilon(1e-12));
  // An open ball of radius r holds at most 2 r N + 1 atoms.
  const auto r_big = geometric(0.1, 1.0, 15);
  CHECK(frostman_ratio(m, r_big) <= 2.0 + 1.0 / (128.0 * 0.1) + 1e-12);
}

TEST_CASE("uniform measure ratio bound") {
  const auto m = make_uniform_measure(200);
  const std::vector<double> r{0.1, 0.2, 0.3, 0.4, 0.5};
  CHECK(frostman_ratio(m, r) <= 2.0 + 2.0 / 200.0 + 1e-12);
}

TEST_CASE("cantor frostman constant is depth independent") {
  const auto m6 = make_cantor_measure(kCantor, 6);
  const auto m8 = make_cantor_measure(kCantor, 8);
  // Depth 6 atoms are point masses below 3^{-6}, so the common resolved range starts there.
  const auto r = geometric(std::pow(3.0, -6), 1.0, 25);
  const double c6 = brute_frostman(m6, r), c8 = brute_frostman(m8, r);
  CHECK(frostman_ratio(m6, r) == doctest::Approx(c6).epsilon(1e-12));
  CHECK(frostman_ratio(m8, r) == doctest::Approx(c8).epsilon(1e-12));
  CHECK(c6 / c8 >= 0.5);
  CHECK(c6 / c8 <= 2.0);
}

TEST_CASE("single atom ratio") {
  FractalMeasure m;
  m.atoms = {0.5};
  m.weights = {1.0};
  m.alpha = 0.7;
  const std::vector<double> r{0.5};
  CHECK(frostman_ratio(m, r) == doctest::Approx(std::pow(0.5, -0.7)).epsilon(1e-12));
}

TEST_CASE("cantor measure errors") {
  CHECK_THROWS_AS(make_cantor_measure(1.5, 3), DomainError);
  CHECK_THROWS_AS(make_cantor_measure(0.0, 3), DomainError);
  CHECK_THROWS_AS(make_cantor_measure(kCantor, 30, 1 << 20), ResourceError);
}

TEST_CASE("atomic energy") {
  const auto m = make_cantor_measure(kCantor, 6);
  CHECK(energy(m, 0.4) == doctest::Approx(brute_energy(m, 0.4)).epsilon(1e-10));
  double prev = 0.0;
  for (double s : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double e = energy(m, s);
    CHECK(e >= prev);
    prev = e;
  }
  const double e6 = brute_energy(m, 0.8);
  const double e8 = brute_energy(make_cantor_measure(kCantor, 8), 0.8);
  CHECK(energy(make_cantor_measure(kCantor, 8), 0.8) == doctest::Approx(e8).epsilon(1e-10));
  CHECK(e8 / e6 > 1.5);
}

TEST_CASE("weight energy of the unit interval") {
  const auto w = indicator_weight(0.0, 1.0, 1.0 / 4000.0);
  // int int |x-y|^{-1/2} over [0,1]^2 = 8/3.
  CHECK(energy(w, 0.5) == doctest::Approx(8.0 / 3.0).epsilon(1e-4));
}

TEST_CASE("weighted energy reductions") {
  const auto w = indicator_weight(-0.5, 0.7, 1.0 / 512.0);
  std::vector<cplx> zero(w.values.size(), cplx{0.0, 0.0});
  std::vector<cplx> one(w.values.size(), cplx{1.0, 0.0});
  CHECK(std::abs(weighted_energy(w, zero, 0.5)) == 0.0);
  CHECK(weighted_energy(w, one, 0.5).real() == doctest::Approx(energy(w, 0.5)).epsilon(1e-12));
}

TEST_CASE("truncated riesz on a flat weight") {
  WeightFunction w;
  w.grid = UniformGrid{-2.0, 1.0 / 1024.0, 4097};
  w.values.assign(w.grid.size, 1.0);
  CHECK(truncated_riesz(w, 0.0, 0.5, 0.25) == doctest::Approx(2.0).epsilon(1e-3));
  WeightFunction z = w;
  std::fill(z.values.begin(), z.values.end(), 0.0);
  CHECK(truncated_riesz(z, 0.0, 0.5, 0.25) == 0.0);
}

TEST_CASE("weight from a measure") {
  const auto bump = frequency::make_bump_pair();
  SUBCASE("zero mass gives zero weight") {
    auto nu = make_uniform_measure(4);
    std::fill(nu.weights.begin(), nu.weights.end(), 0.0);
    const auto w = build_weight(nu, 50.0, bump);
    CHECK(std::all_of(w.values.begin(), w.values.end(), [](double v) { return v == 0.0; }));
  }
  SUBCASE("uniform measure mass is lambda independent") {
    const auto nu = make_uniform_measure(256);
    const double m50 = build_weight(nu, 50.0, bump).total_mass();
    const double m100 = build_weight(nu, 100.0, bump).total_mass();
    CHECK(m100 / m50 == doctest::Approx(1.0).epsilon(0.5));
    CHECK(m100 < 10.0 * m50);
  }
  SUBCASE("interval sweep matches direct integration") {
    const auto nu = make_cantor_measure(kCantor, 6);
    const double lambda = 100.0;
    const auto w = build_weight(nu, lambda, bump);
    const auto r = geometric(1.0 / lambda, 1.0, 13);
    const auto sweep = interval_ratio_sweep(w, kCantor, r);
    for (std::size_t k = 0; k < r.size(); k += 4) {
      double direct = 0.0;
      for (std::size_t i = 0; i < w.grid.size; i += 7) {
        const double a = w.grid.at(i);
        direct = std::max(direct, w.integral(a - r[k], a + r[k]) / std::pow(r[k], kCantor));
      }
      CHECK(direct <= sweep[k] * (1.0 + 1e-9));
      CHECK(direct >= 0.9 * sweep[k]);
    }
    // Sup per decade stays within a factor 2.
    const double lo = *std::min_element(sweep.begin(), sweep.end());
    const double hi = *std::max_element(sweep.begin(), sweep.end());
    CHECK(hi / lo < 2.5);
    double d1 = 0.0, d2 = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k) (r[k] < 0.1 ? d1 : d2) = std::max(r[k] < 0.1 ? d1 : d2, sweep[k]);
    CHECK(std::max(d1, d2) / std::min(d1, d2) < 2.0);
  }
  SUBCASE("sampling precondition") {
    WeightOptions o;
    o.samples_per_wavelength = 4.0;
    CHECK_THROWS_AS(build_weight(make_uniform_measure(4), 50.0, bump, o), DomainError);
  }
}
