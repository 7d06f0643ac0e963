#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "frl/integrals.hpp"

using namespace frl;
using namespace frl::integrals;

namespace {

const spherical::SphericalKernel& kernel() {
  static const auto k = spherical::make_kernel(20.0);
  return k;
}

SampledFunction sample(double half, double h, const std::function<cplx(double)>& f) {
  const auto n = static_cast<std::size_t>(std::llround(2.0 * half / h)) + 1;
  return SampledFunction::tabulate(UniformGrid{-half, h, n}, f);
}

// Plain double sum with the closed-form upper half-plane distance (asinh form).
cplx brute_I(const TestWindow& w, const SampledFunction& phi, const geometry::GroupElement& g) {
  cplx acc{0.0, 0.0};
  const double h = phi.grid.step;
  for (std::size_t i = 0; i < phi.grid.size; ++i) {
    const double x1 = phi.grid.at(i);
    const cplx z1{0.0, std::exp(x1)};
    for (std::size_t j = 0; j < phi.grid.size; ++j) {
      const double x2 = phi.grid.at(j);
      const double ex = std::exp(x2);
      const cplx z2 = (g.a * cplx{0.0, ex} + g.b) / (g.c * cplx{0.0, ex} + g.d);
      const double r = 2.0 * std::asinh(std::abs(z1 - z2) / (2.0 * std::sqrt(z1.imag() * z2.imag())));
      acc += w.b(x1) * w.b(x2) * std::conj(phi.values[i]) * phi.values[j] * kernel()(r);
    }
  }
  return acc * h * h;
}

}  // namespace

TEST_CASE("window cutoffs") {
  const TestWindow w{3.0, 1.0};
  CHECK(w.b(0.0) == 1.0);
  CHECK(w.b(2.5) == 1.0);
  CHECK(w.b(3.0) == 0.0);
  CHECK(w.b(-3.2) == 0.0);
  CHECK(w.b(2.8) > 0.0);
  CHECK(w.b(2.8) < 1.0);
  CHECK(w.b1(6.0) == 1.0);
  CHECK(w.b1(7.5) == 0.0);
}

TEST_CASE("algebra exponential and grids") {
  const auto e = exp_algebra(0.0, 0.0, 0.0);
  CHECK(geometry::dist_to_identity(e).value == 0.0);
  CHECK(geometry::iwasawa_A(exp_algebra(0.35, 0.0, 0.0)) == doctest::Approx(0.7).epsilon(1e-13));
  const auto n = exp_algebra(0.0, 0.4, 0.0);
  CHECK(n.b == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(n.c == 0.0);
  const auto grid = unit_ball_grid(20, 1.0);
  CHECK(grid.size() == 20);
  for (const auto& g : grid) {
    const auto d = geometry::dist_to_identity(g).value;
    CHECK(d > 0.0);
    CHECK(d <= 1.0 + 1e-12);
  }
}

TEST_CASE("radial argument") {
  const auto g = geometry::a_of(0.3) * geometry::k_of(0.5);
  for (double x1 : {-0.4, 0.0, 0.9}) {
    for (double x2 : {-0.2, 0.6}) {
      const geometry::Point z1{0.0, std::exp(x1)};
      const geometry::Point z2 = geometry::act(g, geometry::Point{0.0, std::exp(x2)});
      const double oracle = std::acosh(1.0 + std::norm(z1 - z2) / (2.0 * z1.imag() * z2.imag()));
      CHECK(radial_argument(x1, g, x2) == doctest::Approx(oracle).epsilon(1e-12));
    }
  }
  CHECK(radial_argument(0.2, geometry::GroupElement::identity(), 0.7) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("integral against brute force") {
  const TestWindow w{1.0, 1.0};
  const double h = 1.0 / (8.0 * kernel().lambda());
  const auto phi = sample(1.0, h, [](double x) { return standard_phi(20.0, x); });
  for (const auto& g : {geometry::GroupElement::identity(), geometry::a_of(0.1) * geometry::k_of(0.05),
                        exp_algebra(0.02, 0.1, -0.05)}) {
    const auto rep = eval_I(kernel(), w, phi, g);
    const cplx oracle = brute_I(w, phi, g);
    CHECK(std::abs(rep.value - oracle) <= 1e-8 * std::max(1.0, std::abs(oracle)));
  }
  const auto at_e = eval_I(kernel(), w, phi, geometry::GroupElement::identity());
  CHECK(std::abs(at_e.value.imag()) <= 1e-10 * std::abs(at_e.value));
  CHECK(at_e.value.real() > 0.0);
  CHECK(at_e.converged);
}

TEST_CASE("integral algebra") {
  const TestWindow w{1.0, 1.0};
  const double h = 1.0 / (8.0 * kernel().lambda());
  const auto g = geometry::a_of(0.05);
  const auto zero = sample(1.0, h, [](double) { return cplx{0.0, 0.0}; });
  CHECK(std::abs(eval_I(kernel(), w, zero, g).value) == 0.0);
  const auto p1 = sample(1.0, h, [](double x) { return standard_phi(20.0, x); });
  const auto p2 = sample(1.0, h, [](double x) { return cplx{std::cos(3.0 * x), 0.5 * x}; });
  const cplx c{1.5, -2.0};
  auto combine = [&](cplx a, cplx b) {
    SampledFunction out = p1;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = a * p1.values[i] + b * p2.values[i];
    return out;
  };
  const cplx i1 = eval_I(kernel(), w, p1, g).value, i2 = eval_I(kernel(), w, p2, g).value;
  CHECK(std::abs(eval_I(kernel(), w, combine(c, 0.0), g).value - std::norm(c) * i1) <= 1e-10 * std::abs(i1) * 6.25);
  // Parallelogram law of a sesquilinear form.
  const cplx plus = eval_I(kernel(), w, combine(1.0, 1.0), g).value;
  const cplx minus = eval_I(kernel(), w, combine(1.0, -1.0), g).value;
  CHECK(std::abs(plus + minus - 2.0 * i1 - 2.0 * i2) <= 1e-10 * (std::abs(i1) + std::abs(i2)));
  CHECK_THROWS_AS(eval_I(kernel(), w, sample(1.0, 4.0 * h, [](double) { return cplx{1.0, 0.0}; }), g),
                  DomainError);
}

TEST_CASE("amplified right side") {
  const auto alg = hecke::make_algebra(2, 3);
  const TestWindow w{0.5, 1.0};
  const double h = 1.0 / (8.0 * kernel().lambda());
  const auto phi = sample(0.5, h, [](double x) { return standard_phi(20.0, x); });
  const auto g0 = geometry::GroupElement::identity();
  hecke::Amplifier none;
  const auto empty = amplified_rhs(alg, none, kernel(), w, phi, g0);
  CHECK(empty.value == 0.0);
  CHECK(empty.identity_term == 0.0);
  hecke::Amplifier unit;
  unit.N = 1;
  unit.alpha[1] = 1.0;
  const auto rep = amplified_rhs(alg, unit, kernel(), w, phi, g0);
  const double at_e = std::abs(eval_I(kernel(), w, phi, g0).value);
  CHECK(rep.identity_term == doctest::Approx(at_e).epsilon(1e-14));
  CHECK(rep.value >= at_e * (1.0 - 1e-12));
  CHECK(rep.gamma_terms >= 1);
}
