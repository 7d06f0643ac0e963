#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "frl/geometry.hpp"

using namespace frl;
using namespace frl::geometry;

namespace {

GroupElement random_element(std::mt19937_64& rng, double spread = 1.0) {
  std::uniform_real_distribution<double> u(-spread, spread);
  for (;;) {
    const double a = 1.0 + u(rng), b = u(rng), c = u(rng), d = 1.0 + u(rng);
    if (a * d - b * c > 0.05) return GroupElement::from_matrix(a, b, c, d);
  }
}

double closed_form_distance(Point z, Point w) {
  return std::acosh(1.0 + std::norm(z - w) / (2.0 * z.imag() * w.imag()));
}

// Brute-force minimum over a fine parameter grid plus a local scan.
double brute_diag(const GroupElement& g) {
  double best = 1e300, y_best = 0.0;
  for (int i = -4000; i <= 4000; ++i) {
    const double y = i * 0.0025;
    const double v = dist_to_identity(a_of(-y) * g).value;
    if (v < best) {
      best = v;
      y_best = y;
    }
  }
  for (int i = -2000; i <= 2000; ++i) {
    const double y = y_best + i * 2.5e-6;
    best = std::min(best, dist_to_identity(a_of(-y) * g).value);
  }
  return best;
}

}  // namespace

TEST_CASE("actions") {
  for (double y : {-1.3, 0.0, 0.7, 2.0}) {
    const Point z = act(a_of(y), Point{0.0, 1.0});
    CHECK(std::abs(z - Point{0.0, std::exp(y)}) <= 1e-14 * std::exp(y));
  }
  const Point z{0.3, 2.1};
  CHECK(std::abs(act(GroupElement::identity(), z) - z) == 0.0);
  for (double t : {0.1, 1.0, 2.5}) CHECK(std::abs(act(k_of(t), Point{0.0, 1.0}) - Point{0.0, 1.0}) <= 1e-15);
  CHECK_THROWS_AS(act(GroupElement::identity(), Point{0.0, -1.0}), DomainError);
}

TEST_CASE("hyperbolic distance") {
  for (double y : {-2.0, -0.5, 0.0, 1.5}) {
    CHECK(dist_hyp(Point{0.0, 1.0}, Point{0.0, std::exp(y)}) == doctest::Approx(std::abs(y)).epsilon(1e-13));
  }
  CHECK(dist_hyp(Point{0.0, 1.0}, Point{1.0, 1.0}) == doctest::Approx(std::acosh(1.5)).epsilon(1e-13));
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_element(rng);
    const Point z{0.3 * i / 100.0 - 0.1, 0.5 + i / 50.0}, w{-0.4, 1.2};
    const double d = dist_hyp(z, w);
    CHECK(d == doctest::Approx(closed_form_distance(z, w)).epsilon(1e-10));
    CHECK(std::abs(dist_hyp(act(g, z), act(g, w)) - d) <= 1e-10 * std::max(1.0, d));
  }
}

TEST_CASE("iwasawa coordinate") {
  CHECK(iwasawa_A(a_of(2.0)) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(iwasawa_A(GroupElement::identity()) == 0.0);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_element(rng);
    // Row Gram-Schmidt from the bottom: g = (upper triangular) * (orthogonal).
    const double r22 = std::hypot(g.c, g.d);
    CHECK(iwasawa_A(g) == doctest::Approx(-2.0 * std::log(r22)).epsilon(1e-12).scale(1.0));
    CHECK(iwasawa_A(g) == doctest::Approx(std::log(act(g, Point{0.0, 1.0}).imag())).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("distance to a geodesic") {
  const Geodesic axis{GroupElement::identity(), 1.0};
  const auto r = dist_to_geodesic(Point{1.0, 1.0}, axis);
  CHECK(r.distance == doctest::Approx(std::log(1.0 + std::sqrt(2.0))).epsilon(1e-13));
  CHECK(dist_to_geodesic(Point{0.0, 3.0}, axis).distance <= 1e-14);
  CHECK(dist_to_geodesic(Point{0.0, 3.0}, axis).foot == doctest::Approx(std::log(3.0)));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const auto h = random_element(rng);
    const Point z{0.4 - i * 0.05, 0.7 + i * 0.1};
    const Geodesic moved{h, 1.0};
    CHECK(std::abs(dist_to_geodesic(act(h, z), moved).distance - dist_to_geodesic(z, axis).distance) <= 1e-10);
  }
  // Segment: beyond the far endpoint the distance is to the endpoint.
  CHECK(dist_to_segment(Point{0.0, std::exp(3.0)}, axis) == doctest::Approx(2.0));
  const Tube t{axis, 0.1};
  CHECK(t.contains(Point{0.05, 1.5}));
  CHECK_FALSE(t.contains(Point{1.0, 1.0}));
}

TEST_CASE("distance to the identity") {
  CHECK(dist_to_identity(GroupElement::identity()).value == 0.0);
  for (double y : {-0.5, -0.2, 0.1, 0.5}) {
    CHECK(dist_to_identity(a_of(y)).value == doctest::Approx(std::abs(y)).epsilon(1e-13));
    CHECK(dist_to_identity(a_of(y)).in_log_chart);
  }
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_element(rng, 0.3);
    CHECK(std::abs(dist_to_identity(g).value - dist_to_identity(g.inverse()).value) <= 1e-10);
  }
  // Projective: -g is the same element.
  const auto g = a_of(0.3) * k_of(0.2);
  const GroupElement neg{-g.a, -g.b, -g.c, -g.d};
  CHECK(dist_to_identity(neg).value == doctest::Approx(dist_to_identity(g).value).epsilon(1e-14));
}

TEST_CASE("distance to the diagonal subgroup") {
  CHECK(dist_to_diag(a_of(3.0)).value <= 1e-9);
  const double theta = 1e-3;
  const double ratio = dist_to_diag(rotation(theta)).value / theta;
  CHECK(ratio >= 0.9);
  CHECK(ratio <= 1.1);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 5; ++i) {
    const auto g = random_element(rng, 0.4);
    CHECK(dist_to_diag(g).value == doctest::Approx(brute_diag(g)).epsilon(1e-6).scale(1e-6));
    // Left translation by A leaves the infimum unchanged.
    CHECK(std::abs(dist_to_diag(a_of(0.37) * g).value - dist_to_diag(g).value) <= 1e-8);
  }
}
