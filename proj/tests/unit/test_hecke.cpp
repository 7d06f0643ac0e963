#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "frl/hecke.hpp"

using namespace frl;
using namespace frl::hecke;

namespace {

const QuatAlgebra& alg() {
  static const QuatAlgebra a = make_algebra(2, 3);
  return a;
}

long long norm_form(const QuatElement& x) {
  // Standard basis order: x0^2 - a x1^2 - b x2^2 + ab x3^2.
  const long long a = alg().a, b = alg().b;
  return x[0] * x[0] - a * x[1] * x[1] - b * x[2] * x[2] + a * b * x[3] * x[3];
}

QuatElement random_quat(std::mt19937_64& rng, int range) {
  std::uniform_int_distribution<long long> u(-range, range);
  return {u(rng), u(rng), u(rng), u(rng)};
}

std::set<QuatElement> brute_force(long long n, const geometry::GroupElement& g0, double radius, long long half) {
  std::set<QuatElement> out;
  const auto g0i = g0.inverse();
  const double sn = std::sqrt(static_cast<double>(n));
  for (long long x0 = -half; x0 <= half; ++x0)
    for (long long x1 = -half; x1 <= half; ++x1)
      for (long long x2 = -half; x2 <= half; ++x2)
        for (long long x3 = -half; x3 <= half; ++x3) {
          const QuatElement x{x0, x1, x2, x3};
          if (norm_form(x) != n) continue;
          // Floating image built directly from the matrix formula.
          const double xi0 = x0, xi1 = x1 * std::sqrt(2.0), e0 = x2, e1 = x3 * std::sqrt(2.0);
          const auto m = geometry::GroupElement::from_matrix((xi0 + xi1) / sn, (e0 + e1) / sn, 3.0 * (e0 - e1) / sn,
                                                             (xi0 - xi1) / sn);
          if (geometry::dist_to_identity(g0i * m * g0).value <= radius) out.insert(projective_canonical(x));
        }
  return out;
}

}  // namespace

TEST_CASE("norm and trace") {
  const auto nt = quat_norm_trace(alg(), QuatElement{1, 1, 0, 0});
  CHECK(nt.nrd == -1);
  const auto one = quat_norm_trace(alg(), QuatElement{1, 0, 0, 0});
  CHECK(one.nrd == 1);
  CHECK(one.trd == 2);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const auto x = random_quat(rng, 50), y = random_quat(rng, 50);
    CHECK(quat_norm_trace(alg(), x).nrd == norm_form(x));
    CHECK(quat_norm_trace(alg(), quat_mul(alg(), x, y)).nrd == Rational(norm_form(x)) * norm_form(y));
    CHECK(quat_norm_trace(alg(), x).trd == 2 * x[0]);
  }
}

TEST_CASE("matrix embedding") {
  const auto id = iota_exact(alg(), QuatElement{1, 0, 0, 0});
  CHECK(id[0][0] == QuadNumber{1, 0});
  CHECK(id[0][1] == QuadNumber{0, 0});
  CHECK(id[1][0] == QuadNumber{0, 0});
  CHECK(id[1][1] == QuadNumber{1, 0});
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const auto x = random_quat(rng, 30), y = random_quat(rng, 30);
    CHECK(exact_det(alg().a, iota_exact(alg(), x)) == QuadNumber{Rational(norm_form(x)), 0});
    const auto lhs = iota_exact(alg(), quat_mul(alg(), x, y));
    const auto rhs = exact_mul(alg().a, iota_exact(alg(), x), iota_exact(alg(), y));
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) CHECK(lhs[r][c] == rhs[r][c]);
  }
  const auto g = iota(alg(), QuatElement{3, 1, 1, 0});  // nrd = 9 - 2 - 3 = 4
  CHECK(g.det() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(iota(alg(), QuatElement{1, 1, 0, 0}), DomainError);
}

TEST_CASE("enumeration") {
  const auto e = geometry::GroupElement::identity();
  const auto units = enumerate_norm_n(alg(), 1, e, 0.0);
  REQUIRE(units.size() == 1);
  CHECK(units[0] == QuatElement{1, 0, 0, 0});
  const auto g0 = geometry::a_of(0.2) * geometry::k_of(0.3);
  for (long long n = 1; n <= 20; ++n) {
    for (const auto& g : {e, g0}) {
      const auto box = enumeration_box(alg(), n, g, 1.0);
      REQUIRE(*std::max_element(box.begin(), box.end()) <= 20);
      const auto got = enumerate_norm_n(alg(), n, g, 1.0);
      const std::set<QuatElement> got_set(got.begin(), got.end());
      CHECK(got_set.size() == got.size());
      CHECK(got_set == brute_force(n, g, 1.0, 20));
      const auto small = enumerate_norm_n(alg(), n, g, 0.5);
      for (const auto& x : small) CHECK(got_set.count(x) == 1);
    }
  }
}

TEST_CASE("coset representatives") {
  CHECK(coset_reps(alg(), 1).reps.size() == 1);
  const auto c5 = coset_reps(alg(), 5);
  CHECK(c5.expected == 6);
  CHECK(c5.reps.size() == 6);
  CHECK(c5.certified);
  const auto c25 = coset_reps(alg(), 25);
  // Degrees of the normalized relation T_p T_p = T_{p^2} + p T_1.
  CHECK(c5.reps.size() * c5.reps.size() == c25.reps.size() + 5);
  for (std::size_t i = 0; i < c5.reps.size(); ++i)
    for (std::size_t j = i + 1; j < c5.reps.size(); ++j) CHECK_FALSE(same_coset(alg(), 5, c5.reps[i], c5.reps[j]));
  CHECK(expected_coset_count(alg(), 6) == 0);
}

TEST_CASE("hecke returns") {
  const auto g = geometry::a_of(0.1) * geometry::k_of(0.7);
  for (double kappa : {0.0, 0.1, 1.0}) CHECK(hecke_returns(alg(), g, 1, kappa) >= 1);
  for (long long n : {1, 5, 7, 11}) {
    long long prev = 0;
    for (double kappa : {0.05, 0.1, 0.25, 0.5, 1.0}) {
      const long long m = hecke_returns(alg(), g, n, kappa);
      CHECK(m >= prev);
      prev = m;
    }
  }
}

TEST_CASE("amplifier") {
  SUBCASE("large lambda(p)") {
    EigenvalueMap eig{{2, {0.9, 0.9 * 0.9 - 1.0}}};
    const auto amp = build_amplifier(4, eig, 1);
    CHECK(amp.alpha.at(2) == 1.0);
    CHECK(amp.alpha.count(4) == 0);
  }
  SUBCASE("small lambda(p)") {
    EigenvalueMap eig{{2, {0.0, -1.0}}};
    const auto amp = build_amplifier(4, eig, 1);
    CHECK(amp.alpha.count(2) == 0);
    CHECK(amp.alpha.at(4) == -1.0);
  }
  SUBCASE("moments") {
    CHECK(amplifier_primes(100, 1) == std::vector<long long>{2, 3, 5, 7});
    CHECK(amplifier_primes(100, 6) == std::vector<long long>{5, 7});
    std::mt19937_64 rng(4);
    const auto eig = random_eigenvalues(amplifier_primes(100, 1), rng);
    const auto amp = build_amplifier(100, eig, 1);
    CHECK(amp.l1() == 4.0);
    CHECK(amp.l2_squared() == 4.0);
  }
  SUBCASE("lower bound on random draws") {
    std::mt19937_64 rng(5);
    const auto primes = amplifier_primes(400, 6);
    for (int i = 0; i < 1000; ++i) {
      const auto eig = random_eigenvalues(primes, rng);
      for (const auto& [p, v] : eig) CHECK(v.lp2 == doctest::Approx(v.lp * v.lp - 1.0));
      const auto amp = build_amplifier(400, eig, 6);
      CHECK(std::abs(amp.functional(eig)) >= 0.5 * static_cast<double>(primes.size()));
      CHECK(amp.l1() == static_cast<double>(primes.size()));
    }
  }
}

TEST_CASE("anisotropy screen") { CHECK(anisotropy_screen(alg(), 25)); }
