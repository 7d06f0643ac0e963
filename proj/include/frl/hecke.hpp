#pragma once

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "frl/geometry.hpp"

namespace frl::hecke {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Quaternion algebra (a, b)/Q with an order given by an integer basis matrix over {1, w, W, wW}
/// (w^2 = a, W^2 = b, wW = -Ww): order basis vector i = sum_j basis[i][j] e_j / denominator.
struct QuatAlgebra {
  long long a = 2;
  long long b = 3;
  std::array<std::array<long long, 4>, 4> basis{{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};
  long long denominator = 1;
  long long q = 6;  // level excluded from the amplifier

  void validate() const;  // squarefree a > 0, b; nonsingular basis
};

QuatAlgebra make_algebra(long long a, long long b);

/// Four integer coordinates in the order basis.
using QuatElement = std::array<long long, 4>;

/// Coordinates in the standard basis {1, w, W, wW}, exact.
std::array<Rational, 4> standard_coordinates(const QuatAlgebra& alg, const QuatElement& x);
/// Inverse of standard_coordinates; throws DomainError if the element is not in the order.
QuatElement from_standard(const QuatAlgebra& alg, const std::array<Rational, 4>& x);

QuatElement quat_mul(const QuatAlgebra& alg, const QuatElement& x, const QuatElement& y);
QuatElement quat_conj(const QuatAlgebra& alg, const QuatElement& x);

struct NormTrace {
  Rational nrd;
  Rational trd;
};
NormTrace quat_norm_trace(const QuatAlgebra& alg, const QuatElement& x);

/// p + q sqrt(a), exact.
struct QuadNumber {
  Rational p = 0;
  Rational q = 0;
  bool operator==(const QuadNumber& o) const { return p == o.p && q == o.q; }
};
QuadNumber quad_mul(long long a, const QuadNumber& x, const QuadNumber& y);
QuadNumber quad_add(const QuadNumber& x, const QuadNumber& y);
QuadNumber quad_sub(const QuadNumber& x, const QuadNumber& y);

using ExactMatrix = std::array<std::array<QuadNumber, 2>, 2>;
ExactMatrix exact_mul(long long a, const ExactMatrix& x, const ExactMatrix& y);
QuadNumber exact_det(long long a, const ExactMatrix& m);

/// iota(x) = [[xi, eta], [b conj(eta), conj(xi)]], xi = x0 + x1 sqrt a, eta = x2 + x3 sqrt a
/// (standard coordinates). Multiplicative, det = nrd.
ExactMatrix iota_exact(const QuatAlgebra& alg, const QuatElement& x);
/// iota(x) / sqrt(nrd x) in PSL(2,R). Throws DomainError if nrd <= 0.
geometry::GroupElement iota(const QuatAlgebra& alg, const QuatElement& x);

/// Smallest/largest representative of +-x: first nonzero coordinate positive.
QuatElement projective_canonical(const QuatElement& x);

inline constexpr std::size_t kDefaultBoxBudget = std::size_t{1} << 26;

/// All projective classes of elements of norm n whose normalized image iota(x)/sqrt(n) has
/// every entry bounded by entry_bound / sqrt(n) and passes `keep`. Sorted.
std::vector<QuatElement> enumerate_with_bound(const QuatAlgebra& alg, long long n, double entry_bound,
                                              const std::function<bool(const geometry::GroupElement&)>& keep,
                                              std::size_t budget = kDefaultBoxBudget);

/// Coordinate half-widths scanned by enumerate_norm_n (order basis).
std::array<long long, 4> enumeration_box(const QuatAlgebra& alg, long long n, const geometry::GroupElement& g0,
                                         double radius);

/// Norm-n elements with d(g0^{-1} iota(x) g0 / sqrt n, e) <= radius, one per projective class.
std::vector<QuatElement> enumerate_norm_n(const QuatAlgebra& alg, long long n, const geometry::GroupElement& g0,
                                          double radius, std::size_t budget = kDefaultBoxBudget);

/// Norm-n elements with |c_0|, |c_1|, |c_2| <= half_width (c_3 solved from the norm equation).
std::vector<QuatElement> enumerate_coefficient_box(const QuatAlgebra& alg, long long n, long long half_width,
                                                   std::size_t budget = kDefaultBoxBudget);

/// True if y = u x for a unit u, i.e. y conj(x) lies in n R.
bool same_coset(const QuatAlgebra& alg, long long n, const QuatElement& x, const QuatElement& y);

struct CosetResult {
  std::vector<QuatElement> reps;
  long long expected = 0;  // sigma_1(n) when n is prime to the order's bad primes, else 0
  bool certified = false;  // reps.size() == expected
  long long half_width = 0;
};
/// Representatives of R(1)\R(n) found in growing coefficient boxes up to max_half_width.
CosetResult coset_reps(const QuatAlgebra& alg, long long n, long long max_half_width = 40);

/// sigma_1(n) if gcd(n, bad primes) = 1, else 0.
long long expected_coset_count(const QuatAlgebra& alg, long long n);

/// M(g, n, kappa): norm-n classes with d(h, e) <= 1 and d(h, A) <= kappa, h = g^{-1} iota(x) g / sqrt n.
long long hecke_returns(const QuatAlgebra& alg, const geometry::GroupElement& g, long long n, double kappa);

/// True if the norm form has no nonzero integer zero with |x_i| <= half_width (standard coordinates).
bool anisotropy_screen(const QuatAlgebra& alg, long long half_width = 25);

struct PrimeEigenvalues {
  double lp = 0.0;   // lambda(p)
  double lp2 = 0.0;  // lambda(p^2)
};
using EigenvalueMap = std::map<long long, PrimeEigenvalues>;

struct Amplifier {
  long long N = 0;
  long long q = 1;
  std::vector<long long> primes;
  std::map<long long, double> alpha;  // n -> alpha_n (nonzero entries only)

  double l1() const;
  double l2_squared() const;
  /// sum_n alpha_n lambda(n).
  double functional(const EigenvalueMap& eig) const;
};

/// Primes 1 < p <= sqrt(N) with gcd(p, q) = 1.
std::vector<long long> amplifier_primes(long long N, long long q);

Amplifier build_amplifier(long long N, const EigenvalueMap& eig, long long q);

/// Draws lambda(p) uniform in [-2, 2] and sets lambda(p^2) = lambda(p)^2 - 1.
EigenvalueMap random_eigenvalues(const std::vector<long long>& primes, std::mt19937_64& rng);

}  // namespace frl::hecke
