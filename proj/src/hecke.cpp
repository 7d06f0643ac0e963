#include "frl/hecke.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

namespace frl::hecke {

using geometry::GroupElement;

namespace {

using i128 = __int128;

bool squarefree(long long v) {
  v = v < 0 ? -v : v;
  if (v == 0) return false;
  for (long long p = 2; p * p <= v; ++p) {
    if (v % (p * p) == 0) return false;
  }
  return true;
}

bool is_standard(const QuatAlgebra& alg) {
  if (alg.denominator != 1) return false;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (alg.basis[i][j] != (i == j ? 1 : 0)) return false;
    }
  }
  return true;
}

using RatMatrix = std::array<std::array<Rational, 4>, 4>;

RatMatrix inverse_basis(const QuatAlgebra& alg) {
  RatMatrix m{}, inv{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      m[i][j] = alg.basis[i][j];
      inv[i][j] = i == j ? 1 : 0;
    }
  }
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    while (piv < 4 && m[piv][col] == 0) ++piv;
    if (piv == 4) throw DomainError("QuatAlgebra: order basis is singular");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    const Rational d = m[col][col];
    for (int j = 0; j < 4; ++j) {
      m[col][j] /= d;
      inv[col][j] /= d;
    }
    for (int r = 0; r < 4; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (int j = 0; j < 4; ++j) {
        m[r][j] -= f * m[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

std::array<Rational, 4> std_mul(long long a, long long b, const std::array<Rational, 4>& x,
                                const std::array<Rational, 4>& y) {
  const Rational A(a), B(b);
  return {x[0] * y[0] + A * x[1] * y[1] + B * x[2] * y[2] - A * B * x[3] * y[3],
          x[0] * y[1] + x[1] * y[0] - B * x[2] * y[3] + B * x[3] * y[2],
          x[0] * y[2] + x[2] * y[0] + A * x[1] * y[3] - A * x[3] * y[1],
          x[0] * y[3] + x[3] * y[0] + x[1] * y[2] - x[2] * y[1]};
}

long long to_ll(const BigInt& v) {
  if (v > BigInt(std::numeric_limits<long long>::max()) || v < BigInt(std::numeric_limits<long long>::min())) {
    throw ResourceError("quaternion coordinate overflows 64-bit integers");
  }
  return static_cast<long long>(v);
}

i128 isqrt(i128 v) {
  if (v < 0) return -1;
  auto r = static_cast<i128>(std::sqrt(static_cast<long double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

// Integer Gram matrix S with nrd(c) = c^T S c / den^2.
std::array<std::array<i128, 4>, 4> gram(const QuatAlgebra& alg) {
  const i128 diag[4] = {1, -alg.a, -alg.b, static_cast<i128>(alg.a) * alg.b};
  std::array<std::array<i128, 4>, 4> s{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      i128 acc = 0;
      for (int k = 0; k < 4; ++k) acc += static_cast<i128>(alg.basis[i][k]) * alg.basis[j][k] * diag[k];
      s[i][j] = acc;
    }
  }
  return s;
}

// Half-widths of order coordinates for standard-coordinate bounds xb.
std::array<long long, 4> order_box(const QuatAlgebra& alg, const std::array<double, 4>& xb) {
  const RatMatrix inv = inverse_basis(alg);
  std::array<long long, 4> out{};
  for (int i = 0; i < 4; ++i) {
    double acc = 0.0;
    for (int j = 0; j < 4; ++j) acc += xb[j] * std::abs(static_cast<double>(inv[j][i]));
    out[i] = static_cast<long long>(std::floor(acc * static_cast<double>(alg.denominator) + 1e-9));
  }
  return out;
}

std::array<double, 4> standard_bounds(const QuatAlgebra& alg, double entry_bound) {
  const double ra = std::sqrt(static_cast<double>(alg.a));
  const double eta = 0.5 * (entry_bound + entry_bound / std::abs(static_cast<double>(alg.b)));
  return {entry_bound, entry_bound / ra, eta, eta / ra};
}

GroupElement normalized_image(const QuatAlgebra& alg, const std::array<double, 4>& x, long long n) {
  const double ra = std::sqrt(static_cast<double>(alg.a));
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  const double xi = x[0] + x[1] * ra, xib = x[0] - x[1] * ra;
  const double eta = x[2] + x[3] * ra, etab = x[2] - x[3] * ra;
  return {xi * s, eta * s, static_cast<double>(alg.b) * etab * s, xib * s};
}

// Scans c0..c2 within the half-widths, solves c3 from the norm equation, keeps one sign per class.
std::vector<QuatElement> scan(const QuatAlgebra& alg, long long n, const std::array<long long, 3>& half,
                              const std::function<bool(const QuatElement&)>& keep, std::size_t budget) {
  if (n < 1) throw DomainError("enumeration: n must be >= 1");
  const double cells = static_cast<double>(2 * half[0] + 1) * static_cast<double>(2 * half[1] + 1) *
                       static_cast<double>(2 * half[2] + 1);
  if (cells > static_cast<double>(budget)) {
    std::ostringstream msg;
    msg << "enumeration: coefficient box [" << half[0] << ", " << half[1] << ", " << half[2]
        << "] exceeds the budget of " << budget << " cells";
    throw ResourceError(msg.str());
  }
  const auto s = gram(alg);
  const i128 target = static_cast<i128>(n) * alg.denominator * alg.denominator;
  const std::size_t rows = static_cast<std::size_t>(2 * half[0] + 1);
  std::vector<std::vector<QuatElement>> found(rows);
  parallel_for(rows, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t r = lo; r < hi; ++r) {
      const long long c0 = static_cast<long long>(r) - half[0];
      for (long long c1 = -half[1]; c1 <= half[1]; ++c1) {
        for (long long c2 = -half[2]; c2 <= half[2]; ++c2) {
          const i128 c[3] = {c0, c1, c2};
          i128 quad = 0, lin = 0;
          for (int i = 0; i < 3; ++i) {
            lin += s[i][3] * c[i];
            for (int j = 0; j < 3; ++j) quad += s[i][j] * c[i] * c[j];
          }
          const i128 aa = s[3][3], cc = quad - target;
          std::vector<long long> roots;
          if (aa == 0) {
            if (lin == 0) {
              if (cc == 0) throw DomainError("enumeration: degenerate norm form");
              continue;
            }
            if (cc % (2 * lin) == 0) roots.push_back(static_cast<long long>(-cc / (2 * lin)));
          } else {
            const i128 disc = lin * lin - aa * cc;
            if (disc < 0) continue;
            const i128 rt = isqrt(disc);
            if (rt * rt != disc) continue;
            for (const i128 num : {-lin + rt, -lin - rt}) {
              if (num % aa == 0) roots.push_back(static_cast<long long>(num / aa));
            }
            if (rt == 0 && roots.size() == 2) roots.pop_back();
          }
          for (long long c3 : roots) {
            const QuatElement e{c0, c1, c2, c3};
            if (projective_canonical(e) != e) continue;
            if (keep(e)) found[r].push_back(e);
          }
        }
      }
    }
  });
  std::vector<QuatElement> out;
  for (auto& v : found) out.insert(out.end(), v.begin(), v.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::array<double, 4> standard_double(const QuatAlgebra& alg, const QuatElement& x) {
  std::array<double, 4> out{};
  for (int j = 0; j < 4; ++j) {
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) acc += static_cast<double>(x[i]) * static_cast<double>(alg.basis[i][j]);
    out[j] = acc / static_cast<double>(alg.denominator);
  }
  return out;
}

std::vector<long long> prime_factors(long long v) {
  std::vector<long long> out;
  v = v < 0 ? -v : v;
  for (long long p = 2; p * p <= v; ++p) {
    if (v % p == 0) {
      out.push_back(p);
      while (v % p == 0) v /= p;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

}  // namespace

void QuatAlgebra::validate() const {
  if (a <= 0) throw DomainError("QuatAlgebra: a must be positive");
  if (!squarefree(a) || !squarefree(b)) throw DomainError("QuatAlgebra: a and b must be squarefree");
  if (a == 1) throw DomainError("QuatAlgebra: a = 1 gives a split algebra");
  if (denominator < 1) throw DomainError("QuatAlgebra: denominator must be positive");
  inverse_basis(*this);
}

QuatAlgebra make_algebra(long long a, long long b) {
  QuatAlgebra alg;
  alg.a = a;
  alg.b = b;
  alg.validate();
  return alg;
}

std::array<Rational, 4> standard_coordinates(const QuatAlgebra& alg, const QuatElement& x) {
  std::array<Rational, 4> out;
  for (int j = 0; j < 4; ++j) {
    BigInt acc = 0;
    for (int i = 0; i < 4; ++i) acc += BigInt(x[i]) * alg.basis[i][j];
    out[j] = Rational(acc, alg.denominator);
  }
  return out;
}

QuatElement from_standard(const QuatAlgebra& alg, const std::array<Rational, 4>& x) {
  if (is_standard(alg)) {
    QuatElement out{};
    for (int i = 0; i < 4; ++i) {
      if (denominator(x[i]) != 1) throw DomainError("from_standard: element is not in the order");
      out[i] = to_ll(numerator(x[i]));
    }
    return out;
  }
  const RatMatrix inv = inverse_basis(alg);
  QuatElement out{};
  for (int i = 0; i < 4; ++i) {
    Rational acc = 0;
    for (int j = 0; j < 4; ++j) acc += x[j] * inv[j][i];
    acc *= alg.denominator;
    if (denominator(acc) != 1) throw DomainError("from_standard: element is not in the order");
    out[i] = to_ll(numerator(acc));
  }
  return out;
}

QuatElement quat_mul(const QuatAlgebra& alg, const QuatElement& x, const QuatElement& y) {
  return from_standard(alg, std_mul(alg.a, alg.b, standard_coordinates(alg, x), standard_coordinates(alg, y)));
}

QuatElement quat_conj(const QuatAlgebra& alg, const QuatElement& x) {
  auto s = standard_coordinates(alg, x);
  for (int i = 1; i < 4; ++i) s[i] = -s[i];
  return from_standard(alg, s);
}

NormTrace quat_norm_trace(const QuatAlgebra& alg, const QuatElement& x) {
  const auto s = standard_coordinates(alg, x);
  const Rational A(alg.a), B(alg.b);
  return {s[0] * s[0] - A * s[1] * s[1] - B * s[2] * s[2] + A * B * s[3] * s[3], 2 * s[0]};
}

QuadNumber quad_mul(long long a, const QuadNumber& x, const QuadNumber& y) {
  return {x.p * y.p + Rational(a) * x.q * y.q, x.p * y.q + x.q * y.p};
}
QuadNumber quad_add(const QuadNumber& x, const QuadNumber& y) { return {x.p + y.p, x.q + y.q}; }
QuadNumber quad_sub(const QuadNumber& x, const QuadNumber& y) { return {x.p - y.p, x.q - y.q}; }

ExactMatrix exact_mul(long long a, const ExactMatrix& x, const ExactMatrix& y) {
  ExactMatrix out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out[i][j] = quad_add(quad_mul(a, x[i][0], y[0][j]), quad_mul(a, x[i][1], y[1][j]));
  }
  return out;
}

QuadNumber exact_det(long long a, const ExactMatrix& m) {
  return quad_sub(quad_mul(a, m[0][0], m[1][1]), quad_mul(a, m[0][1], m[1][0]));
}

ExactMatrix iota_exact(const QuatAlgebra& alg, const QuatElement& x) {
  const auto s = standard_coordinates(alg, x);
  const Rational B(alg.b);
  return {{{QuadNumber{s[0], s[1]}, QuadNumber{s[2], s[3]}}, {QuadNumber{B * s[2], -B * s[3]}, QuadNumber{s[0], -s[1]}}}};
}

GroupElement iota(const QuatAlgebra& alg, const QuatElement& x) {
  const Rational nrd = quat_norm_trace(alg, x).nrd;
  if (nrd <= 0) throw DomainError("iota: reduced norm must be positive");
  const auto s = standard_double(alg, x);
  const double ra = std::sqrt(static_cast<double>(alg.a));
  const double sc = 1.0 / std::sqrt(static_cast<double>(nrd));
  return {(s[0] + s[1] * ra) * sc, (s[2] + s[3] * ra) * sc, static_cast<double>(alg.b) * (s[2] - s[3] * ra) * sc,
          (s[0] - s[1] * ra) * sc};
}

QuatElement projective_canonical(const QuatElement& x) {
  for (long long v : x) {
    if (v > 0) return x;
    if (v < 0) return {-x[0], -x[1], -x[2], -x[3]};
  }
  return x;
}

std::vector<QuatElement> enumerate_with_bound(const QuatAlgebra& alg, long long n, double entry_bound,
                                              const std::function<bool(const GroupElement&)>& keep,
                                              std::size_t budget) {
  if (!(entry_bound >= 0.0)) throw DomainError("enumerate_with_bound: entry bound must be nonnegative");
  const auto box = order_box(alg, standard_bounds(alg, entry_bound));
  return scan(alg, n, {box[0], box[1], box[2]}, [&](const QuatElement& e) {
    return keep(normalized_image(alg, standard_double(alg, e), n));
  }, budget);
}

std::array<long long, 4> enumeration_box(const QuatAlgebra& alg, long long n, const GroupElement& g0, double radius) {
  const double op = g0.operator_norm();
  const double bound = std::sqrt(static_cast<double>(n)) * op * op * std::exp(radius / std::sqrt(2.0));
  return order_box(alg, standard_bounds(alg, bound));
}

std::vector<QuatElement> enumerate_norm_n(const QuatAlgebra& alg, long long n, const GroupElement& g0, double radius,
                                          std::size_t budget) {
  if (n < 1) throw DomainError("enumerate_norm_n: n must be >= 1");
  if (!(radius >= 0.0 && radius <= 2.0)) throw DomainError("enumerate_norm_n: radius must lie in [0, 2]");
  const GroupElement gi = g0.inverse();
  const double op = g0.operator_norm();
  const double bound = std::sqrt(static_cast<double>(n)) * op * op * std::exp(radius / std::sqrt(2.0));
  return enumerate_with_bound(alg, n, bound, [&](const GroupElement& h) {
    return geometry::dist_to_identity(gi * h * g0).value <= radius;
  }, budget);
}

std::vector<QuatElement> enumerate_coefficient_box(const QuatAlgebra& alg, long long n, long long half_width,
                                                   std::size_t budget) {
  if (half_width < 0) throw DomainError("enumerate_coefficient_box: half width must be >= 0");
  return scan(alg, n, {half_width, half_width, half_width}, [](const QuatElement&) { return true; }, budget);
}

bool same_coset(const QuatAlgebra& alg, long long n, const QuatElement& x, const QuatElement& y) {
  auto xs = standard_coordinates(alg, x);
  for (int i = 1; i < 4; ++i) xs[i] = -xs[i];
  const auto prod = std_mul(alg.a, alg.b, standard_coordinates(alg, y), xs);
  const QuatElement c = from_standard(alg, prod);
  return std::all_of(c.begin(), c.end(), [n](long long v) { return v % n == 0; });
}

long long expected_coset_count(const QuatAlgebra& alg, long long n) {
  if (n < 1) throw DomainError("expected_coset_count: n must be >= 1");
  BigInt det = 1;
  {
    // Only the prime support of det(basis) matters here.
    Rational d = 1;
    RatMatrix m{};
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) m[i][j] = alg.basis[i][j];
    }
    for (int col = 0; col < 4; ++col) {
      int piv = col;
      while (piv < 4 && m[piv][col] == 0) ++piv;
      if (piv != col) {
        std::swap(m[piv], m[col]);
        d = -d;
      }
      d *= m[col][col];
      for (int r = col + 1; r < 4; ++r) {
        const Rational f = m[r][col] / m[col][col];
        for (int j = col; j < 4; ++j) m[r][j] -= f * m[col][j];
      }
    }
    det = numerator(d);
  }
  const long long bad = 2 * alg.a * (alg.b < 0 ? -alg.b : alg.b) * alg.denominator;
  std::vector<long long> primes = prime_factors(bad);
  for (long long p : prime_factors(to_ll(boost::multiprecision::abs(det)))) primes.push_back(p);
  for (long long p : primes) {
    if (n % p == 0) return 0;
  }
  long long sigma = 0;
  for (long long d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      sigma += d;
      if (d * d != n) sigma += n / d;
    }
  }
  return sigma;
}

CosetResult coset_reps(const QuatAlgebra& alg, long long n, long long max_half_width) {
  if (n < 1) throw DomainError("coset_reps: n must be >= 1");
  CosetResult out;
  out.expected = expected_coset_count(alg, n);
  for (long long L = 2;; L = std::min(max_half_width, 2 * L)) {
    auto cands = enumerate_coefficient_box(alg, n, L);
    std::stable_sort(cands.begin(), cands.end(), [](const QuatElement& x, const QuatElement& y) {
      auto size = [](const QuatElement& e) {
        return std::abs(e[0]) + std::abs(e[1]) + std::abs(e[2]) + std::abs(e[3]);
      };
      return size(x) < size(y);
    });
    std::vector<QuatElement> reps;
    for (const auto& c : cands) {
      const bool fresh = std::none_of(reps.begin(), reps.end(), [&](const QuatElement& r) {
        return same_coset(alg, n, r, c);
      });
      if (fresh) reps.push_back(c);
      if (out.expected > 0 && static_cast<long long>(reps.size()) == out.expected) break;
    }
    out.reps = std::move(reps);
    out.half_width = L;
    out.certified = out.expected > 0 && static_cast<long long>(out.reps.size()) == out.expected;
    if (out.certified || L >= max_half_width) break;
  }
  return out;
}

long long hecke_returns(const QuatAlgebra& alg, const GroupElement& g, long long n, double kappa) {
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw DomainError("hecke_returns: kappa must lie in [0, 1]");
  const GroupElement gi = g.inverse();
  // Resolution of the 1-D minimization in dist_to_diag.
  constexpr double kSlack = 1e-9;
  long long count = 0;
  for (const auto& e : enumerate_norm_n(alg, n, g, 1.0)) {
    const GroupElement h = gi * iota(alg, e) * g;
    if (geometry::dist_to_diag(h).value <= kappa + kSlack) ++count;
  }
  return count;
}

bool anisotropy_screen(const QuatAlgebra& alg, long long half_width) {
  const i128 a = alg.a, b = alg.b;
  for (long long x0 = -half_width; x0 <= half_width; ++x0) {
    for (long long x1 = -half_width; x1 <= half_width; ++x1) {
      for (long long x2 = -half_width; x2 <= half_width; ++x2) {
        const i128 num = -static_cast<i128>(x0) * x0 + a * x1 * x1 + b * x2 * x2;
        if (num % (a * b) != 0) continue;
        const i128 sq = num / (a * b);
        const i128 r = isqrt(sq);
        if (r < 0 || r * r != sq || r > half_width) continue;
        if (x0 != 0 || x1 != 0 || x2 != 0 || r != 0) return false;
      }
    }
  }
  return true;
}

double Amplifier::l1() const {
  double s = 0.0;
  for (const auto& [n, a] : alpha) s += std::abs(a);
  return s;
}

double Amplifier::l2_squared() const {
  double s = 0.0;
  for (const auto& [n, a] : alpha) s += a * a;
  return s;
}

double Amplifier::functional(const EigenvalueMap& eig) const {
  double s = 0.0;
  for (long long p : primes) {
    const auto it = eig.find(p);
    if (it == eig.end()) throw DomainError("amplifier: missing eigenvalues for prime " + std::to_string(p));
    if (auto a = alpha.find(p); a != alpha.end()) s += a->second * it->second.lp;
    if (auto a = alpha.find(p * p); a != alpha.end()) s += a->second * it->second.lp2;
  }
  return s;
}

std::vector<long long> amplifier_primes(long long N, long long q) {
  if (N < 1) throw DomainError("amplifier: N must be >= 1");
  if (q < 1) throw DomainError("amplifier: q must be >= 1");
  auto r = static_cast<long long>(std::floor(std::sqrt(static_cast<double>(N))));
  while (r * r > N) --r;
  while ((r + 1) * (r + 1) <= N) ++r;
  std::vector<char> sieve(static_cast<std::size_t>(r + 1), 1);
  std::vector<long long> out;
  for (long long p = 2; p <= r; ++p) {
    if (!sieve[static_cast<std::size_t>(p)]) continue;
    for (long long m = p * p; m <= r; m += p) sieve[static_cast<std::size_t>(m)] = 0;
    if (std::gcd(p, q) == 1) out.push_back(p);
  }
  return out;
}

Amplifier build_amplifier(long long N, const EigenvalueMap& eig, long long q) {
  Amplifier amp;
  amp.N = N;
  amp.q = q;
  amp.primes = amplifier_primes(N, q);
  for (long long p : amp.primes) {
    const auto it = eig.find(p);
    if (it == eig.end()) throw DomainError("amplifier: missing eigenvalues for prime " + std::to_string(p));
    const auto [lp, lp2] = it->second;
    if (!(std::abs(lp * lp - lp2 - 1.0) <= 1e-9)) {
      throw DomainError("amplifier: Hecke relation lambda(p)^2 - lambda(p^2) = 1 fails at p = " + std::to_string(p));
    }
    if (std::abs(lp) >= 0.5) {
      amp.alpha[p] = lp > 0.0 ? 1.0 : -1.0;
    } else {
      amp.alpha[p * p] = lp2 > 0.0 ? 1.0 : -1.0;
    }
  }
  return amp;
}

EigenvalueMap random_eigenvalues(const std::vector<long long>& primes, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  EigenvalueMap out;
  for (long long p : primes) {
    const double lp = dist(rng);
    out[p] = {lp, lp * lp - 1.0};
  }
  return out;
}

}  // namespace frl::hecke
