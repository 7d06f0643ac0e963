#pragma once

#include <array>
#include <boost/rational.hpp>
#include <cstdint>
#include <vector>

#include "frl/measures.hpp"
#include "frl/numerics.hpp"

namespace frl::modes {

using Vec3 = std::array<double, 3>;

enum class Surface { sphere, torus };
enum class ModeKind { zonal, highest_weight, harmonic, plane_wave_sum };

struct ModeSpec {
  Surface surface = Surface::sphere;
  ModeKind kind = ModeKind::zonal;
  int degree = 0;                              // sphere: l
  int order = 0;                               // sphere harmonic: m (zonal 0, highest weight l)
  std::vector<std::array<int, 2>> frequencies;  // torus: lattice vectors of equal length
};

inline constexpr int kMaxDegree = 1000;

/// L^2-normalized Laplace eigenfunction on the unit sphere (area 4 pi) or the torus [0, 2pi]^2.
class Mode {
 public:
  explicit Mode(const ModeSpec& spec);

  const ModeSpec& spec() const { return spec_; }
  /// Spectral parameter: sqrt(l(l+1)) on the sphere, |k| on the torus.
  double lambda() const { return lambda_; }

  /// Sphere: (theta, phi) polar/azimuth. Torus: (x, y).
  cplx operator()(double u, double v) const;
  /// Sphere point given as a unit vector (sphere only).
  cplx at(const Vec3& p) const;

  /// |e|^2 depends only on the polar angle (single spherical harmonic).
  bool axially_symmetric() const { return spec_.surface == Surface::sphere; }
  /// |e(theta, .)|^2 for axially symmetric modes (exact recurrence).
  double modulus_squared_polar(double theta) const;

  /// Upper bound for sup |e| (sqrt((2l+1)/4pi) on the sphere, sqrt(K)/(2pi) on the torus).
  double sup_bound() const;

 private:
  double legendre_normalized(double theta) const;  // P-bar_l^m(cos theta), includes 1/sqrt(2pi)

  ModeSpec spec_;
  double lambda_ = 0.0;
};

Mode make_mode(const ModeSpec& spec);

/// L^2 norm squared over the surface by exact-degree quadrature.
double l2_norm_squared(const Mode& m);

/// max |(Delta + lambda^2) e| / (lambda^2 sup|e|) over `points` random points (fourth-order differences).
double eigen_residual(const Mode& m, std::size_t points, std::uint64_t seed);

/// Unit-speed geodesic on the model surface; s is arclength.
struct SurfaceGeodesic {
  Surface surface = Surface::sphere;
  Vec3 origin{1.0, 0.0, 0.0};   // sphere: unit vector; torus: (x, y, 0)
  Vec3 tangent{0.0, 1.0, 0.0};  // sphere: unit vector orthogonal to origin; torus: (cos, sin, 0)

  Vec3 point(double s) const;
  cplx eval(const Mode& m, double s) const;
};

SurfaceGeodesic equator(double phi0 = 0.0);
/// Great circle through the poles, starting on the equator at azimuth phi0 and heading north.
SurfaceGeodesic meridian(double phi0 = 0.0);
SurfaceGeodesic torus_line(double x0, double y0, double angle);

/// (sum_i nu_i |e(ell(s_i))|^2)^{1/2}, atoms of nu taken as arclength parameters in [0, 1].
double restriction_norm(const Mode& m, const SurfaceGeodesic& ell, const measures::FractalMeasure& nu);

/// (int_0^length |e(ell(s))|^2 ds)^{1/2} by composite Gauss-Legendre.
double geodesic_l2(const Mode& m, const SurfaceGeodesic& ell, double length = 1.0);

struct KNOptions {
  double width_factor = 1.0;    // tube half-width = width_factor * lambda^{-1/2}
  double spacing_factor = 0.25;  // search spacing = spacing_factor * lambda^{-1/2}
  std::size_t budget = std::size_t{1} << 24;  // integrand evaluations
};

struct KNReport {
  double lambda = 0.0;
  double half_width = 0.0;
  double s_kn = 0.0;
  Vec3 axis{0.0, 0.0, 1.0};  // sphere: axis of the maximizing great circle
  double x0 = 0.0, y0 = 0.0, angle = 0.0;  // torus: maximizing unit segment
  double resolution = 0.0;
  std::size_t candidates = 0;
};

/// Mass of |e|^2 in the half_width tube around the great circle with the given axis (sphere).
double sphere_tube_mass(const Mode& m, const Vec3& axis, double half_width);
/// Mass of |e|^2 in the half_width tube around a unit segment (torus).
double torus_tube_mass(const Mode& m, double x0, double y0, double angle, double half_width);

/// s_KN = sup over tubes of half-width lambda^{-1/2}: full great circles (sphere) or unit segments (torus).
KNReport kn_norm(const Mode& m, const KNOptions& opts = {});

struct Theorem3Row {
  int degree = 0;
  double lambda = 0.0;
  double lhs = 0.0;
  double skn = 0.0;
  double bound = 0.0;  // lambda^{1/4} skn^{alpha - 1/2} (times log lambda at alpha = 1)
  double ratio = 0.0;
};
struct Theorem3Table {
  std::vector<Theorem3Row> rows;
  double spread = 0.0;  // max ratio / min ratio
};
/// alpha in (1/2, 1]; at alpha = 1 the bound carries the log factor.
Theorem3Table theorem3_check(ModeKind kind, const std::vector<int>& degrees, const measures::FractalMeasure& nu,
                             double alpha, const SurfaceGeodesic& ell, const KNOptions& opts = {});

// Littlewood-Paley and dyadic kernel checks.

/// chi = 1 on [0, 1.05], 0 on [1.9, inf); beta(tau) = chi(tau) - chi(2 tau), supported in (1/2, 2).
double lp_chi(double tau);
double lp_beta(double tau);
/// max over tau in [lambda^{-1/2}, 1] of |sum_j beta(2^{-j} tau) - 1|, j from -64 to 8.
double partition_of_unity_error(double lambda, std::size_t samples = 2001);

enum class DyadicSurface { flat, sphere };

struct DyadicSample {
  double separation = 0.0;  // |s - s'|
  double scaled = 0.0;      // 2^{2k} lambda |s - s'|
  double value = 0.0;       // |inner y-integral|
  double ratio = 0.0;       // value / (2^k (1 + scaled)^{-2})
  bool degenerate = false;
};
struct DyadicReport {
  double lambda = 0.0;
  double scale = 0.0;  // 2^k
  std::vector<DyadicSample> samples;
  double sup_ratio = 0.0;
  double slope = 0.0;  // d log value / d log scaled over the oscillatory samples (scaled >= 4)
  bool flagged = false;
  double weight_ratio = 0.0;  // sup_s' int 2^k (1 + 2^{2k} lambda |s - s'|)^{-2} w(s) ds / (2^k lambda^{-alpha} 2^{-2 alpha k})
};
/// Inner oscillatory integral int e^{i lambda (d(l(s), y) - d(l(s'), y))} a a-bar beta_k(y2)^2 dy in
/// Fermi coordinates, at s = 0 and s' = separation. w (optional) drives weight_ratio with exponent alpha.
DyadicReport dyadic_kernel_check(DyadicSurface surface, double lambda, double scale,
                                 const std::vector<double>& separations, const measures::WeightFunction* w = nullptr,
                                 double alpha = 1.0);

// Exponent tables.

using ExactRational = boost::rational<long long>;

double gamma_exponent(double alpha);
double delta_exponent(double alpha);  // NaN for alpha <= 1/2
double marshall_exponent(double alpha);
ExactRational gamma_exact(ExactRational alpha);
ExactRational delta_exact(ExactRational alpha);
ExactRational marshall_exact(ExactRational alpha);

struct ExponentRow {
  double alpha = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
  double marshall = 0.0;
};
/// alpha grid within (0, 2]; empty grid selects i/50 for i = 1..100.
std::vector<ExponentRow> exponent_table(std::vector<double> alpha_grid = {});

/// Least-squares slope of log value against log lambda (>= 3 points, distinct lambdas).
LineFit fit_exponent(const std::vector<double>& lambdas, const std::vector<double>& values);

}  // namespace frl::modes
