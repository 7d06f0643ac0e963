#include "frl/geometry.hpp"


#include <algorithm>
#include <cmath>

namespace frl::geometry {

GroupElement GroupElement::from_matrix(double a, double b, double c, double d) {
  const double det = a * d - b * c;
  if (!(det > 0.0) || !std::isfinite(det)) throw DomainError("GroupElement: determinant must be positive");
  const double s = 1.0 / std::sqrt(det);
  return {a * s, b * s, c * s, d * s};
}

GroupElement GroupElement::canonical() const {
  bool flip = false;
  if (trace() < 0.0) {
    flip = true;
  } else if (trace() == 0.0) {
    flip = a < 0.0 || (a == 0.0 && b < 0.0);
  }
  return flip ? GroupElement{-a, -b, -c, -d} : *this;
}

GroupElement GroupElement::renormalized() const { return from_matrix(a, b, c, d); }

double GroupElement::operator_norm() const {
  // Largest singular value of a 2x2 matrix.
  const double f = frobenius_squared();
  const double dt = det();
  const double disc = std::max(0.0, f * f - 4.0 * dt * dt);
  return std::sqrt(0.5 * (f + std::sqrt(disc)));
}

GroupElement operator*(const GroupElement& x, const GroupElement& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

GroupElement a_of(double y) { return {std::exp(0.5 * y), 0.0, 0.0, std::exp(-0.5 * y)}; }

GroupElement k_of(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {c, s, -s, c};
}

GroupElement n_of(double x) { return {1.0, x, 0.0, 1.0}; }

GroupElement rotation(double theta) { return k_of(0.5 * theta); }

Point act(const GroupElement& g, Point z) {
  if (!(z.imag() > 0.0)) throw DomainError("act: point must lie in the upper half plane");
  const Point den = g.c * z + g.d;
  if (std::abs(den) < 1e-300) throw DomainError("act: denominator underflow");
  const Point w = (g.a * z + g.b) / den;
  // Im(g z) = Im z / |cz + d|^2 exactly for det 1; avoids cancellation.
  return {w.real(), z.imag() / std::norm(den)};
}

double dist_hyp(Point z, Point w) {
  if (!(z.imag() > 0.0 && w.imag() > 0.0)) throw DomainError("dist_hyp: points must lie in the upper half plane");
  return 2.0 * std::asinh(std::abs(z - w) / (2.0 * std::sqrt(z.imag() * w.imag())));
}

double iwasawa_A(const GroupElement& g) { return -std::log(g.c * g.c + g.d * g.d); }

std::array<double, 3> log_coordinates(const GroupElement& g0) {
  const GroupElement g = g0.canonical();
  const double t = g.trace();
  const double half = 0.5 * t;
  // (t/2)^2 - 1 written to limit cancellation near the identity.
  const double q = 0.25 * (t - 2.0) * (t + 2.0);
  double factor = 1.0;
  if (q > 0.0) {
    const double sh = std::sqrt(q);
    const double theta = std::asinh(sh);
    factor = sh < 1e-8 ? 1.0 : theta / sh;
  } else if (q < 0.0) {
    const double sn = std::sqrt(-q);
    const double theta = half >= 0.0 ? std::asin(std::min(1.0, sn)) : kPi - std::asin(std::min(1.0, sn));
    factor = sn < 1e-8 ? 1.0 : theta / sn;
  }
  return {factor * 0.5 * (g.a - g.d), factor * g.b, factor * g.c};
}

double algebra_norm(const std::array<double, 3>& x) {
  return std::sqrt(4.0 * x[0] * x[0] + 2.0 * x[1] * x[1] + 2.0 * x[2] * x[2]);
}

IdentityDistance dist_to_identity(const GroupElement& g) {
  IdentityDistance out;
  out.value = algebra_norm(log_coordinates(g));
  const GroupElement c = g.canonical();
  const GroupElement diff{c.a - 1.0, c.b, c.c, c.d - 1.0};
  const double f = diff.frobenius_squared();
  const double dt = diff.det();
  const double op = std::sqrt(0.5 * (f + std::sqrt(std::max(0.0, f * f - 4.0 * dt * dt))));
  out.in_log_chart = op < 1.0;
  return out;
}

DiagDistance dist_to_diag(const GroupElement& g, double y_max) {
  if (!(y_max > 0.0)) throw DomainError("dist_to_diag: bracket half-width must be positive");
  auto objective = [&](double y) { return dist_to_identity(a_of(-y) * g).value; };
  constexpr int kScan = 64;
  const double dy = 2.0 * y_max / (kScan - 1);
  int best = 0;
  double best_val = objective(-y_max);
  for (int i = 1; i < kScan; ++i) {
    const double v = objective(-y_max + dy * i);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  const double lo = -y_max + dy * std::max(0, best - 1);
  const double hi = -y_max + dy * std::min(kScan - 1, best + 1);
  double a = lo, b = hi;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = objective(x1), f2 = objective(x2);
  while (b - a > 1e-10) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = objective(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = objective(x2);
    }
  }
  const double y = 0.5 * (a + b);
  const double val = objective(y);
  DiagDistance out;
  out.y = y;
  out.value = std::min(val, best_val);
  if (best_val < val) out.y = -y_max + dy * best;
  out.boundary = std::abs(std::abs(out.y) - y_max) < 1e-6 * y_max;
  return out;
}

Point Geodesic::point(double s) const { return act(g0 * a_of(s), Point{0.0, 1.0}); }

GeodesicDistance dist_to_geodesic(Point z, const Geodesic& ell) {
  const Point w = act(ell.g0.inverse(), z);
  return {std::asinh(std::abs(w.real()) / w.imag()), std::log(std::abs(w))};
}

double dist_to_segment(Point z, const Geodesic& ell) {
  const GeodesicDistance d = dist_to_geodesic(z, ell);
  if (d.foot >= 0.0 && d.foot <= ell.length) return d.distance;
  const double end = d.foot < 0.0 ? 0.0 : ell.length;
  return dist_hyp(z, ell.point(end));
}

}  // namespace frl::geometry
