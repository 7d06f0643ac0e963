#pragma once

#include <array>

#include "frl/numerics.hpp"

namespace frl::geometry {

/// Points of the upper half plane.
using Point = cplx;

/// Element of PSL(2,R) stored as [[a, b], [c, d]] with ad - bc = 1.
struct GroupElement {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  static GroupElement identity() { return {}; }
  /// Scales an arbitrary matrix with positive determinant to determinant 1.
  static GroupElement from_matrix(double a, double b, double c, double d);

  double det() const { return a * d - b * c; }
  double trace() const { return a + d; }
  GroupElement inverse() const { return {d, -b, -c, a}; }
  /// Canonical projective sign: trace >= 0, ties broken by a >= 0 (then b >= 0).
  GroupElement canonical() const;
  /// Restores det = 1 after accumulated rounding.
  GroupElement renormalized() const;
  double frobenius_squared() const { return a * a + b * b + c * c + d * d; }
  double operator_norm() const;
};

GroupElement operator*(const GroupElement& x, const GroupElement& y);

/// a(y) = diag(e^{y/2}, e^{-y/2}); a(y).i = e^y i.
GroupElement a_of(double y);
/// k_theta = [[cos, sin], [-sin, cos]]; fixes i, acts on the unit tangent circle with angle 2 theta.
GroupElement k_of(double theta);
/// n(x) = [[1, x], [0, 1]].
GroupElement n_of(double x);
/// Rotation about i by angle theta in the metric on G: k_{theta/2}.
GroupElement rotation(double theta);

Point act(const GroupElement& g, Point z);
double dist_hyp(Point z, Point w);

/// A(g) with g in N a(A(g)) K; equals ln Im(g.i).
double iwasawa_A(const GroupElement& g);

/// Lie algebra coordinates of log g: X = [[x1, x2], [x3, -x1]] (principal branch after the sign
/// normalization trace >= 0).
std::array<double, 3> log_coordinates(const GroupElement& g);

/// Norm on the Lie algebra, sqrt(4 x1^2 + 2 x2^2 + 2 x3^2); d(a(y), e) = |y|.
double algebra_norm(const std::array<double, 3>& x);

struct IdentityDistance {
  double value = 0.0;
  bool in_log_chart = true;  // ||g - I||_op < 1
};
/// ||log g|| in the algebra norm.
IdentityDistance dist_to_identity(const GroupElement& g);

struct DiagDistance {
  double value = 0.0;
  double y = 0.0;         // minimizing parameter
  bool boundary = false;  // minimizer sits at the edge of [-Y, Y]
};
/// inf over |y| <= y_max of d(a(-y) g, e).
DiagDistance dist_to_diag(const GroupElement& g, double y_max = 10.0);

/// Unit-speed geodesic s -> g0 a(s) . i for s in [0, length].
struct Geodesic {
  GroupElement g0;
  double length = 1.0;
  Point point(double s) const;
};

struct GeodesicDistance {
  double distance = 0.0;
  double foot = 0.0;  // nearest parameter on the full line
};
GeodesicDistance dist_to_geodesic(Point z, const Geodesic& ell);

/// Distance from z to the segment s in [0, length].
double dist_to_segment(Point z, const Geodesic& ell);

struct Tube {
  Geodesic geodesic;
  double half_width = 0.0;
  bool contains(Point z) const { return dist_to_segment(z, geodesic) <= half_width; }
};

}  // namespace frl::geometry
