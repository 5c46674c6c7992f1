#pragma once

// Oriented geodesics of M_k, kept in a canonical (base, dir) form:
//
//   kappa =  0 : base is the foot of the perpendicular from the origin,
//   kappa = -1 : base is the point closest to e0,
//   kappa =  1 : base maximizes x0 on the circle (ties: x1, then x2, x3).
//
// For kappa = 1 the base point is only a convenience; equality of circles is
// decided on their images in S^2 x S^2 (see quatsphere.hpp).

#include "helico/spaceform.hpp"

#include <optional>

namespace helico {

inline constexpr double kLineEqualTol = 1e-7;

class OrientedGeodesic {
 public:
  // The geodesic through v.base() with unit direction v, canonicalized.
  static OrientedGeodesic from_point_direction(const TangentVector& v);
  static OrientedGeodesic from_point_direction(const SpacePoint& p, const Vec4& v);
  // kappa = 0 convenience: line through p with direction v (v is normalized).
  static OrientedGeodesic euclidean(const Vec3& p, const Vec3& v);
  // [s -> cos_k s e0 + sin_k s e1].
  static OrientedGeodesic standard(Curvature k);

  Curvature kappa() const { return base_.kappa(); }
  const SpacePoint& base() const { return base_; }
  const TangentVector& dir() const { return dir_; }

  SpacePoint point(double s) const { return geodesic_point(dir_, s); }
  TangentVector velocity(double s) const { return geodesic_velocity(dir_, s); }

  // Arclength coordinate of p measured from base(). Throws InvalidInput when
  // p is farther than tol from the geodesic.
  double parameter_of(const SpacePoint& p, double tol = kValidateTol) const;
  // Unit velocity of the geodesic at p (p must lie on it).
  TangentVector direction_at(const SpacePoint& p, double tol = kValidateTol) const;

  OrientedGeodesic reversed() const;

 private:
  OrientedGeodesic(const SpacePoint& b, const TangentVector& d) : base_(b), dir_(d) {}

  SpacePoint base_;
  TangentVector dir_;
};

inline OrientedGeodesic reverse(const OrientedGeodesic& l) { return l.reversed(); }

// Distance in canonical coordinates: sqrt(|d base|^2 + |d dir|^2) using the
// 4-vector coordinates for kappa = 0, -1 and the S^2 x S^2 coordinates for
// kappa = 1.
double canonical_distance(const OrientedGeodesic& a, const OrientedGeodesic& b);
bool geodesics_equal(const OrientedGeodesic& a, const OrientedGeodesic& b,
                     double tol = kLineEqualTol);

OrientedGeodesic act_on_geodesic(const Isometry& g, const OrientedGeodesic& l);

struct CommonPerpendicular {
  double distance = 0.0;
  bool parallel = false;
  // Feet on the first and second line. For (anti)parallel lines the first
  // foot is the base of the first line.
  SpacePoint foot1 = SpacePoint::origin(Curvature::Flat);
  SpacePoint foot2 = SpacePoint::origin(Curvature::Flat);
};

// kappa = 0 only; throws Unsupported otherwise.
CommonPerpendicular common_perpendicular_euclidean(const OrientedGeodesic& l1,
                                                   const OrientedGeodesic& l2);

// Initial data of an alpha-helicoidal motion: the ray `line`, a point p on
// it, a unit axis A at p orthogonal to the ray, and the angular speed alpha.
class HelicoidalFrame {
 public:
  HelicoidalFrame(const OrientedGeodesic& line, const SpacePoint& p, const TangentVector& axis,
                  double alpha, double tol = kValidateTol);

  // (l_o, e0, e3, alpha).
  static HelicoidalFrame standard(Curvature k, double alpha);

  Curvature kappa() const { return line_.kappa(); }
  const OrientedGeodesic& line() const { return line_; }
  const SpacePoint& p() const { return p_; }
  const TangentVector& axis() const { return axis_; }
  double alpha() const { return alpha_; }
  // Direction of the ray at p.
  const TangentVector& ray() const { return ray_; }

  // Isometry carrying the standard frame onto this one.
  Isometry placement() const;

 private:
  OrientedGeodesic line_;
  SpacePoint p_;
  TangentVector axis_;
  TangentVector ray_;
  double alpha_;
};

// The frame (g l, g p, dg A, alpha); helicoidal motions are equivariant under
// this action.
HelicoidalFrame act_on_frame(const Isometry& g, const HelicoidalFrame& f);

// phi(s, t) = gamma_{cos(alpha t) V_t + sin(alpha t) B_t}(s), where V_t and
// B_t are the parallel translates along gamma_A of the ray direction and of
// B = A x ray, evaluated by explicit transport.
SpacePoint helicoid_point(const HelicoidalFrame& f, double s, double t);

// The ray at time t, computed as g S_t l_o with g = f.placement().
OrientedGeodesic helicoidal_curve(const HelicoidalFrame& f, double t);

struct NormalizedPair {
  Isometry g = Isometry::identity(Curvature::Flat);
  double d = 0.0;
  Vec3 v = Vec3::UnitX();
};

// kappa = 0: rigid motion g with g l2 = x-axis and g l1 = [s -> d e2 + s v],
// d >= 0, v orthogonal to e2.
NormalizedPair normalize_pair(const OrientedGeodesic& l1, const OrientedGeodesic& l2);

}  // namespace helico
