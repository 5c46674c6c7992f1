#pragma once

// S^3 as the unit quaternions, with R^4 coordinates (x0, x1, x2, x3) read as
// x0 + x1 i + x2 j + x3 k. Oriented great circles are identified with
// S^2 x S^2 through Phi((a, b) . c_o) = (a i a^-1, b i b^-1), where
// c_o = [s -> e^{is}] and (a, b) acts by q -> a q b^-1.

#include "helico/lines.hpp"

#include <Eigen/Geometry>

#include <string>
#include <vector>

namespace helico {

using Quaternion = Eigen::Quaterniond;

Quaternion quat_from_vec4(const Vec4& x);
Vec4 vec4_from_quat(const Quaternion& q);
Quaternion pure_quat(const Vec3& v);
// Throws InvalidInput for a zero quaternion.
Quaternion quat_inverse(const Quaternion& q);
// exp(v) for an imaginary v: cos|v| + sin|v| v/|v|.
Quaternion quat_exp(const Vec3& v);

// f(p)(x) = p x conj(p).
Vec3 rot3(const Quaternion& p, const Vec3& x);
// F(p, q)(y) = p y conj(q).
Quaternion rot4(const Quaternion& p, const Quaternion& q, const Quaternion& y);
// 4x4 matrix of F(p, q) in the coordinates above.
Mat4 rot4_matrix(const Quaternion& p, const Quaternion& q);

// q -> e^{beta k/2} q e^{-beta k/2}: rotates the i-j plane by beta.
Isometry sphere_rotation(double beta);
// q -> e^{tau k/2} q e^{tau k/2}: transvection along t -> e^{tk}.
Isometry sphere_transvection(double tau);

struct SphereCirclePoint {
  Vec3 x;
  Vec3 y;
};

double sphere_point_distance(const SphereCirclePoint& a, const SphereCirclePoint& b);

// kappa = 1 only. With p a point of the circle and v its velocity there,
// writing the circle as s -> a e^{is} conj(b) gives a conj(b) = p and
// a i conj(b) = v, so x = a i conj(a) = v conj(p) and y = b i conj(b) =
// conj(p) v without ever solving for a, b.
SphereCirclePoint phi_map(const OrientedGeodesic& l);

// Circle [s -> a e^{is} conj(b)] for lifts a i conj(a) = x, b i conj(b) = y.
OrientedGeodesic phi_inverse(const SphereCirclePoint& xy);

// A unit quaternion a with a i conj(a) = x (x unit imaginary); a = j for
// x = -i.
Quaternion lift_to_i(const Vec3& x);

// Phi of the standard alpha-helicoidal curve at time t:
// (R_{t(1+alpha)}(i), R_{t(alpha-1)}(i)). The second factor turns against the
// first: its velocity at t = 0 is ((1+alpha) j, (alpha-1) j).
SphereCirclePoint gamma_sphere(double alpha, double t);

// Fiber of the alpha-admissible cone over `at`: vel = ((1+alpha) z,
// (1-alpha) w) with unit z, w orthogonal to x, y. Throws InvalidInput if vel
// is not tangent to S^2 x S^2 at `at`.
bool fiber_membership_sphere(double alpha, const SphereCirclePoint& at,
                             const SphereCirclePoint& vel, double tol = 1e-9);

enum class HopfKind { Both, Left, Right, None };

std::string to_string(HopfKind kind);

struct HopfClassification {
  HopfKind kind = HopfKind::None;
  // Constant factor: for Left the first Phi component, for Right the second.
  // For Both, `z` is the first and `z_right` the second.
  Vec3 z = Vec3::Zero();
  Vec3 z_right = Vec3::Zero();
  double left_spread = 0.0;
  double right_spread = 0.0;
};

// Left: Phi(A) lies in {z} x S^2; Right: Phi(A) lies in S^2 x {z}. A factor
// counts as constant when its max deviation from the normalized mean stays
// below tol.
HopfClassification hopf_classify(const std::vector<OrientedGeodesic>& circles,
                                 double tol = 1e-6);

}  // namespace helico
