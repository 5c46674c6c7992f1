#pragma once

// Riemannian primitives of the three-dimensional space forms, all embedded in
// R^4 with coordinates (x0, x1, x2, x3):
//
//   kappa =  0 : R^3 identified with the affine hyperplane x0 = 1,
//   kappa =  1 : the unit sphere S^3 = { <x,x>_1 = 1 },
//   kappa = -1 : hyperbolic space H^3 = { <x,x>_{-1} = -1, x0 > 0 },
//
// where <x,y>_k = k x0 y0 + x1 y1 + x2 y2 + x3 y3. Isometries act as 4x4
// matrices, so one code path serves all three curvatures.

#include <Eigen/Dense>

#include <string>

namespace helico {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

inline constexpr double kValidateTol = 1e-9;
inline constexpr double kExactTol = 1e-12;
// cosh/sinh arguments beyond this are rejected for kappa = -1.
inline constexpr double kMaxHyperbolicArg = 700.0;

enum class Curvature : int { Hyperbolic = -1, Flat = 0, Spherical = 1 };

constexpr int value(Curvature k) { return static_cast<int>(k); }
Curvature curvature_from_int(int k);
std::string to_string(Curvature k);

double metric_inner(Curvature k, const Vec4& x, const Vec4& y);
double metric_norm(Curvature k, const Vec4& v);

struct SinCos {
  double sin;
  double cos;
};

// (sin_k r, cos_k r): (sin, cos) for k = 1, (r, 1) for k = 0, (sinh, cosh)
// for k = -1.
SinCos sin_cos_kappa(Curvature k, double r);

// 2x2 block R_k(t) = [[cos_k t, -k sin_k t], [sin_k t, cos_k t]].
Mat2 rotation_kappa(Curvature k, double t);

class SpacePoint {
 public:
  // Throws InvalidInput when x is off M_k by more than tol.
  SpacePoint(Curvature k, const Vec4& x, double tol = kValidateTol);

  static SpacePoint origin(Curvature k);
  // Re-projects x onto M_k before validating.
  static SpacePoint projected(Curvature k, const Vec4& x);
  // Embeds a point of R^3 as (1, p).
  static SpacePoint euclidean(const Vec3& p);

  Curvature kappa() const { return kappa_; }
  const Vec4& coords() const { return x_; }
  Vec3 spatial() const { return x_.tail<3>(); }

 private:
  Curvature kappa_;
  Vec4 x_;
};

class TangentVector {
 public:
  TangentVector(const SpacePoint& base, const Vec4& v, double tol = kValidateTol);

  // Gram-Schmidt of v against the base point, then validates.
  static TangentVector projected(const SpacePoint& base, const Vec4& v);
  static TangentVector euclidean(const SpacePoint& base, const Vec3& v);

  Curvature kappa() const { return base_.kappa(); }
  const SpacePoint& base() const { return base_; }
  const Vec4& vec() const { return v_; }
  Vec3 spatial() const { return v_.tail<3>(); }
  double norm() const { return metric_norm(kappa(), v_); }

 private:
  SpacePoint base_;
  Vec4 v_;
};

// Element of the identity component of Iso(M_k).
class Isometry {
 public:
  Isometry(Curvature k, const Mat4& m, double tol = kValidateTol);

  static Isometry identity(Curvature k);
  // kappa = 0 rigid motion x -> R x + a.
  static Isometry euclidean(const Mat3& rotation, const Vec3& translation);
  // The isometry with g(e0) = p, dg(e1) = v, dg(e2) = a x v, dg(e3) = a, for
  // orthonormal tangent vectors v, a at p. Every positively oriented
  // orthonormal frame is reached this way, and g carries the standard
  // helicoidal configuration (l_o, e0, e3) to (l, p, a).
  static Isometry from_frame(const TangentVector& v, const TangentVector& a);

  Curvature kappa() const { return kappa_; }
  const Mat4& matrix() const { return m_; }

  Isometry inverse() const;
  Isometry operator*(const Isometry& other) const;

  SpacePoint apply(const SpacePoint& p) const;
  TangentVector apply(const TangentVector& v) const;

 private:
  Curvature kappa_;
  Mat4 m_;
};

// Checks the group membership conditions of an isometry matrix; returns the
// first violated condition or an empty string.
std::string isometry_violation(Curvature k, const Mat4& m, double tol);

// Point of the geodesic with unit initial velocity v at distance s.
SpacePoint geodesic_point(const TangentVector& v, double s);
// Velocity of that geodesic at s.
TangentVector geodesic_velocity(const TangentVector& v, double s);

// Parallel transport of w (based at v's base) along the geodesic of v to
// parameter s.
TangentVector parallel_transport(const TangentVector& v, const TangentVector& w,
                                 double s);

// Cross product on T_pM_k, bilinear in (u, v). On orthonormal input this is
// the unit w making {p, u, v, w} a positive orthonormal basis of
// (R^4, <,>_k); for kappa = 0 it is the ordinary cross product in R^3.
TangentVector cross(const TangentVector& u, const TangentVector& v);

// Block matrices of the Cartan decomposition g_k = k_k + p_k:
// Z(x, y) has lower-left block (x | y) in rows 2-3, columns 0-1, and
// upper-right block with rows -k x^T and -y^T.
class LieAlgebraElement {
 public:
  LieAlgebraElement(Curvature k, const Mat4& m) : kappa_(k), m_(m) {}

  // Z(x, y) from the lower-left block whose columns are x and y.
  static LieAlgebraElement from_block(Curvature k, const Mat2& lower_left);
  static LieAlgebraElement from_z(Curvature k, const Vec2& x, const Vec2& y);

  Curvature kappa() const { return kappa_; }
  const Mat4& matrix() const { return m_; }
  Mat2 lower_left() const { return m_.block<2, 2>(2, 0); }
  Vec2 x() const { return m_.block<2, 1>(2, 0); }
  Vec2 y() const { return m_.block<2, 1>(2, 1); }

  // True when the matrix has the Z(x, y) block structure of p_k.
  bool in_p(double tol = kValidateTol) const;

 private:
  Curvature kappa_;
  Mat4 m_;
};

// xi_alpha = Z((0,1)^T, (alpha,0)^T), the infinitesimal standard screw.
LieAlgebraElement xi_alpha(Curvature k, double alpha);

// S_t = exp(t xi_alpha): R_k(t) on coordinates (0, 3) and rotation by
// alpha t on coordinates (1, 2).
Isometry screw_exponential(Curvature k, double alpha, double t);

// Unit vector along e_i in T_{e0}M_k.
TangentVector basis_tangent(Curvature k, int i);

}  // namespace helico
