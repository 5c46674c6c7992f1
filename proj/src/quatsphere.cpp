#include "helico/quatsphere.hpp"

#include "helico/errors.hpp"

#include <cmath>

namespace helico {

Quaternion quat_from_vec4(const Vec4& x) { return Quaternion(x[0], x[1], x[2], x[3]); }

Vec4 vec4_from_quat(const Quaternion& q) { return Vec4(q.w(), q.x(), q.y(), q.z()); }

Quaternion pure_quat(const Vec3& v) { return Quaternion(0.0, v[0], v[1], v[2]); }

Quaternion quat_inverse(const Quaternion& q) {
  const double n2 = q.squaredNorm();
  if (!(n2 > 0.0)) throw InvalidInput("inverse of the zero quaternion");
  Quaternion c = q.conjugate();
  c.coeffs() /= n2;
  return c;
}

Quaternion quat_exp(const Vec3& v) {
  const double a = v.norm();
  if (a == 0.0) return Quaternion::Identity();
  const Vec3 u = std::sin(a) / a * v;
  return Quaternion(std::cos(a), u[0], u[1], u[2]);
}

Vec3 rot3(const Quaternion& p, const Vec3& x) {
  return (p * pure_quat(x) * p.conjugate()).vec();
}

Quaternion rot4(const Quaternion& p, const Quaternion& q, const Quaternion& y) {
  return p * y * q.conjugate();
}

Mat4 rot4_matrix(const Quaternion& p, const Quaternion& q) {
  Mat4 m;
  for (int c = 0; c < 4; ++c) m.col(c) = vec4_from_quat(rot4(p, q, quat_from_vec4(Vec4::Unit(c))));
  return m;
}

Isometry sphere_rotation(double beta) {
  const Quaternion h = quat_exp(Vec3(0.0, 0.0, beta / 2.0));
  return Isometry(Curvature::Spherical, rot4_matrix(h, h));
}

Isometry sphere_transvection(double tau) {
  const Quaternion h = quat_exp(Vec3(0.0, 0.0, tau / 2.0));
  return Isometry(Curvature::Spherical, rot4_matrix(h, h.conjugate()));
}

double sphere_point_distance(const SphereCirclePoint& a, const SphereCirclePoint& b) {
  return std::sqrt((a.x - b.x).squaredNorm() + (a.y - b.y).squaredNorm());
}

SphereCirclePoint phi_map(const OrientedGeodesic& l) {
  if (l.kappa() != Curvature::Spherical) throw Unsupported("phi_map requires kappa = 1");
  const Quaternion p = quat_from_vec4(l.base().coords());
  const Quaternion v = quat_from_vec4(l.dir().vec());
  return {(v * p.conjugate()).vec(), (p.conjugate() * v).vec()};
}

Quaternion lift_to_i(const Vec3& x) {
  const Quaternion xq = pure_quat(x);
  const Quaternion i(0.0, 1.0, 0.0, 0.0);
  if (x[0] >= 0.0) {
    // Half-angle rotation carrying i to x.
    Quaternion a = Quaternion::Identity();
    a.coeffs() -= (xq * i).coeffs();
    return a.normalized();
  }
  // Near x = -i, carry -i to x instead and precompose with j (j i j^-1 = -i).
  Quaternion b = Quaternion::Identity();
  b.coeffs() += (xq * i).coeffs();
  return b.normalized() * Quaternion(0.0, 0.0, 1.0, 0.0);
}

OrientedGeodesic phi_inverse(const SphereCirclePoint& xy) {
  for (const Vec3* v : {&xy.x, &xy.y}) {
    if (std::abs(v->norm() - 1.0) > kValidateTol) {
      throw InvalidInput("phi_inverse expects unit imaginary quaternions");
    }
  }
  const Quaternion a = lift_to_i(xy.x.normalized());
  const Quaternion b = lift_to_i(xy.y.normalized());
  const Quaternion i(0.0, 1.0, 0.0, 0.0);
  const SpacePoint p = SpacePoint::projected(Curvature::Spherical, vec4_from_quat(a * b.conjugate()));
  return OrientedGeodesic::from_point_direction(
      TangentVector::projected(p, vec4_from_quat(a * i * b.conjugate())));
}

SphereCirclePoint gamma_sphere(double alpha, double t) {
  const double b1 = t * (1.0 + alpha);
  // T_t R_{alpha t} c_o = (p, q) c_o with p = e^{(1+alpha)tk/2} and
  // q = e^{(alpha-1)tk/2}, because T_t multiplies by e^{tk/2} on both sides.
  const double b2 = t * (alpha - 1.0);
  return {Vec3(std::cos(b1), std::sin(b1), 0.0), Vec3(std::cos(b2), std::sin(b2), 0.0)};
}

bool fiber_membership_sphere(double alpha, const SphereCirclePoint& at,
                             const SphereCirclePoint& vel, double tol) {
  if (std::abs(at.x.norm() - 1.0) > tol || std::abs(at.y.norm() - 1.0) > tol) {
    throw InvalidInput("base point is not on S^2 x S^2");
  }
  if (std::abs(vel.x.dot(at.x)) > tol || std::abs(vel.y.dot(at.y)) > tol) {
    throw InvalidInput("velocity is not tangent to S^2 x S^2");
  }
  return std::abs(vel.x.norm() - std::abs(1.0 + alpha)) <= tol &&
         std::abs(vel.y.norm() - std::abs(1.0 - alpha)) <= tol;
}

std::string to_string(HopfKind kind) {
  switch (kind) {
    case HopfKind::Both:
      return "both";
    case HopfKind::Left:
      return "left-hopf";
    case HopfKind::Right:
      return "right-hopf";
    case HopfKind::None:
      return "not-hopf";
  }
  return "not-hopf";
}

namespace {

// Max distance of the samples from their normalized mean.
double spread(const std::vector<Vec3>& pts, Vec3& mean) {
  Vec3 m = Vec3::Zero();
  for (const Vec3& p : pts) m += p;
  if (m.norm() < 1e-12) {
    mean = Vec3::Zero();
    return 2.0;
  }
  mean = m.normalized();
  double worst = 0.0;
  for (const Vec3& p : pts) worst = std::max(worst, (p - mean).norm());
  return worst;
}

}  // namespace

HopfClassification hopf_classify(const std::vector<OrientedGeodesic>& circles, double tol) {
  if (circles.empty()) throw InvalidInput("hopf_classify needs at least one circle");
  std::vector<Vec3> xs;
  std::vector<Vec3> ys;
  for (const auto& c : circles) {
    const SphereCirclePoint q = phi_map(c);
    xs.push_back(q.x);
    ys.push_back(q.y);
  }
  HopfClassification out;
  Vec3 zl;
  Vec3 zr;
  out.left_spread = spread(xs, zl);
  out.right_spread = spread(ys, zr);
  const bool left = out.left_spread <= tol;
  const bool right = out.right_spread <= tol;
  if (left && right) {
    out.kind = HopfKind::Both;
    out.z = zl;
    out.z_right = zr;
  } else if (left) {
    out.kind = HopfKind::Left;
    out.z = zl;
  } else if (right) {
    out.kind = HopfKind::Right;
    out.z = zr;
  }
  return out;
}

}  // namespace helico
