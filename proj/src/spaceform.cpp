#include "helico/spaceform.hpp"

#include "helico/errors.hpp"

#include <cmath>
#include <sstream>

namespace helico {

namespace {

Mat4 metric_matrix(Curvature k) {
  Mat4 g = Mat4::Identity();
  g(0, 0) = value(k);
  return g;
}

void require_unit(const TangentVector& v, const char* what) {
  if (std::abs(v.norm() - 1.0) > kValidateTol) {
    std::ostringstream os;
    os << what << ": expected a unit vector, norm is " << v.norm();
    throw InvalidInput(os.str());
  }
}

void require_hyperbolic_range(Curvature k, double s) {
  if (k == Curvature::Hyperbolic && std::abs(s) > kMaxHyperbolicArg) {
    throw InvalidInput("hyperbolic arclength beyond overflow guard");
  }
}

}  // namespace

Curvature curvature_from_int(int k) {
  switch (k) {
    case -1:
      return Curvature::Hyperbolic;
    case 0:
      return Curvature::Flat;
    case 1:
      return Curvature::Spherical;
    default:
      throw InvalidInput("curvature must be -1, 0 or 1, got " + std::to_string(k));
  }
}

std::string to_string(Curvature k) { return std::to_string(value(k)); }

double metric_inner(Curvature k, const Vec4& x, const Vec4& y) {
  return value(k) * x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3];
}

double metric_norm(Curvature k, const Vec4& v) {
  return std::sqrt(std::max(0.0, metric_inner(k, v, v)));
}

SinCos sin_cos_kappa(Curvature k, double r) {
  switch (k) {
    case Curvature::Spherical:
      return {std::sin(r), std::cos(r)};
    case Curvature::Flat:
      return {r, 1.0};
    case Curvature::Hyperbolic:
      require_hyperbolic_range(k, r);
      return {std::sinh(r), std::cosh(r)};
  }
  return {0.0, 0.0};
}

Mat2 rotation_kappa(Curvature k, double t) {
  const auto [s, c] = sin_cos_kappa(k, t);
  Mat2 r;
  r << c, -value(k) * s, s, c;
  return r;
}

// ---------------------------------------------------------------------------

SpacePoint::SpacePoint(Curvature k, const Vec4& x, double tol) : kappa_(k), x_(x) {
  if (!x.allFinite()) throw InvalidInput("point has non-finite coordinates");
  if (k == Curvature::Flat) {
    if (std::abs(x[0] - 1.0) > tol) throw InvalidInput("flat point must have x0 = 1");
    x_[0] = 1.0;
    return;
  }
  const double q = metric_inner(k, x, x);
  const double scale = std::max(1.0, x.squaredNorm());
  if (std::abs(q - value(k)) > tol * scale) {
    std::ostringstream os;
    os << "point off M_" << value(k) << ": <x,x> = " << q;
    throw InvalidInput(os.str());
  }
  if (k == Curvature::Hyperbolic && x[0] <= 0.0) {
    throw InvalidInput("hyperbolic point must lie on the sheet x0 > 0");
  }
}

SpacePoint SpacePoint::origin(Curvature k) { return SpacePoint(k, Vec4::UnitX()); }

SpacePoint SpacePoint::projected(Curvature k, const Vec4& x) {
  Vec4 y = x;
  switch (k) {
    case Curvature::Flat:
      y[0] = 1.0;
      break;
    case Curvature::Spherical:
      y /= y.norm();
      break;
    case Curvature::Hyperbolic: {
      const double q = -metric_inner(k, y, y);
      if (q <= 0.0) throw InvalidInput("cannot project a non-timelike vector onto H^3");
      y /= std::sqrt(q);
      if (y[0] < 0.0) y = -y;
      break;
    }
  }
  return SpacePoint(k, y);
}

SpacePoint SpacePoint::euclidean(const Vec3& p) {
  Vec4 x;
  x << 1.0, p;
  return SpacePoint(Curvature::Flat, x);
}

TangentVector::TangentVector(const SpacePoint& base, const Vec4& v, double tol)
    : base_(base), v_(v) {
  if (!v.allFinite()) throw InvalidInput("tangent vector has non-finite coordinates");
  const Curvature k = base.kappa();
  if (k == Curvature::Flat) {
    if (std::abs(v[0]) > tol) throw InvalidInput("flat tangent vector must have v0 = 0");
    v_[0] = 0.0;
    return;
  }
  const double ip = metric_inner(k, base.coords(), v);
  const double scale = std::max(1.0, base.coords().norm() * v.norm());
  if (std::abs(ip) > tol * scale) {
    std::ostringstream os;
    os << "vector not tangent: <p,v> = " << ip;
    throw InvalidInput(os.str());
  }
}

TangentVector TangentVector::projected(const SpacePoint& base, const Vec4& v) {
  const Curvature k = base.kappa();
  Vec4 w = v;
  if (k == Curvature::Flat) {
    w[0] = 0.0;
  } else {
    const Vec4& p = base.coords();
    w -= (metric_inner(k, w, p) / value(k)) * p;
  }
  return TangentVector(base, w);
}

TangentVector TangentVector::euclidean(const SpacePoint& base, const Vec3& v) {
  Vec4 w;
  w << 0.0, v;
  return TangentVector(base, w);
}

// ---------------------------------------------------------------------------

std::string isometry_violation(Curvature k, const Mat4& m, double tol) {
  if (!m.allFinite()) return "non-finite entries";
  const double scale = std::max(1.0, m.squaredNorm());
  switch (k) {
    case Curvature::Flat: {
      const Eigen::RowVector4d row = m.row(0);
      if (std::abs(row[0] - 1.0) > tol || row.tail<3>().cwiseAbs().maxCoeff() > tol) {
        return "first row must be (1,0,0,0)";
      }
      const Mat3 r = m.block<3, 3>(1, 1);
      if ((r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff() > tol) {
        return "rotation block not orthogonal";
      }
      if (std::abs(r.determinant() - 1.0) > tol) return "rotation block has det != 1";
      return {};
    }
    case Curvature::Spherical:
      if ((m.transpose() * m - Mat4::Identity()).cwiseAbs().maxCoeff() > tol) {
        return "matrix not orthogonal";
      }
      if (std::abs(m.determinant() - 1.0) > tol) return "det != 1";
      return {};
    case Curvature::Hyperbolic: {
      const Mat4 j = metric_matrix(k);
      if ((m.transpose() * j * m - j).cwiseAbs().maxCoeff() > tol * scale) {
        return "matrix does not preserve the Lorentz form";
      }
      if (std::abs(m.determinant() - 1.0) > tol * scale) return "det != 1";
      if (m(0, 0) <= 0.0) return "matrix reverses the time orientation";
      return {};
    }
  }
  return "unknown curvature";
}

Isometry::Isometry(Curvature k, const Mat4& m, double tol) : kappa_(k), m_(m) {
  if (auto why = isometry_violation(k, m, tol); !why.empty()) {
    throw InvalidInput("invalid isometry for kappa = " + to_string(k) + ": " + why);
  }
}

Isometry Isometry::identity(Curvature k) { return Isometry(k, Mat4::Identity()); }

Isometry Isometry::euclidean(const Mat3& rotation, const Vec3& translation) {
  Mat4 m = Mat4::Identity();
  m.block<3, 1>(1, 0) = translation;
  m.block<3, 3>(1, 1) = rotation;
  return Isometry(Curvature::Flat, m);
}

Isometry Isometry::from_frame(const TangentVector& v, const TangentVector& a) {
  const Curvature k = v.kappa();
  if (a.kappa() != k) throw InvalidInput("frame vectors with different curvature");
  if ((a.base().coords() - v.base().coords()).cwiseAbs().maxCoeff() > kValidateTol) {
    throw InvalidInput("frame vectors based at different points");
  }
  require_unit(v, "frame direction");
  require_unit(a, "frame axis");
  if (std::abs(metric_inner(k, v.vec(), a.vec())) > kValidateTol) {
    throw InvalidInput("frame vectors not orthogonal");
  }
  const TangentVector b = cross(a, v);
  Mat4 m;
  m.col(0) = v.base().coords();
  m.col(1) = v.vec();
  m.col(2) = b.vec();
  m.col(3) = a.vec();
  return Isometry(k, m);
}

Isometry Isometry::inverse() const {
  switch (kappa_) {
    case Curvature::Flat: {
      const Mat3 rt = m_.block<3, 3>(1, 1).transpose();
      const Vec3 a = m_.block<3, 1>(1, 0);
      Mat4 inv = Mat4::Identity();
      inv.block<3, 3>(1, 1) = rt;
      inv.block<3, 1>(1, 0) = -rt * a;
      return Isometry(kappa_, inv);
    }
    case Curvature::Spherical:
      return Isometry(kappa_, m_.transpose());
    case Curvature::Hyperbolic: {
      const Mat4 j = metric_matrix(kappa_);
      return Isometry(kappa_, j * m_.transpose() * j);
    }
  }
  return *this;
}

Isometry Isometry::operator*(const Isometry& other) const {
  if (other.kappa_ != kappa_) throw InvalidInput("composing isometries of different curvature");
  return Isometry(kappa_, m_ * other.m_);
}

SpacePoint Isometry::apply(const SpacePoint& p) const {
  if (p.kappa() != kappa_) throw InvalidInput("isometry and point have different curvature");
  return SpacePoint(kappa_, m_ * p.coords());
}

TangentVector Isometry::apply(const TangentVector& v) const {
  return TangentVector(apply(v.base()), m_ * v.vec());
}

// ---------------------------------------------------------------------------

SpacePoint geodesic_point(const TangentVector& v, double s) {
  require_unit(v, "geodesic_point");
  const Curvature k = v.kappa();
  const auto [sn, cs] = sin_cos_kappa(k, s);
  return SpacePoint(k, cs * v.base().coords() + sn * v.vec());
}

TangentVector geodesic_velocity(const TangentVector& v, double s) {
  require_unit(v, "geodesic_velocity");
  const Curvature k = v.kappa();
  const auto [sn, cs] = sin_cos_kappa(k, s);
  const SpacePoint q(k, cs * v.base().coords() + sn * v.vec());
  return TangentVector(q, -value(k) * sn * v.base().coords() + cs * v.vec());
}

TangentVector parallel_transport(const TangentVector& v, const TangentVector& w, double s) {
  require_unit(v, "parallel_transport");
  const Curvature k = v.kappa();
  if (w.kappa() != k) throw InvalidInput("parallel_transport: curvature mismatch");
  if ((w.base().coords() - v.base().coords()).cwiseAbs().maxCoeff() > kValidateTol) {
    throw InvalidInput("parallel_transport: vectors based at different points");
  }
  const double along = metric_inner(k, w.vec(), v.vec());
  const Vec4 normal = w.vec() - along * v.vec();
  const TangentVector vel = geodesic_velocity(v, s);
  return TangentVector(vel.base(), along * vel.vec() + normal);
}

TangentVector cross(const TangentVector& u, const TangentVector& v) {
  const Curvature k = u.kappa();
  if (v.kappa() != k) throw InvalidInput("cross: curvature mismatch");
  if (k == Curvature::Flat) {
    return TangentVector::euclidean(u.base(), u.spatial().cross(v.spatial()));
  }
  // c with c . x = det(p, u, v, x); then <w, x>_k = c . x for w = G^{-1} c.
  Mat4 cols;
  cols.col(0) = u.base().coords();
  cols.col(1) = u.vec();
  cols.col(2) = v.vec();
  Vec4 c;
  for (int i = 0; i < 4; ++i) {
    cols.col(3) = Vec4::Unit(i);
    c[i] = cols.determinant();
  }
  c[0] *= value(k);  // G^{-1} = diag(k, 1, 1, 1) for k = +-1
  return TangentVector(u.base(), c);
}

// ---------------------------------------------------------------------------

LieAlgebraElement LieAlgebraElement::from_block(Curvature k, const Mat2& lower_left) {
  Mat4 m = Mat4::Zero();
  m.block<2, 2>(2, 0) = lower_left;
  m.block<1, 2>(0, 2) = -value(k) * lower_left.col(0).transpose();
  m.block<1, 2>(1, 2) = -lower_left.col(1).transpose();
  return LieAlgebraElement(k, m);
}

LieAlgebraElement LieAlgebraElement::from_z(Curvature k, const Vec2& x, const Vec2& y) {
  Mat2 b;
  b.col(0) = x;
  b.col(1) = y;
  return from_block(k, b);
}

bool LieAlgebraElement::in_p(double tol) const {
  const Mat4 expected = from_block(kappa_, lower_left()).matrix();
  return (expected - m_).cwiseAbs().maxCoeff() <= tol * std::max(1.0, m_.cwiseAbs().maxCoeff());
}

LieAlgebraElement xi_alpha(Curvature k, double alpha) {
  return LieAlgebraElement::from_z(k, Vec2(0.0, 1.0), Vec2(alpha, 0.0));
}

Isometry screw_exponential(Curvature k, double alpha, double t) {
  const auto [sn, cs] = sin_cos_kappa(k, t);
  const double ca = std::cos(alpha * t);
  const double sa = std::sin(alpha * t);
  Mat4 m = Mat4::Zero();
  m(0, 0) = cs;
  m(0, 3) = -value(k) * sn;
  m(3, 0) = sn;
  m(3, 3) = cs;
  m(1, 1) = ca;
  m(1, 2) = -sa;
  m(2, 1) = sa;
  m(2, 2) = ca;
  return Isometry(k, m);
}

TangentVector basis_tangent(Curvature k, int i) {
  if (i < 1 || i > 3) throw InvalidInput("basis_tangent index must be 1, 2 or 3");
  return TangentVector(SpacePoint::origin(k), Vec4::Unit(i));
}

}  // namespace helico
