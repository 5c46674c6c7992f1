#include "helico/lines.hpp"

#include "helico/errors.hpp"
#include "helico/quatsphere.hpp"

#include <cmath>

namespace helico {

namespace {

constexpr double kTieTol = 1e-9;

TangentVector unit_tangent(const SpacePoint& base, const Vec4& d) {
  const TangentVector t = TangentVector::projected(base, d);
  const double n = t.norm();
  if (n < kExactTol) throw InvalidInput("degenerate direction");
  return TangentVector(base, t.vec() / n);
}

// Rotates the pair (p, v) spanning the circle so that the new base
// maximizes coordinate i; returns false when coordinate i vanishes on it.
bool spherical_extreme(const Vec4& p, const Vec4& v, int i, Vec4& base, Vec4& dir) {
  const double r = std::hypot(p[i], v[i]);
  if (r < kTieTol) return false;
  const double c = p[i] / r;
  const double s = v[i] / r;
  base = c * p + s * v;
  dir = -s * p + c * v;
  return true;
}

}  // namespace

OrientedGeodesic OrientedGeodesic::from_point_direction(const TangentVector& v) {
  if (std::abs(v.norm() - 1.0) > kValidateTol) {
    throw InvalidInput("geodesic direction must be a unit vector");
  }
  const Curvature k = v.kappa();
  const Vec4& p = v.base().coords();
  const Vec4& w = v.vec();
  Vec4 base;
  Vec4 dir;
  switch (k) {
    case Curvature::Flat:
      base = p - w.dot(p - Vec4::UnitX()) * w;
      dir = w;
      break;
    case Curvature::Hyperbolic: {
      const double s = std::atanh(-w[0] / p[0]);
      const double c = std::cosh(s);
      const double sh = std::sinh(s);
      base = c * p + sh * w;
      dir = sh * p + c * w;
      break;
    }
    case Curvature::Spherical: {
      bool found = false;
      for (int i = 0; i < 4 && !found; ++i) found = spherical_extreme(p, w, i, base, dir);
      if (!found) throw InvalidInput("degenerate great circle");
      break;
    }
  }
  const SpacePoint b = SpacePoint::projected(k, base);
  return OrientedGeodesic(b, unit_tangent(b, dir));
}

OrientedGeodesic OrientedGeodesic::from_point_direction(const SpacePoint& p, const Vec4& v) {
  return from_point_direction(TangentVector(p, v));
}

OrientedGeodesic OrientedGeodesic::euclidean(const Vec3& p, const Vec3& v) {
  const double n = v.norm();
  if (!(n > kExactTol)) throw InvalidInput("line direction has zero length");
  const SpacePoint b = SpacePoint::euclidean(p);
  return from_point_direction(TangentVector::euclidean(b, v / n));
}

OrientedGeodesic OrientedGeodesic::standard(Curvature k) {
  return from_point_direction(basis_tangent(k, 1));
}

double OrientedGeodesic::parameter_of(const SpacePoint& p, double tol) const {
  if (p.kappa() != kappa()) throw InvalidInput("parameter_of: curvature mismatch");
  const Curvature k = kappa();
  const Vec4& x = p.coords();
  double s = 0.0;
  switch (k) {
    case Curvature::Flat:
      s = (x - base_.coords()).dot(dir_.vec());
      break;
    case Curvature::Spherical:
      s = std::atan2(metric_inner(k, x, dir_.vec()), metric_inner(k, x, base_.coords()));
      break;
    case Curvature::Hyperbolic:
      s = std::asinh(metric_inner(k, x, dir_.vec()));
      break;
  }
  const double off = (point(s).coords() - x).norm();
  if (off > tol * std::max(1.0, x.norm())) {
    throw InvalidInput("point does not lie on the geodesic (offset " + std::to_string(off) + ")");
  }
  return s;
}

TangentVector OrientedGeodesic::direction_at(const SpacePoint& p, double tol) const {
  const TangentVector v = velocity(parameter_of(p, tol));
  // Rebase exactly at p so callers can combine it with vectors at p.
  return TangentVector::projected(p, v.vec());
}

OrientedGeodesic OrientedGeodesic::reversed() const {
  return from_point_direction(TangentVector(base_, -dir_.vec()));
}

double canonical_distance(const OrientedGeodesic& a, const OrientedGeodesic& b) {
  if (a.kappa() != b.kappa()) throw InvalidInput("comparing geodesics of different curvature");
  if (a.kappa() == Curvature::Spherical) {
    return sphere_point_distance(phi_map(a), phi_map(b));
  }
  const double db = (a.base().coords() - b.base().coords()).squaredNorm();
  const double dd = (a.dir().vec() - b.dir().vec()).squaredNorm();
  return std::sqrt(db + dd);
}

bool geodesics_equal(const OrientedGeodesic& a, const OrientedGeodesic& b, double tol) {
  return canonical_distance(a, b) <= tol;
}

OrientedGeodesic act_on_geodesic(const Isometry& g, const OrientedGeodesic& l) {
  if (g.kappa() != l.kappa()) throw InvalidInput("isometry and geodesic have different curvature");
  return OrientedGeodesic::from_point_direction(g.apply(l.dir()));
}

CommonPerpendicular common_perpendicular_euclidean(const OrientedGeodesic& l1,
                                                   const OrientedGeodesic& l2) {
  if (l1.kappa() != Curvature::Flat || l2.kappa() != Curvature::Flat) {
    throw Unsupported("common perpendicular is only implemented for kappa = 0");
  }
  const Vec3 b1 = l1.base().spatial();
  const Vec3 b2 = l2.base().spatial();
  const Vec3 d1 = l1.dir().spatial();
  const Vec3 d2 = l2.dir().spatial();
  const Vec3 w = b1 - b2;
  CommonPerpendicular out;
  const double a = d1.dot(d2);
  const double den = 1.0 - a * a;
  if (d1.cross(d2).norm() < 1e-12) {
    out.parallel = true;
    out.foot1 = l1.base();
    out.foot2 = SpacePoint::euclidean(b2 + w.dot(d2) * d2);
  } else {
    const double s1 = (a * w.dot(d2) - w.dot(d1)) / den;
    const double s2 = (w.dot(d2) - a * w.dot(d1)) / den;
    out.foot1 = SpacePoint::euclidean(b1 + s1 * d1);
    out.foot2 = SpacePoint::euclidean(b2 + s2 * d2);
  }
  out.distance = (out.foot1.spatial() - out.foot2.spatial()).norm();
  return out;
}

// ---------------------------------------------------------------------------

HelicoidalFrame::HelicoidalFrame(const OrientedGeodesic& line, const SpacePoint& p,
                                 const TangentVector& axis, double alpha, double tol)
    : line_(line), p_(p), axis_(axis), ray_(line.direction_at(p, tol)), alpha_(alpha) {
  if (!std::isfinite(alpha)) throw InvalidInput("alpha must be finite");
  if (axis.kappa() != line.kappa()) throw InvalidInput("frame axis has the wrong curvature");
  if ((axis.base().coords() - p.coords()).norm() > tol) {
    throw InvalidInput("frame axis must be based at p");
  }
  if (std::abs(axis.norm() - 1.0) > tol) throw InvalidInput("frame axis must be a unit vector");
  if (std::abs(metric_inner(kappa(), axis.vec(), ray_.vec())) > tol) {
    throw InvalidInput("frame axis must be orthogonal to the ray");
  }
  axis_ = TangentVector(p_, axis.vec());
}

HelicoidalFrame HelicoidalFrame::standard(Curvature k, double alpha) {
  return HelicoidalFrame(OrientedGeodesic::standard(k), SpacePoint::origin(k),
                         basis_tangent(k, 3), alpha);
}

Isometry HelicoidalFrame::placement() const { return Isometry::from_frame(ray_, axis_); }

HelicoidalFrame act_on_frame(const Isometry& g, const HelicoidalFrame& f) {
  return HelicoidalFrame(act_on_geodesic(g, f.line()), g.apply(f.p()), g.apply(f.axis()),
                         f.alpha());
}

SpacePoint helicoid_point(const HelicoidalFrame& f, double s, double t) {
  const TangentVector b = cross(f.axis(), f.ray());
  const TangentVector vt = parallel_transport(f.axis(), f.ray(), t);
  const TangentVector bt = parallel_transport(f.axis(), b, t);
  const double c = std::cos(f.alpha() * t);
  const double sn = std::sin(f.alpha() * t);
  const TangentVector w(vt.base(), c * vt.vec() + sn * bt.vec());
  return geodesic_point(w, s);
}

OrientedGeodesic helicoidal_curve(const HelicoidalFrame& f, double t) {
  const Isometry g = f.placement() * screw_exponential(f.kappa(), f.alpha(), t);
  return OrientedGeodesic::from_point_direction(g.apply(basis_tangent(f.kappa(), 1)));
}

NormalizedPair normalize_pair(const OrientedGeodesic& l1, const OrientedGeodesic& l2) {
  const CommonPerpendicular cp = common_perpendicular_euclidean(l1, l2);
  const Vec3 q = cp.foot1.spatial();
  const Vec3 q2 = cp.foot2.spatial();
  const Vec3 v2 = l2.dir().spatial();
  const Vec3 v1 = l1.dir().spatial();
  Vec3 n;
  if (cp.distance > 1e-12) {
    n = (q - q2) / cp.distance;
  } else if (!cp.parallel) {
    n = v2.cross(v1).normalized();
  } else {
    int i = 0;
    v2.cwiseAbs().minCoeff(&i);
    n = v2.cross(Vec3::Unit(i)).normalized();
  }
  // Remove rounding leakage so the rotation is orthonormal to full precision.
  n = (n - n.dot(v2) * v2).normalized();
  Mat3 r;
  r.row(0) = v2.transpose();
  r.row(1) = n.transpose();
  r.row(2) = v2.cross(n).transpose();
  NormalizedPair out;
  out.g = Isometry::euclidean(r, -r * q2);
  out.d = cp.distance;
  out.v = r * v1;
  out.v[1] = 0.0;
  out.v.normalize();
  return out;
}

}  // namespace helico
