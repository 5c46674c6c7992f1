#include "oracles.hpp"

#include "helico/errors.hpp"
#include "helico/quatsphere.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace helico;

namespace {

constexpr double kPi = std::numbers::pi;

OrientedGeodesic random_circle(oracle::Gen& g) {
  const SpacePoint p(Curvature::Spherical, g.unit4());
  return OrientedGeodesic::from_point_direction(p, g.tangent(1, p.coords()));
}

HelicoidalFrame random_frame(oracle::Gen& g, double alpha) {
  const SpacePoint p(Curvature::Spherical, g.unit4());
  const Vec4 v = g.tangent(1, p.coords());
  const Vec4 a = g.tangent_orthogonal(1, p.coords(), v);
  return HelicoidalFrame(OrientedGeodesic::from_point_direction(p, v), p, TangentVector(p, a), alpha);
}

}  // namespace

TEST(Quaternion, CoordinatesFollowWIJK) {
  const Quaternion q = quat_from_vec4(Vec4(1, 2, 3, 4));
  EXPECT_EQ(q.w(), 1);
  EXPECT_EQ(q.x(), 2);
  EXPECT_EQ(vec4_from_quat(q), Vec4(1, 2, 3, 4));
  const Vec4 ij = vec4_from_quat(pure_quat(Vec3::UnitX()) * pure_quat(Vec3::UnitY()));
  EXPECT_EQ(ij, Vec4(0, 0, 0, 1));
  EXPECT_THROW(quat_inverse(Quaternion(0, 0, 0, 0)), InvalidInput);
}

TEST(Quaternion, Rot4MatrixIsInSO4AndMatchesTheAction) {
  oracle::Gen g(41);
  for (int n = 0; n < 20; ++n) {
    const Quaternion p = quat_from_vec4(g.unit4());
    const Quaternion q = quat_from_vec4(g.unit4());
    const Mat4 m = rot4_matrix(p, q);
    EXPECT_EQ(isometry_violation(Curvature::Spherical, m, 1e-12), "");
    const Vec4 y = g.unit4();
    const Vec4 want = oracle::qmul(oracle::qmul(vec4_from_quat(p), y), oracle::qconj(vec4_from_quat(q)));
    EXPECT_LT((m * y - want).norm(), 1e-14);
  }
}

TEST(SphereIsometries, RotationAndTransvectionCommute) {
  for (double beta : {0.3, -1.9}) {
    for (double tau : {0.7, 2.4}) {
      const Mat4 a = (sphere_rotation(beta) * sphere_transvection(tau)).matrix();
      const Mat4 b = (sphere_transvection(tau) * sphere_rotation(beta)).matrix();
      EXPECT_LT((a - b).norm(), 1e-12);
    }
  }
}

TEST(SphereIsometries, TransvectionSlidesAlongTheKCircle) {
  const Isometry t = sphere_transvection(0.8);
  for (double s : {0.0, 1.3}) {
    const Vec4 x(std::cos(s), 0, 0, std::sin(s));
    EXPECT_LT((t.matrix() * x - Vec4(std::cos(s + 0.8), 0, 0, std::sin(s + 0.8))).norm(), 1e-15);
  }
  const Isometry r = sphere_rotation(0.5);
  EXPECT_LT((r.matrix() * Vec4(1, 0, 0, 0) - Vec4(1, 0, 0, 0)).norm(), 1e-15);
  EXPECT_LT((r.matrix() * Vec4(0, 0, 0, 1) - Vec4(0, 0, 0, 1)).norm(), 1e-15);
  EXPECT_LT((r.matrix() * Vec4(0, 1, 0, 0) - Vec4(0, std::cos(0.5), std::sin(0.5), 0)).norm(), 1e-15);
}

TEST(Phi, AgreesWithTheQuaternionProductOracle) {
  oracle::Gen g(42);
  for (int n = 0; n < 50; ++n) {
    const OrientedGeodesic c = random_circle(g);
    const SphereCirclePoint xy = phi_map(c);
    const auto [x, y] = oracle::phi(c.base().coords(), c.dir().vec());
    EXPECT_LT((xy.x - x).norm(), 1e-14);
    EXPECT_LT((xy.y - y).norm(), 1e-14);
    EXPECT_NEAR(xy.x.norm(), 1.0, 1e-14);
  }
}

TEST(Phi, IsWellDefinedOnTheUnparametrizedCircle) {
  oracle::Gen g(43);
  for (int n = 0; n < 30; ++n) {
    const OrientedGeodesic c = random_circle(g);
    const double s = g.uniform(-kPi, kPi);
    const auto [x, y] = oracle::phi(c.point(s).coords(), c.velocity(s).vec());
    const SphereCirclePoint xy = phi_map(c);
    EXPECT_LT((xy.x - x).norm(), 1e-13);
    EXPECT_LT((xy.y - y).norm(), 1e-13);
  }
}

TEST(Phi, InverseRoundTrips) {
  oracle::Gen g(44);
  for (int n = 0; n < 50; ++n) {
    const OrientedGeodesic c = random_circle(g);
    EXPECT_LT(canonical_distance(phi_inverse(phi_map(c)), c), 1e-12);
    const SphereCirclePoint xy{g.unit3(), g.unit3()};
    EXPECT_LT(sphere_point_distance(phi_map(phi_inverse(xy)), xy), 1e-12);
  }
  const SphereCirclePoint antipodal{-Vec3::UnitX(), -Vec3::UnitX()};
  EXPECT_LT(sphere_point_distance(phi_map(phi_inverse(antipodal)), antipodal), 1e-14);
  EXPECT_THROW(phi_map(OrientedGeodesic::standard(Curvature::Flat)), Unsupported);
}

TEST(Phi, LiftRotatesIOntoTheTarget) {
  oracle::Gen g(45);
  for (int n = 0; n < 30; ++n) {
    const Vec3 x = g.unit3();
    EXPECT_LT((rot3(lift_to_i(x), Vec3::UnitX()) - x).norm(), 1e-14);
  }
  const Quaternion a = lift_to_i(-Vec3::UnitX());
  EXPECT_LT((vec4_from_quat(a) - Vec4(0, 0, 1, 0)).norm(), 1e-15);
}

TEST(GammaSphere, StartsAtIIAndFreezesTheRightFactorForAlphaOne) {
  const SphereCirclePoint o = gamma_sphere(0.7, 0.0);
  EXPECT_LT((o.x - Vec3::UnitX()).norm(), 1e-15);
  EXPECT_LT((o.y - Vec3::UnitX()).norm(), 1e-15);
  for (double t : {0.5, 2.0, 5.0}) EXPECT_LT((gamma_sphere(1.0, t).y - Vec3::UnitX()).norm(), 1e-15);
}

TEST(GammaSphere, InitialVelocityOfBothFactors) {
  for (double alpha : {-1.5, 0.0, 0.4, 2.0}) {
    const double h = 1e-6;
    const Vec3 dx = (gamma_sphere(alpha, h).x - gamma_sphere(alpha, -h).x) / (2 * h);
    const Vec3 dy = (gamma_sphere(alpha, h).y - gamma_sphere(alpha, -h).y) / (2 * h);
    EXPECT_LT((dx - (1 + alpha) * Vec3::UnitY()).norm(), 1e-8);
    // The second factor turns the other way round.
    EXPECT_LT((dy - (alpha - 1) * Vec3::UnitY()).norm(), 1e-8);
  }
}

TEST(GammaSphere, MatchesTheStandardHelicoidalCurve) {
  for (double alpha : {-2.0, -1.0, 0.0, 0.5, 1.0, 3.0}) {
    const HelicoidalFrame f = HelicoidalFrame::standard(Curvature::Spherical, alpha);
    for (int i = 0; i <= 24; ++i) {
      const double t = -kPi + 2 * kPi * i / 24;
      EXPECT_LT(sphere_point_distance(phi_map(helicoidal_curve(f, t)), gamma_sphere(alpha, t)), 1e-12);
    }
  }
}

TEST(FiberMembership, VelocitiesOfHelicoidalCurvesAreInTheFiber) {
  oracle::Gen g(46);
  for (int n = 0; n < 30; ++n) {
    const double alpha = n < 5 ? 1.0 : g.alpha(0.1, 3.0);
    const HelicoidalFrame f = random_frame(g, alpha);
    const double h = 1e-5;
    const SphereCirclePoint a = phi_map(helicoidal_curve(f, h));
    const SphereCirclePoint b = phi_map(helicoidal_curve(f, -h));
    const SphereCirclePoint at = phi_map(helicoidal_curve(f, 0.0));
    SphereCirclePoint vel{(a.x - b.x) / (2 * h), (a.y - b.y) / (2 * h)};
    // Remove the O(h^2) normal drift of the difference quotient.
    vel.x -= vel.x.dot(at.x) * at.x;
    vel.y -= vel.y.dot(at.y) * at.y;
    EXPECT_TRUE(fiber_membership_sphere(alpha, at, vel, 1e-8)) << "alpha " << alpha;
    EXPECT_FALSE(fiber_membership_sphere(alpha + 0.1, at, vel, 1e-8));
  }
}

TEST(FiberMembership, RejectsNonTangentVelocities) {
  const SphereCirclePoint at{Vec3::UnitX(), Vec3::UnitX()};
  EXPECT_THROW(fiber_membership_sphere(0.5, at, {Vec3::UnitX(), Vec3::UnitY()}), InvalidInput);
}

TEST(HopfClassify, StandardFibersAreLeftWithFactorI) {
  oracle::Gen g(47);
  std::vector<OrientedGeodesic> fibers;
  for (int n = 0; n < 20; ++n) {
    const Vec4 q = g.unit4();
    // s -> e^{is} q
    const Vec4 v = oracle::qmul(Vec4(0, 1, 0, 0), q);
    fibers.push_back(OrientedGeodesic::from_point_direction(SpacePoint(Curvature::Spherical, q), v));
  }
  const HopfClassification c = hopf_classify(fibers);
  EXPECT_EQ(c.kind, HopfKind::Left);
  EXPECT_LT((c.z - Vec3::UnitX()).norm(), 1e-12);
  EXPECT_EQ(to_string(c.kind), "left-hopf");
}

TEST(HopfClassify, CurvesOfOneAdmissibleCirclesFreezeOneFactor) {
  oracle::Gen g(48);
  for (double alpha : {1.0, -1.0}) {
    const HelicoidalFrame f = random_frame(g, alpha);
    std::vector<OrientedGeodesic> circles;
    for (int i = 0; i < 32; ++i) circles.push_back(helicoidal_curve(f, 2 * kPi * i / 32));
    EXPECT_EQ(hopf_classify(circles).kind, alpha > 0 ? HopfKind::Right : HopfKind::Left);
  }
}

TEST(HopfClassify, GenericCirclesAreNotHopf) {
  oracle::Gen g(49);
  std::vector<OrientedGeodesic> circles;
  for (int n = 0; n < 3; ++n) circles.push_back(random_circle(g));
  EXPECT_EQ(hopf_classify(circles).kind, HopfKind::None);
  EXPECT_THROW(hopf_classify({}), InvalidInput);
  EXPECT_EQ(hopf_classify({circles[0]}).kind, HopfKind::Both);
}
