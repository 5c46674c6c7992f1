#include "helico/admissible.hpp"

#include "helico/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace helico {

namespace {

constexpr double kPi = std::numbers::pi;

void require_based_at(const TangentVector& w, const SpacePoint& p, double tol, const char* what) {
  if (w.kappa() != p.kappa() || (w.base().coords() - p.coords()).norm() > tol) {
    throw InvalidInput(std::string(what) + " must be based at sigma(0)");
  }
}

// 5-point central difference.
template <class F>
auto derivative5(const F& f, double t, double h) {
  return (f(t - 2 * h) - 8.0 * f(t - h) + 8.0 * f(t + h) - f(t + 2 * h)) / (12.0 * h);
}

Mat3 rotation_z(double a) {
  Mat3 r = Mat3::Identity();
  r(0, 0) = std::cos(a);
  r(0, 1) = -std::sin(a);
  r(1, 0) = std::sin(a);
  r(1, 1) = std::cos(a);
  return r;
}

Mat2 alpha_block(double k, double alpha) {
  Mat2 a;
  a << 0.0, alpha, k, 0.0;
  return a;
}

}  // namespace

// ---------------------------------------------------------------------------

JacobiData::JacobiData(const TangentVector& sigma_, const TangentVector& u_,
                       const TangentVector& v_, double a_, double b_, double tol)
    : sigma(sigma_), u(u_), v(v_), a(a_), b(b_) {
  if (std::abs(sigma.norm() - 1.0) > tol) throw InvalidInput("sigma'(0) must be a unit vector");
  require_based_at(u, sigma.base(), tol, "u");
  require_based_at(v, sigma.base(), tol, "v");
  const Curvature k = sigma.kappa();
  if (std::abs(metric_inner(k, u.vec(), sigma.vec())) > tol ||
      std::abs(metric_inner(k, v.vec(), sigma.vec())) > tol) {
    throw InvalidInput("u and v must be orthogonal to sigma'(0)");
  }
}

JacobiValue jacobi_eval(const JacobiData& j, double s) {
  const Curvature k = j.sigma.kappa();
  const auto [sn, cs] = sin_cos_kappa(k, s);
  const TangentVector vel = geodesic_velocity(j.sigma, s);
  const Vec4 us = parallel_transport(j.sigma, j.u, s).vec();
  const Vec4 vs = parallel_transport(j.sigma, j.v, s).vec();
  const Vec4 field = cs * us + sn * vs + (j.a + s * j.b) * vel.vec();
  const Vec4 deriv = -value(k) * sn * us + cs * vs + j.b * vel.vec();
  return {TangentVector(vel.base(), field), TangentVector(vel.base(), deriv)};
}

bool jacobi_admissible(const JacobiData& j, double alpha, double tol) {
  if (std::abs(j.b) > tol) throw InvalidInput("jacobi_admissible requires b = 0");
  const Curvature k = j.sigma.kappa();
  const JacobiValue at0 = jacobi_eval(j, 0.0);
  const double ip = metric_inner(k, at0.value.vec(), at0.derivative.vec());
  if (std::abs(ip) > tol) throw InvalidInput("jacobi_admissible requires J(0) orthogonal to J'(0)");
  const TangentVector c = cross(at0.value, j.sigma);
  const double n = at0.derivative.norm();
  const double mismatch = metric_norm(k, at0.derivative.vec() - alpha * c.vec());
  return std::abs(n - std::abs(alpha)) <= tol && mismatch <= tol;
}

// ---------------------------------------------------------------------------

double ruled_residual(const RuledData& d, double alpha) {
  const double r1 = std::abs(d.V_dot.norm() - std::abs(alpha));
  const double r2 = (d.V_dot - alpha * d.beta_dot.cross(d.V)).norm();
  return std::max(r1, r2);
}

bool ruled_admissible(const Vec3& beta_dot, const Vec3& V, const Vec3& V_dot, double alpha,
                      double tol) {
  if (std::abs(V.norm() - 1.0) > tol) throw InvalidInput("ruling direction V must be unit");
  const double scale = std::max(1.0, beta_dot.norm() * V_dot.norm());
  if (std::abs(beta_dot.dot(V_dot)) > tol * scale) {
    throw InvalidInput(
        "ruled data is not standard (<beta', V'> != 0); pass it through standardize_ruled "
        "to move beta onto the striction line");
  }
  RuledData d;
  d.beta_dot = beta_dot;
  d.V = V;
  d.V_dot = V_dot;
  return ruled_residual(d, alpha) <= tol;
}

bool ruled_admissible(const RuledData& d, double alpha, double tol) {
  return ruled_admissible(d.beta_dot, d.V, d.V_dot, alpha, tol);
}

RuledData standardize_ruled(const CurveFn& beta, const CurveFn& V, double t0,
                            const StandardizeOptions& opt) {
  const double h = opt.step;
  auto vdot = [&](double t) -> Vec3 { return derivative5(V, t, h); };
  auto bdot = [&](double t) -> Vec3 { return derivative5(beta, t, h); };
  auto shift = [&](double t) -> double {
    const Vec3 w = vdot(t);
    return bdot(t).dot(w) / w.squaredNorm();
  };

  RuledData out;
  out.V = V(t0);
  out.V_dot = vdot(t0);
  if (out.V_dot.norm() < opt.cylindrical_tol) {
    throw CylindricalInput("ruling velocity vanishes at t0; the surface is cylindrical there");
  }
  const double c = shift(t0);
  const double c_dot = derivative5(shift, t0, opt.outer_step);
  out.beta = beta(t0) - c * out.V;
  out.beta_dot = bdot(t0) - c * out.V_dot - c_dot * out.V;
  return out;
}

RuledData helicoidal_ruled_data(const HelicoidalFrame& f, double t) {
  if (f.kappa() != Curvature::Flat) throw Unsupported("ruled data is only defined for kappa = 0");
  auto beta = [&f](double tau) -> Vec3 { return helicoidal_curve(f, tau).base().spatial(); };
  auto dir = [&f](double tau) -> Vec3 { return helicoidal_curve(f, tau).dir().spatial(); };
  return standardize_ruled(beta, dir, t);
}

CircularHelicoidReport circular_helicoid_check(double r, double alpha) {
  if (!(r > 0.0) || !std::isfinite(r)) throw InvalidInput("radius must be positive");
  if (alpha == 0.0 || !std::isfinite(alpha)) throw InvalidInput("alpha must be nonzero");
  auto c = [r](double t) -> Vec3 { return r * Vec3(std::cos(t / r), std::sin(t / r), 0.0); };
  auto v = [r, alpha, c](double t) -> Vec3 {
    return std::cos(alpha * t) * c(t) / r + std::sin(alpha * t) * Vec3::UnitZ();
  };
  CircularHelicoidReport out;
  out.speed = std::sqrt(alpha * alpha + 1.0 / (r * r));
  const RuledData d = standardize_ruled(c, v, 0.0);
  out.standardized_speed = d.V_dot.norm();
  out.admissible = ruled_admissible(d, alpha, 1e-7);
  return out;
}

// ---------------------------------------------------------------------------

std::pair<double, double> screw_residuals(const ScrewParams& p, double alpha) {
  const double s = std::sin(p.eta);
  double cot_term = 0.0;
  if (std::abs(s) < 1e-12) {
    if (std::abs(p.rho * p.theta) > 1e-12) {
      throw SingularCotangent("eta is 0 or pi while rho * theta != 0");
    }
  } else {
    cot_term = p.rho * p.theta * std::cos(p.eta) / s;
  }
  return {std::abs(std::abs(p.theta * s) - std::abs(alpha)),
          std::abs(alpha * (p.lambda + cot_term) - p.theta)};
}

bool screw_admissible(const ScrewParams& p, double alpha, double tol) {
  if (alpha == 0.0) throw InvalidInput("screw admissibility needs alpha != 0");
  const auto [r1, r2] = screw_residuals(p, alpha);
  return r1 <= tol && r2 <= tol;
}

namespace {

OrientedGeodesic local_start(const ScrewParams& p) {
  return OrientedGeodesic::euclidean(p.rho * Vec3::UnitY(),
                                     Vec3(std::sin(p.eta), 0.0, std::cos(p.eta)));
}

}  // namespace

OrientedGeodesic screw_start_line(const ScrewParams& p) {
  return act_on_geodesic(p.frame, local_start(p));
}

OrientedGeodesic screw_orbit(const ScrewParams& p, double t) {
  const Isometry motion =
      Isometry::euclidean(rotation_z(p.theta * t), p.lambda * t * Vec3::UnitZ());
  return act_on_geodesic(p.frame * motion, local_start(p));
}

RuledData screw_ruled_data(const ScrewParams& p) {
  const Mat3 r = p.frame.matrix().block<3, 3>(1, 1);
  const Vec3 a = p.frame.matrix().block<3, 1>(1, 0);
  RuledData d;
  d.beta = r * (p.rho * Vec3::UnitY()) + a;
  d.beta_dot = r * Vec3(-p.rho * p.theta, 0.0, p.lambda);
  d.V = r * Vec3(std::sin(p.eta), 0.0, std::cos(p.eta));
  d.V_dot = r * (p.theta * std::sin(p.eta) * Vec3::UnitY());
  return d;
}

// ---------------------------------------------------------------------------

Mat4 isotropy_element(Curvature k, double s, double t) {
  Mat4 m = Mat4::Zero();
  m.block<2, 2>(0, 0) = rotation_kappa(k, t);
  m.block<2, 2>(2, 2) = rotation_kappa(Curvature::Spherical, s);
  return m;
}

FiberVector fiber_frame(Curvature k, double alpha, double s, double t) {
  const double kv = value(k);
  Mat4 m = Mat4::Zero();
  m.block<2, 2>(2, 0) = rotation_kappa(Curvature::Spherical, s) * alpha_block(1.0, alpha) *
                        rotation_kappa(k, -t);
  m.block<2, 2>(0, 2) = -rotation_kappa(k, t) * alpha_block(kv, alpha).transpose() *
                        rotation_kappa(Curvature::Spherical, -s);
  return {s, t, LieAlgebraElement(k, m)};
}

double p_inner(const LieAlgebraElement& a, const LieAlgebraElement& b) {
  return a.lower_left().cwiseProduct(b.lower_left()).sum();
}

double f_zeta(Curvature k, double alpha, const LieAlgebraElement& zeta, double s, double t) {
  if (zeta.kappa() != k || !zeta.in_p()) throw InvalidInput("zeta must lie in p_k");
  return p_inner(fiber_frame(k, alpha, s, t).value, zeta);
}

LieAlgebraElement degenerate_zeta(Curvature k, double alpha) {
  Mat2 b;
  b << alpha, 1.0, -alpha, 1.0;
  return LieAlgebraElement::from_block(k, b);
}

std::pair<double, double> fiber_t_range(Curvature k) {
  switch (k) {
    case Curvature::Spherical:
      return {0.0, 2.0 * kPi};
    case Curvature::Flat:
      return {-3.0, 3.0};
    case Curvature::Hyperbolic:
      return {-2.0, 2.0};
  }
  return {0.0, 1.0};
}

RankReport substantial_rank_report(Curvature k, double alpha, int samples,
                                   unsigned long long seed, double threshold) {
  if (samples < 1) throw InvalidInput("samples must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> s_dist(0.0, 2.0 * kPi);
  const auto [lo, hi] = fiber_t_range(k);
  std::uniform_real_distribution<double> t_dist(lo, hi);
  Eigen::MatrixXd a(4, samples);
  for (int i = 0; i < samples; ++i) {
    const double s = s_dist(rng);
    const double t = t_dist(rng);
    const Mat2 b = fiber_frame(k, alpha, s, t).value.lower_left();
    a.col(i) << b(0, 0), b(1, 0), b(0, 1), b(1, 1);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  RankReport out;
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    const double sv = svd.singularValues()[i];
    out.singular_values.push_back(sv);
    if (sv > threshold) ++out.rank;
  }
  return out;
}

int substantial_rank(Curvature k, double alpha, int samples, unsigned long long seed,
                     double threshold) {
  return substantial_rank_report(k, alpha, samples, seed, threshold).rank;
}

namespace {

Vec3 isotropy_residual(Curvature k, double alpha, double s, double t) {
  const auto [sk, ck] = sin_cos_kappa(k, t);
  return Vec3(-std::sin(s) - alpha * sk, std::cos(s) - ck, alpha * std::sin(s) + value(k) * sk);
}

double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

}  // namespace

std::vector<std::pair<double, double>> isotropy_solutions(Curvature k, double alpha, int grid,
                                                          double tol) {
  if (grid < 1) throw InvalidInput("grid must be positive");
  const auto [lo, hi] = fiber_t_range(k);
  const double kv = value(k);
  std::vector<std::pair<double, double>> found;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      double s = -kPi + 2.0 * kPi * (i + 0.5) / grid;
      double t = lo + (hi - lo) * (j + 0.5) / grid;
      double mu = 1e-6;
      bool ok = false;
      for (int it = 0; it < 100 && std::abs(t) < 50.0; ++it) {
        const Vec3 r = isotropy_residual(k, alpha, s, t);
        if (r.norm() < tol) {
          ok = true;
          break;
        }
        const auto [sk, ck] = sin_cos_kappa(k, t);
        Eigen::Matrix<double, 3, 2> jac;
        jac << -std::cos(s), -alpha * ck, -std::sin(s), kv * sk, alpha * std::cos(s), kv * ck;
        const Mat2 n = jac.transpose() * jac + mu * Mat2::Identity();
        const Vec2 step = n.ldlt().solve(-jac.transpose() * r);
        s += step[0];
        t += step[1];
      }
      if (!ok) continue;
      s = wrap_angle(s);
      if (k == Curvature::Spherical) t = wrap_angle(t);
      const bool dup = std::any_of(found.begin(), found.end(), [&](const auto& p) {
        return std::abs(p.first - s) < 1e-6 && std::abs(p.second - t) < 1e-6;
      });
      if (!dup) found.emplace_back(s, t);
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

bool isotropy_trivial(Curvature k, double alpha, int grid, double tol) {
  if (k == Curvature::Spherical) {
    throw Unsupported("isotropy triviality is only claimed for kappa in {0, -1}");
  }
  if (alpha == 0.0) throw InvalidInput("isotropy_trivial requires alpha != 0");
  for (const auto& [s, t] : isotropy_solutions(k, alpha, grid, tol)) {
    if (std::abs(s) > 1e-6 || std::abs(t) > 1e-6) return false;
  }
  return true;
}

}  // namespace helico
