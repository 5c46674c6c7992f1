#pragma once

// Admissibility tests for curves of oriented geodesics: Jacobi fields along a
// reference geodesic, ruled-surface data in R^3, homogeneous (screw) curves,
// and the Lie-algebraic rank criterion on p_k.

#include "helico/lines.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace helico {

// ---------------------------------------------------------------------------
// Jacobi fields J(s) = cos_k(s) U(s) + sin_k(s) V(s) + (a + s b) sigma'(s).

struct JacobiData {
  // Unit initial velocity of the reference geodesic, based at sigma(0).
  TangentVector sigma;
  TangentVector u;
  TangentVector v;
  double a = 0.0;
  double b = 0.0;

  // Validates that u and v are based at sigma(0) and orthogonal to sigma'.
  JacobiData(const TangentVector& sigma, const TangentVector& u, const TangentVector& v,
             double a, double b, double tol = kValidateTol);
};

struct JacobiValue {
  TangentVector value;
  TangentVector derivative;  // covariant derivative along sigma
};

JacobiValue jacobi_eval(const JacobiData& j, double s);

// Requires b = 0 and J(0) orthogonal to J'(0) (throws InvalidInput otherwise).
// True iff |J'(0)| = |alpha| and J'(0) = alpha J(0) x sigma'(0).
bool jacobi_admissible(const JacobiData& j, double alpha, double tol = 1e-9);

// ---------------------------------------------------------------------------
// Ruled surfaces beta(t) + s V(t) in R^3.

struct RuledData {
  Vec3 beta = Vec3::Zero();  // striction point at t0
  Vec3 beta_dot = Vec3::Zero();
  Vec3 V = Vec3::UnitX();
  Vec3 V_dot = Vec3::Zero();
};

// Requires <beta_dot, V_dot> = 0 and |V| = 1 (InvalidInput otherwise, with a
// hint to call standardize_ruled). True iff |V_dot| = |alpha| and
// V_dot = alpha beta_dot x V.
bool ruled_admissible(const Vec3& beta_dot, const Vec3& V, const Vec3& V_dot, double alpha,
                      double tol = 1e-9);
bool ruled_admissible(const RuledData& d, double alpha, double tol = 1e-9);
// Max of the two equation residuals (no standardness check).
double ruled_residual(const RuledData& d, double alpha);

using CurveFn = std::function<Vec3(double)>;

struct StandardizeOptions {
  double step = 1e-5;        // inner 5-point stencil
  double outer_step = 2e-3;  // stencil for the derivative of the striction shift
  double cylindrical_tol = 1e-9;
};

// Replaces beta by its striction line beta - (<beta', V'>/|V'|^2) V and
// returns the standard data at t0. Throws CylindricalInput when V'(t0) ~ 0.
RuledData standardize_ruled(const CurveFn& beta, const CurveFn& V, double t0,
                            const StandardizeOptions& opt = {});

// Ruled data of the kappa = 0 curve t -> helicoidal_curve(f, t) at t,
// obtained by differentiating the canonical line numerically.
RuledData helicoidal_ruled_data(const HelicoidalFrame& f, double t);

struct CircularHelicoidReport {
  double speed = 0.0;               // sqrt(alpha^2 + 1/r^2)
  double standardized_speed = 0.0;  // |V'(0)| from the explicit surface
  bool admissible = false;
};

// Circular helicoid c(t) + s v(t) with c(t) = r (cos(t/r), sin(t/r), 0) and
// v(t) = cos(alpha t) c(t)/r + sin(alpha t) e3.
CircularHelicoidReport circular_helicoid_check(double r, double alpha);

// ---------------------------------------------------------------------------
// Homogeneous curves t -> h R_{theta t} T_{lambda t} h^-1 l.

struct ScrewParams {
  double theta = 0.0;
  double lambda = 0.0;
  double rho = 0.0;
  double eta = 0.0;
  // Carries the z-axis screw configuration, with the moved line
  // [rho e2 + s (sin eta e1 + cos eta e3)], into general position.
  Isometry frame = Isometry::identity(Curvature::Flat);
};

// Residuals of |theta sin eta| = |alpha| and alpha (lambda + rho theta cot eta)
// = theta. Throws SingularCotangent for sin eta ~ 0 with rho theta != 0.
std::pair<double, double> screw_residuals(const ScrewParams& p, double alpha);
bool screw_admissible(const ScrewParams& p, double alpha, double tol = 1e-9);

// The line moved by the screw, at time 0.
OrientedGeodesic screw_start_line(const ScrewParams& p);
// Its image at time t.
OrientedGeodesic screw_orbit(const ScrewParams& p, double t);
// Standard ruled data of the orbit at t = 0, in world coordinates.
RuledData screw_ruled_data(const ScrewParams& p);

// ---------------------------------------------------------------------------
// The fiber of the control system at l_o as a subset of p_k.

struct FiberVector {
  double s = 0.0;
  double t = 0.0;
  LieAlgebraElement value{Curvature::Flat, Mat4::Zero()};
};

// k(s, t) = diag(R_k(t), R_1(s)): translation by t along l_o and rotation by
// s about it.
Mat4 isotropy_element(Curvature k, double s, double t);

// Ad(k(s,t)) xi_alpha, with lower-left block R_1(s) a_1 R_k(-t) and
// upper-right block -R_k(t) a_k^T R_1(-s), where a_k = [[0, alpha], [k, 0]].
FiberVector fiber_frame(Curvature k, double alpha, double s, double t);

// <Z(X,Y), Z(U,V)> = <X,U> + <Y,V>.
double p_inner(const LieAlgebraElement& a, const LieAlgebraElement& b);

// <Ad(k(s,t)) xi_alpha, zeta>; throws InvalidInput when zeta is not in p_k.
double f_zeta(Curvature k, double alpha, const LieAlgebraElement& zeta, double s, double t);

// Z with lower-left block [[alpha, 1], [-alpha, 1]], orthogonal to the whole
// fiber when alpha^2 = k.
LieAlgebraElement degenerate_zeta(Curvature k, double alpha);

inline constexpr double kRankThreshold = 1e-8;

struct RankReport {
  int rank = 0;
  std::vector<double> singular_values;
};

// Parameter window for t when sampling the fiber.
std::pair<double, double> fiber_t_range(Curvature k);

// Numerical rank of span{fiber_frame(s_i, t_i)}, sampled with mt19937_64
// seeded by `seed`; the first n samples do not depend on `samples`, so the
// rank is monotone in it.
RankReport substantial_rank_report(Curvature k, double alpha, int samples, unsigned long long seed,
                                   double threshold = kRankThreshold);
int substantial_rank(Curvature k, double alpha, int samples, unsigned long long seed,
                     double threshold = kRankThreshold);

// Solutions (s, t) of R_1(s) a_1 = a_1 R_k(t), found by Gauss-Newton from
// every point of a grid x grid lattice; s is reported in (-pi, pi].
std::vector<std::pair<double, double>> isotropy_solutions(Curvature k, double alpha, int grid,
                                                          double tol = 1e-9);

// True iff (0, 0) is the only solution. kappa = 1 throws Unsupported,
// alpha = 0 throws InvalidInput. grid = 20 gives 400 starting points.
bool isotropy_trivial(Curvature k, double alpha, int grid = 20, double tol = 1e-9);

}  // namespace helico
