#include "helico/errors.hpp"
#include "helico/planner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

namespace helico {

namespace {

constexpr double kPi = std::numbers::pi;

struct Rigid {
  Mat3 r;
  Vec3 tau;
};

// Rotation e1 -> u completed deterministically to a right-handed frame.
Mat3 frame_along(const Vec3& u) {
  int i = 0;
  u.cwiseAbs().minCoeff(&i);
  Vec3 u2 = Vec3::Unit(i) - u[i] * u;
  u2.normalize();
  Mat3 r;
  r.col(0) = u;
  r.col(1) = u2;
  r.col(2) = u.cross(u2);
  return r;
}

Mat3 rotation_x(double b) {
  Mat3 r = Mat3::Identity();
  r(1, 1) = std::cos(b);
  r(1, 2) = -std::sin(b);
  r(2, 1) = std::sin(b);
  r(2, 2) = std::cos(b);
  return r;
}

Mat3 rotation_about(const Vec3& w, double phi) {
  return Eigen::AngleAxisd(phi, w).toRotationMatrix();
}

struct Screw {
  Vec3 w;
  double phi;  // in [0, pi]
  double d;    // translation along w
  Vec3 c;      // a point on the axis
};

// Axis, angle and pitch of x -> R x + tau. Returns false for (near) pure
// translations, whose axis is undefined.
bool decompose(const Rigid& m, Screw& out) {
  const Mat3& r = m.r;
  const Vec3 vee(0.5 * (r(2, 1) - r(1, 2)), 0.5 * (r(0, 2) - r(2, 0)), 0.5 * (r(1, 0) - r(0, 1)));
  const double cs = std::clamp((r.trace() - 1.0) / 2.0, -1.0, 1.0);
  const double sn = vee.norm();
  const double phi = std::atan2(sn, cs);
  if (phi < 1e-9) return false;
  Vec3 w;
  if (sn > 0.1 || cs > 0.0) {
    w = vee / sn;
  } else {
    // Near a half-turn: (R + R^T)/2 - cos(phi) I = (1 - cos(phi)) w w^T.
    const Mat3 s = 0.5 * (r + r.transpose()) - cs * Mat3::Identity();
    int j = 0;
    s.diagonal().maxCoeff(&j);
    w = s.col(j).normalized();
    if (w.dot(vee) < 0.0) w = -w;
  }
  out.w = w;
  out.phi = phi;
  out.d = w.dot(m.tau);
  const Vec3 tp = m.tau - out.d * w;
  const double cot_half = std::cos(phi / 2.0) / std::sin(phi / 2.0);
  out.c = 0.5 * (tp + cot_half * w.cross(tp));
  return true;
}

// Position of a line relative to a screw axis, in the normal form
// rho e2 + s (sin eta e1 + cos eta e3) with sin eta > 0.
struct AxisRelation {
  Vec3 w;
  Vec3 n;
  Vec3 foot;  // on the axis
  double rho = 0.0;
  double sin_eta = 0.0;
  double cos_eta = 0.0;
  double phi = 0.0;  // signed, about w
  double d = 0.0;
};

bool relate(const Screw& sc, const Vec3& base, const Vec3& u, AxisRelation& out) {
  Vec3 w = sc.w;
  const double a = w.dot(u);
  const double den = 1.0 - a * a;
  if (den < 1e-12) return false;
  const Vec3 diff = sc.c - base;
  // Closest points c + s1 w (axis) and base + s2 u (line).
  const double s1 = (a * diff.dot(u) - diff.dot(w)) / den;
  const double s2 = (diff.dot(u) - a * diff.dot(w)) / den;
  const Vec3 fa = sc.c + s1 * w;
  const Vec3 fl = base + s2 * u;
  double rho = (fl - fa).norm();
  Vec3 n;
  if (rho > 1e-12) {
    n = (fl - fa) / rho;
  } else {
    rho = 0.0;
    n = w.cross(u).normalized();
  }
  n = (n - n.dot(w) * w).normalized();
  double phi = sc.phi;
  double d = sc.d;
  double sin_eta = u.dot(n.cross(w));
  double cos_eta = u.dot(w);
  if (sin_eta < 0.0) {
    w = -w;
    phi = -phi;
    d = -d;
    sin_eta = -sin_eta;
    cos_eta = -cos_eta;
  }
  out = {w, n, fa, rho, sin_eta, cos_eta, phi, d};
  return true;
}

class HopSolver {
 public:
  HopSolver(const OrientedGeodesic& from, const OrientedGeodesic& to, double alpha,
            const ScrewHopOptions& opt)
      : from_(from), to_(to), alpha_(alpha), opt_(opt) {
    bl_ = from.base().spatial();
    u_ = from.dir().spatial();
    bm_ = to.base().spatial();
    rl_ = frame_along(u_);
    rm_ = frame_along(to.dir().spatial());
    scale_ = std::max({1.0, bl_.norm(), bm_.norm()});
  }

  // Motion F(to) Rx(b) Tx(a) F(from)^-1, which carries `from` onto `to`.
  Rigid motion(double a, double b) const {
    const Mat3 r = rm_ * rotation_x(b) * rl_.transpose();
    return {r, rm_ * (a * Vec3::UnitX()) - r * bl_ + bm_};
  }

  // Admissibility mismatch d - (1/alpha - rho cot eta)(phi + 2 pi n), shared
  // across windings through its two coefficients.
  struct Sample {
    bool valid = false;
    AxisRelation rel;
    double k = 0.0;
  };

  Sample sample(const Rigid& m) const {
    Sample s;
    Screw sc;
    if (!decompose(m, sc) || !relate(sc, bl_, u_, s.rel) || s.rel.sin_eta < 1e-6) return s;
    s.k = 1.0 / alpha_ - s.rel.rho * s.rel.cos_eta / s.rel.sin_eta;
    s.valid = true;
    return s;
  }

  static double mismatch(const Sample& s, int n) {
    return s.rel.d - s.k * (s.rel.phi + 2.0 * kPi * n);
  }

  // Builds and verifies the piece for a sample with vanishing mismatch.
  std::optional<ScrewPiece> build(const Sample& s, int n) const {
    const double total = s.rel.phi + 2.0 * kPi * n;
    if (std::abs(total) < 1e-12) return std::nullopt;
    if (std::abs(mismatch(s, n)) > 1e-8 * scale_) return std::nullopt;
    ScrewParams p;
    p.rho = s.rel.rho;
    p.eta = std::atan2(s.rel.sin_eta, s.rel.cos_eta);
    p.theta = (total > 0 ? 1.0 : -1.0) * std::abs(alpha_) / s.rel.sin_eta;
    p.lambda = p.theta * s.k;
    Mat3 h;
    h.col(0) = s.rel.n.cross(s.rel.w);
    h.col(1) = s.rel.n;
    h.col(2) = s.rel.w;
    p.frame = Isometry::euclidean(h, s.rel.foot);
    const double t = total / p.theta;
    const double verify = opt_.tol * scale_ * 10.0;
    if (canonical_distance(screw_start_line(p), from_) > verify) return std::nullopt;
    if (canonical_distance(screw_orbit(p, t), to_) > verify) return std::nullopt;
    if (!screw_admissible(p, alpha_, 1e-10)) return std::nullopt;
    return ScrewPiece{p, from_, t};
  }

  void offer(const std::optional<ScrewPiece>& c) {
    if (c && (!best_ || c->duration < best_->duration)) best_ = c;
  }

  // Half-turn about the bisector of the two directions through a point of
  // `from`, followed by the translation that lands on `to`; admissible when
  // the translation is an odd multiple of pi/alpha (rho = 0 there).
  void try_half_turn_seed() {
    const Vec3 u2 = to_.dir().spatial();
    const Vec3 sum = u_ + u2;
    if (sum.norm() < 1e-9) return;
    const Vec3 w = sum.normalized();
    Mat3 a;
    a.col(0) = u_;
    a.col(1) = w;
    a.col(2) = -u2;
    if (std::abs(a.determinant()) < 1e-9) return;
    const Vec3 x = a.fullPivLu().solve(bm_ - bl_);
    const Vec3 p = bl_ + x[0] * u_;
    const Mat3 r = rotation_about(w, kPi);
    const Sample s = sample({r, p - r * p + x[1] * w});
    if (!s.valid) return;
    for (int n = -opt_.max_winding; n <= opt_.max_winding; ++n) offer(build(s, n));
  }

  void grid_search() {
    const int na = opt_.grid_a;
    const int nb = opt_.grid_b;
    const double span = 3.0 * ((bm_ - bl_).norm() + kPi / std::abs(alpha_) + 1.0);
    std::vector<Sample> grid(static_cast<std::size_t>(na) * nb);
    auto a_at = [&](double i) { return -span + 2.0 * span * i / (na - 1); };
    auto b_at = [&](double j) { return -kPi + 2.0 * kPi * j / nb; };
    for (int i = 0; i < na; ++i) {
      for (int j = 0; j < nb; ++j) grid[i * nb + j] = sample(motion(a_at(i), b_at(j)));
    }
    auto refine = [&](double i0, double j0, double i1, double j1, int n) {
      auto h_at = [&](double lam, Sample& s) {
        s = sample(motion(a_at(i0 + lam * (i1 - i0)), b_at(j0 + lam * (j1 - j0))));
        return s.valid ? mismatch(s, n) : std::nan("");
      };
      Sample s;
      double lo = 0.0;
      double hi = 1.0;
      const double flo = h_at(lo, s);
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = h_at(mid, s);
        if (std::isnan(fm)) return;
        if ((fm > 0) == (flo > 0)) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      h_at(0.5 * (lo + hi), s);
      if (s.valid) offer(build(s, n));
    };
    for (int n = -opt_.max_winding; n <= opt_.max_winding; ++n) {
      for (int i = 0; i < na; ++i) {
        for (int j = 0; j < nb; ++j) {
          const Sample& s0 = grid[i * nb + j];
          if (!s0.valid) continue;
          const double h0 = mismatch(s0, n);
          if (i + 1 < na) {
            const Sample& s1 = grid[(i + 1) * nb + j];
            if (s1.valid && (h0 > 0) != (mismatch(s1, n) > 0)) refine(i, j, i + 1, j, n);
          }
          const Sample& s2 = grid[i * nb + (j + 1) % nb];
          if (s2.valid && (h0 > 0) != (mismatch(s2, n) > 0)) refine(i, j, i, j + 1, n);
        }
      }
    }
  }

  const std::optional<ScrewPiece>& best() const { return best_; }

 private:
  OrientedGeodesic from_;
  OrientedGeodesic to_;
  double alpha_;
  ScrewHopOptions opt_;
  Vec3 bl_;
  Vec3 u_;
  Vec3 bm_;
  Mat3 rl_;
  Mat3 rm_;
  double scale_ = 1.0;
  std::optional<ScrewPiece> best_;
};

}  // namespace

std::optional<ScrewPiece> screw_hop_solve(const OrientedGeodesic& from, const OrientedGeodesic& to,
                                          double alpha, const ScrewHopOptions& opt) {
  if (from.kappa() != Curvature::Flat || to.kappa() != Curvature::Flat) {
    throw Unsupported("screw hops are solved for lines of R^3");
  }
  if (alpha == 0.0 || !std::isfinite(alpha)) throw InvalidInput("alpha must be nonzero");
  if (opt.grid_a < 2 || opt.grid_b < 2) throw InvalidInput("screw hop grid too small");

  if (canonical_distance(from, to) <= opt.tol) {
    // The standard orbit about an axis meeting `from` at a right angle, run
    // for zero time.
    ScrewParams p;
    p.rho = 0.0;
    p.eta = kPi / 2.0;
    p.theta = alpha;
    p.lambda = 1.0;
    p.frame = Isometry::euclidean(frame_along(from.dir().spatial()), from.base().spatial());
    return ScrewPiece{p, from, 0.0};
  }

  HopSolver solver(from, to, alpha, opt);
  solver.try_half_turn_seed();
  if (solver.best()) return solver.best();
  solver.grid_search();
  return solver.best();
}

namespace {

std::vector<OrientedGeodesic> intermediate_lines(const OrientedGeodesic& from,
                                                 const OrientedGeodesic& to, double alpha) {
  const CommonPerpendicular cp = common_perpendicular_euclidean(from, to);
  const Vec3 q1 = cp.foot1.spatial();
  const Vec3 q2 = cp.foot2.spatial();
  const Vec3 mid = 0.5 * (q1 + q2);
  const Vec3 u = from.dir().spatial();
  const Vec3 u2 = to.dir().spatial();

  std::vector<Vec3> dirs;
  if (!cp.parallel) {
    dirs.push_back(u.cross(u2).normalized());
  } else {
    // Any direction orthogonal to both works; sweep the circle of them.
    const Mat3 f = frame_along(u);
    Vec3 first = f.col(1);
    if (cp.distance > 1e-9) first = (q2 - q1).normalized();
    const Vec3 second = u.cross(first);
    for (int k = 0; k < 8; ++k) {
      const double ang = kPi * k / 4.0;
      dirs.push_back(std::cos(ang) * first + std::sin(ang) * second);
    }
  }

  const double unit = kPi / std::abs(alpha);
  const double offsets[] = {0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0};
  std::vector<OrientedGeodesic> out;
  for (const Vec3& m : dirs) {
    const Mat3 f = frame_along(m);
    for (double o1 : offsets) {
      for (double o2 : offsets) {
        const Vec3 p = mid + unit * (o1 * f.col(1) + o2 * f.col(2));
        for (const double sign : {1.0, -1.0}) out.push_back(OrientedGeodesic::euclidean(p, sign * m));
      }
    }
  }
  return out;
}

}  // namespace

Plan plan_homogeneous_2(const OrientedGeodesic& from, const OrientedGeodesic& to, double alpha,
                        double tol, const ScrewHopOptions& opt) {
  if (from.kappa() != Curvature::Flat || to.kappa() != Curvature::Flat) {
    throw Unsupported("plan_homogeneous_2 works on lines of R^3");
  }
  if (alpha == 0.0 || !std::isfinite(alpha)) throw InvalidInput("alpha must be nonzero");
  Plan plan{alpha, {}, from, to, 0.0};
  if (canonical_distance(from, to) <= tol) {
    execute_plan(plan);
    return plan;
  }
  if (auto hop = screw_hop_solve(from, to, alpha, opt)) {
    plan.pieces.push_back(*hop);
    execute_plan(plan);
    if (plan.endpoint_residual < tol) return plan;
    plan.pieces.clear();
  }
  const auto candidates = intermediate_lines(from, to, alpha);
  int first_ok = 0;
  for (const auto& mid : candidates) {
    auto hop1 = screw_hop_solve(from, mid, alpha, opt);
    if (!hop1) continue;
    ++first_ok;
    auto hop2 = screw_hop_solve(mid, to, alpha, opt);
    if (!hop2) continue;
    plan.pieces = {*hop1, *hop2};
    execute_plan(plan);
    if (plan.endpoint_residual < tol) return plan;
    plan.pieces.clear();
  }
  const CommonPerpendicular cp = common_perpendicular_euclidean(from, to);
  std::ostringstream os;
  os << "no two-hop screw plan found: " << candidates.size() << " intermediate lines tried, "
     << first_ok << " reachable in one hop; distance " << cp.distance << ", direction cosine "
     << from.dir().spatial().dot(to.dir().spatial()) << ", alpha " << alpha;
  throw PlannerFailure(os.str());
}

}  // namespace helico
