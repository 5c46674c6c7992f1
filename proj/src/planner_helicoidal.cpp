#include "helico/errors.hpp"
#include "helico/planner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace helico {

namespace {

constexpr double kPi = std::numbers::pi;

void require_flat(const OrientedGeodesic& a, const OrientedGeodesic& b) {
  if (a.kappa() != Curvature::Flat || b.kappa() != Curvature::Flat) {
    throw Unsupported("the planners work on lines of R^3 (kappa = 0)");
  }
}

TangentVector flat_vector(const SpacePoint& p, const Vec3& v) {
  return TangentVector::euclidean(p, v);
}

// Bisection for a sign change of f on [lo, hi] with f(lo) > 0 >= f(hi).
template <class F>
double bisect(const F& f, double lo, double hi) {
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct Crossings {
  double first = 0.0;
  double second = 0.0;
};

// First and second times in [0, pi/|alpha|] at which the distance from the
// ray of `f` to `target` equals pi/(2|alpha|). The distance starts above that
// value, drops to zero at pi/(2|alpha|) and climbs back.
Crossings quarter_turn_crossings(const HelicoidalFrame& f, const OrientedGeodesic& target,
                                 double alpha) {
  const double q = kPi / (2.0 * std::abs(alpha));
  auto g = [&](double t) {
    return common_perpendicular_euclidean(helicoidal_curve(f, t), target).distance - q;
  };
  const double horizon = 2.0 * q;
  constexpr int kSamples = 256;
  Crossings out;
  if (g(0.0) <= 0.0) {
    out.first = 0.0;
    out.second = horizon;
    return out;
  }
  double prev = 0.0;
  int i = 1;
  for (; i <= kSamples; ++i) {
    const double t = horizon * i / kSamples;
    if (g(t) <= 0.0) {
      out.first = bisect(g, prev, t);
      break;
    }
    prev = t;
  }
  if (i > kSamples) {
    std::ostringstream os;
    os << "no quarter-turn crossing found for piece 2 (alpha = " << alpha << ")";
    throw PlannerFailure(os.str());
  }
  // Past the zero of the distance, look for the upward crossing.
  prev = horizon * i / kSamples;
  out.second = horizon;
  for (int j = i + 1; j <= kSamples; ++j) {
    const double t = horizon * j / kSamples;
    if (g(t) > 0.0) {
      out.second = bisect([&](double x) { return -g(x); }, prev, t);
      break;
    }
    prev = t;
  }
  return out;
}

}  // namespace

Plan plan_helicoidal_3(const OrientedGeodesic& from, const OrientedGeodesic& to, double alpha,
                       double tol) {
  require_flat(from, to);
  if (!std::isfinite(alpha)) throw InvalidInput("alpha must be finite");
  if (alpha == 0.0) {
    throw InvalidInput(
        "alpha = 0 helicoidal motions only translate lines parallel to themselves; use "
        "plan_parallel for targets with the same direction");
  }
  Plan plan{alpha, {}, from, to, 0.0};
  if (canonical_distance(from, to) <= tol) {
    execute_plan(plan);
    return plan;
  }

  const NormalizedPair np = normalize_pair(from, to);
  const Isometry ginv = np.g.inverse();
  const OrientedGeodesic local_from = act_on_geodesic(np.g, from);
  const OrientedGeodesic x_axis = OrientedGeodesic::euclidean(Vec3::Zero(), Vec3::UnitX());
  const double q = kPi / (2.0 * std::abs(alpha));
  const double d = np.d;

  // Piece 1 turns the ray about the axis through d e2 along e2. Its direction
  // is (sin(chi + alpha t), 0, cos(chi + alpha t)); stop when it points along
  // -e3 (alpha > 0) or +e3 (alpha < 0) with the axis point beyond q.
  const SpacePoint p0 = SpacePoint::euclidean(d * Vec3::UnitY());
  const HelicoidalFrame frame1(local_from, p0, flat_vector(p0, Vec3::UnitY()), alpha);
  const double chi = std::atan2(np.v[0], np.v[2]);
  const double omega = alpha > 0.0 ? kPi : 0.0;
  const double period = 2.0 * kPi / std::abs(alpha);
  const double t_min = std::max(0.0, q - d);
  const double base = (omega - chi) / alpha;
  double t1 = base + period * std::ceil((t_min - base) / period - 1e-12);
  {
    const Vec3 dir = helicoidal_curve(frame1, t1).dir().spatial();
    t1 -= dir[0] / (alpha * dir[2]);
  }
  t1 = std::max(t1, 0.0);
  const OrientedGeodesic l1 = helicoidal_curve(frame1, t1);

  // Piece 2 slides the ray along e1 while turning it in the e2-e3 plane; its
  // distance to the x-axis is (d + t1)|cos(alpha t)|.
  const SpacePoint p1 = SpacePoint::euclidean((d + t1) * Vec3::UnitY());
  const HelicoidalFrame frame2(l1, p1, flat_vector(p1, Vec3::UnitX()), alpha);
  const Crossings cross = quarter_turn_crossings(frame2, x_axis, alpha);

  // Piece 3 runs a quarter turn along the common perpendicular to the x-axis.
  struct Candidate {
    double t2;
    HelicoidalFrame frame3;
    double error;
  };
  std::vector<Candidate> candidates;
  for (const double t2 : {cross.first, cross.second}) {
    const OrientedGeodesic l2 = helicoidal_curve(frame2, t2);
    const CommonPerpendicular cp = common_perpendicular_euclidean(l2, x_axis);
    if (cp.distance < 1e-12) continue;
    const Vec3 a = (cp.foot2.spatial() - cp.foot1.spatial()) / cp.distance;
    for (const double sign : {1.0, -1.0}) {
      const HelicoidalFrame f3(l2, cp.foot1, flat_vector(cp.foot1, sign * a), alpha);
      const double err = canonical_distance(helicoidal_curve(f3, q), x_axis);
      candidates.push_back({t2, f3, err});
    }
  }
  if (candidates.empty()) throw PlannerFailure("piece 3: no usable common perpendicular");
  const auto best = std::min_element(candidates.begin(), candidates.end(),
                                     [](const auto& a, const auto& b) { return a.error < b.error; });
  if (best->error > 1e-6) {
    std::ostringstream os;
    os << "piece 3 misses the target: best candidate error " << best->error << " (d = " << d
       << ", t1 = " << t1 << ", t2 = " << best->t2 << ", alpha = " << alpha << ")";
    throw PlannerFailure(os.str());
  }

  const std::array<HelicoidalPiece, 3> local = {HelicoidalPiece{frame1, t1},
                                                HelicoidalPiece{frame2, best->t2},
                                                HelicoidalPiece{best->frame3, q}};
  for (const auto& piece : local) {
    if (piece.duration <= 0.0) continue;
    plan.pieces.push_back(HelicoidalPiece{act_on_frame(ginv, piece.frame), piece.duration});
  }
  execute_plan(plan);
  return plan;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> lattice(int n, double lo, double hi) {
  std::vector<double> out;
  if (n <= 1) {
    out.push_back(0.5 * (lo + hi));
    return out;
  }
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  return out;
}

struct TwoPieceEvaluator {
  HelicoidalFrame frame0;
  OrientedGeodesic target;
  double alpha;
  long evaluations = 0;

  // Second frame for the given first-piece time, anchor offset s and axis angle.
  HelicoidalFrame second_frame(double t0, double s, double psi) const {
    const OrientedGeodesic l1 = helicoidal_curve(frame0, t0);
    const Vec3 anchor = geodesic_point(frame0.axis(), t0).spatial();
    const Vec3 dir = l1.dir().spatial();
    const Vec3 e = Vec3::UnitY();
    const Vec3 a = std::cos(psi) * e + std::sin(psi) * dir.cross(e);
    const SpacePoint p = SpacePoint::euclidean(anchor + s * dir);
    return HelicoidalFrame(l1, p, TangentVector::euclidean(p, a.normalized()), alpha);
  }

  double distance(const HelicoidalFrame& f1, double t1) {
    ++evaluations;
    return canonical_distance(helicoidal_curve(f1, t1), target);
  }

  double operator()(const std::array<double, 4>& x) {
    return distance(second_frame(x[0], x[1], x[2]), x[3]);
  }
};

}  // namespace

TwoPieceResult two_piece_search(const OrientedGeodesic& l, const OrientedGeodesic& target,
                                double alpha, const TwoPieceGrid& grid) {
  require_flat(l, target);
  if (alpha == 0.0 || !std::isfinite(alpha)) throw InvalidInput("alpha must be nonzero");
  if (grid.n_t0 < 1 || grid.n_s < 1 || grid.n_psi < 1 || grid.n_t1 < 1) {
    throw InvalidInput("two-piece grid counts must be positive");
  }
  const NormalizedPair np = normalize_pair(l, l);
  const OrientedGeodesic x_axis = OrientedGeodesic::euclidean(Vec3::Zero(), Vec3::UnitX());
  const SpacePoint o = SpacePoint::euclidean(Vec3::Zero());
  TwoPieceEvaluator eval{HelicoidalFrame(x_axis, o, TangentVector::euclidean(o, Vec3::UnitY()), alpha),
                         act_on_geodesic(np.g, target), alpha};

  const double span = 2.0 * kPi / std::abs(alpha);
  const auto t0s = lattice(grid.n_t0, -span, span);
  const auto ss = lattice(grid.n_s, -span, span);
  const auto t1s = lattice(grid.n_t1, -span, span);
  std::vector<double> psis;
  for (int i = 0; i < grid.n_psi; ++i) psis.push_back(2.0 * kPi * i / grid.n_psi);

  struct Sample {
    double value;
    std::array<double, 4> x;
  };
  std::vector<Sample> best;
  constexpr std::size_t kKeep = 8;
  for (double t0 : t0s) {
    for (double s : ss) {
      for (double psi : psis) {
        const HelicoidalFrame f1 = eval.second_frame(t0, s, psi);
        for (double t1 : t1s) {
          const double v = eval.distance(f1, t1);
          if (best.size() < kKeep || v < best.back().value) {
            best.push_back({v, {t0, s, psi, t1}});
            std::sort(best.begin(), best.end(),
                      [](const Sample& a, const Sample& b) { return a.value < b.value; });
            if (best.size() > kKeep) best.pop_back();
          }
        }
      }
    }
  }

  if (grid.polish) {
    const std::array<double, 4> steps = {
        2.0 * span / std::max(1, grid.n_t0 - 1), 2.0 * span / std::max(1, grid.n_s - 1),
        2.0 * kPi / grid.n_psi, 2.0 * span / std::max(1, grid.n_t1 - 1)};
    for (Sample& sm : best) {
      std::array<double, 4> h = steps;
      for (int round = 0; round < 40; ++round) {
        bool moved = false;
        for (int c = 0; c < 4; ++c) {
          for (const double dir : {1.0, -1.0}) {
            auto y = sm.x;
            y[c] += dir * h[c];
            const double v = eval(y);
            if (v < sm.value) {
              sm = {v, y};
              moved = true;
            }
          }
        }
        if (!moved) {
          for (double& hc : h) hc *= 0.5;
        }
      }
    }
    std::sort(best.begin(), best.end(),
              [](const Sample& a, const Sample& b) { return a.value < b.value; });
  }

  TwoPieceResult out;
  out.residual = best.front().value;
  out.t0 = best.front().x[0];
  out.s = best.front().x[1];
  out.psi = best.front().x[2];
  out.t1 = best.front().x[3];
  out.evaluations = eval.evaluations;
  return out;
}

double two_piece_residual(const OrientedGeodesic& l, double alpha, const TwoPieceGrid& grid) {
  return two_piece_search(l, reverse(l), alpha, grid).residual;
}

}  // namespace helico
