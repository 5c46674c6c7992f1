#include "helico/errors.hpp"
#include "helico/planner.hpp"

#include <sstream>

namespace helico {

OrientedGeodesic piece_at(const Piece& p, double t) {
  if (const auto* h = std::get_if<HelicoidalPiece>(&p)) return helicoidal_curve(h->frame, t);
  return screw_orbit(std::get<ScrewPiece>(p).params, t);
}

OrientedGeodesic piece_start(const Piece& p) {
  if (const auto* h = std::get_if<HelicoidalPiece>(&p)) return h->frame.line();
  return std::get<ScrewPiece>(p).start;
}

OrientedGeodesic piece_end(const Piece& p) {
  const double d = std::visit([](const auto& x) { return x.duration; }, p);
  return piece_at(p, d);
}

OrientedGeodesic execute_plan(Plan& plan, double chain_tol) {
  OrientedGeodesic current = plan.source;
  for (std::size_t i = 0; i < plan.pieces.size(); ++i) {
    const double gap = canonical_distance(piece_start(plan.pieces[i]), current);
    if (gap > chain_tol) {
      std::ostringstream os;
      os << "piece " << i << " starts " << gap << " away from the previous endpoint";
      throw BrokenPlan(os.str());
    }
    current = piece_end(plan.pieces[i]);
  }
  plan.endpoint_residual = canonical_distance(current, plan.target);
  return current;
}

Plan plan_parallel(const OrientedGeodesic& from, const OrientedGeodesic& to, double tol) {
  if (from.kappa() != Curvature::Flat || to.kappa() != Curvature::Flat) {
    throw Unsupported("plan_parallel works on lines of R^3");
  }
  Plan plan{0.0, {}, from, to, 0.0};
  if ((from.dir().vec() - to.dir().vec()).norm() > tol) {
    throw InvalidInput(
        "with alpha = 0 a helicoidal motion only translates the line; the target direction "
        "must equal the source direction");
  }
  const CommonPerpendicular cp = common_perpendicular_euclidean(from, to);
  if (cp.distance > tol) {
    const Vec3 a = (cp.foot2.spatial() - cp.foot1.spatial()) / cp.distance;
    HelicoidalFrame f(from, cp.foot1, TangentVector::euclidean(cp.foot1, a), 0.0);
    plan.pieces.push_back(HelicoidalPiece{f, cp.distance});
  }
  execute_plan(plan);
  return plan;
}

}  // namespace helico
