// End-to-end checks of the library's headline claims. Prints one PASS/FAIL
// line per criterion and exits nonzero if any fails.

#include "../oracles.hpp"

#include "helico/admissible.hpp"
#include "helico/errors.hpp"
#include "helico/planner.hpp"
#include "helico/quatsphere.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace helico;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

OrientedGeodesic random_line(oracle::Gen& g, double r = 3.0) {
  return OrientedGeodesic::euclidean(g.box3(r), g.unit3());
}

HelicoidalFrame random_frame(oracle::Gen& g, int k, double alpha) {
  const Curvature c = curvature_from_int(k);
  const SpacePoint p(c, g.point(k));
  const Vec4 v = g.tangent(k, p.coords());
  const Vec4 a = g.tangent_orthogonal(k, p.coords(), v);
  return HelicoidalFrame(OrientedGeodesic::from_point_direction(p, v), p, TangentVector(p, a), alpha);
}

// 1. Three helicoidal pieces reach any target.
Outcome kendall_three() {
  oracle::Gen g(101);
  Outcome o;
  int worst_pieces = 0;
  double worst_residual = 0.0;
  int failures = 0;
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < 500; ++i) {
    const double alpha = g.alpha(0.2, 5.0);
    const OrientedGeodesic from = random_line(g);
    const OrientedGeodesic to = i % 10 == 0 ? reverse(from) : random_line(g);
    try {
      Plan plan = plan_helicoidal_3(from, to, alpha);
      const OrientedGeodesic end = execute_plan(plan);
      const double r = canonical_distance(end, to);
      worst_pieces = std::max(worst_pieces, static_cast<int>(plan.pieces.size()));
      worst_residual = std::max(worst_residual, r);
    } catch (const Error& e) {
      ++failures;
      if (failures <= 3) std::printf("    pair %d (alpha %.6g): %s\n", i, alpha, e.what());
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.pass = failures == 0 && worst_pieces <= 3 && worst_residual < 1e-7 && secs < 10.0;
  std::ostringstream os;
  os << "500 pairs, failures " << failures << ", max pieces " << worst_pieces
     << ", max residual " << worst_residual << ", " << secs << " s";
  o.detail = os.str();
  return o;
}

// 2. Two helicoidal pieces cannot reverse a line.
Outcome two_piece_bound() {
  Outcome o;
  std::ostringstream os;
  const OrientedGeodesic x = OrientedGeodesic::euclidean(Vec3::Zero(), Vec3::UnitX());
  for (double alpha : {0.5, 1.0, 2.0}) {
    const double coarse = two_piece_residual(x, alpha, {10, 10, 10, 10, false});
    const double fine = two_piece_residual(x, alpha, {40, 40, 40, 40, true});
    o.pass = o.pass && coarse > 0.05 && fine >= 0.01;
    os << "alpha " << alpha << ": " << coarse << " (10^4), " << fine << " (40^4 + polish); ";
  }
  o.detail = os.str();
  return o;
}

// 3. Two admissible screw pieces reach any target.
Outcome kendall_two_screw() {
  oracle::Gen g(303);
  Outcome o;
  int ok = 0;
  int worst_pieces = 0;
  double worst_residual = 0.0;
  double worst_equation = 0.0;
  constexpr int kPairs = 200;
  for (int i = 0; i < kPairs; ++i) {
    const double alpha = g.alpha(0.2, 5.0);
    const OrientedGeodesic from = random_line(g);
    const OrientedGeodesic to = i % 10 == 0 ? reverse(from) : random_line(g);
    try {
      Plan plan = plan_homogeneous_2(from, to, alpha);
      const double r = canonical_distance(execute_plan(plan), to);
      double eq = 0.0;
      for (const Piece& p : plan.pieces) {
        const auto& s = std::get<ScrewPiece>(p);
        const auto [a, b] = screw_residuals(s.params, alpha);
        eq = std::max({eq, a, b});
      }
      if (plan.pieces.size() <= 2 && r < 1e-6 && eq < 1e-8) {
        ++ok;
      } else {
        std::printf("    pair %d: %zu pieces, residual %.3g, equation residual %.3g\n", i,
                    plan.pieces.size(), r, eq);
      }
      worst_pieces = std::max(worst_pieces, static_cast<int>(plan.pieces.size()));
      worst_residual = std::max(worst_residual, r);
      worst_equation = std::max(worst_equation, eq);
    } catch (const Error& e) {
      std::printf("    pair %d (alpha %.6g) failed: %s\n", i, alpha, e.what());
    }
  }
  const double rate = static_cast<double>(ok) / kPairs;
  o.pass = rate >= 0.99;
  std::ostringstream os;
  os << "success " << ok << "/" << kPairs << ", max pieces " << worst_pieces << ", max residual "
     << worst_residual << ", max equation residual " << worst_equation;
  o.detail = os.str();
  return o;
}

// 4. Rank of the fiber span and its degenerate direction.
Outcome controllability() {
  Outcome o;
  std::ostringstream os;
  const std::vector<std::pair<int, double>> full = {
      {0, 0.1}, {0, -0.1}, {0, 1.0}, {0, -1.0}, {0, 3.0}, {0, -3.0}, {1, 0.0}, {1, 0.5},
      {1, -0.5}, {1, 2.0}, {1, -2.0}, {-1, 0.0}, {-1, 1.0}, {-1, -1.0}, {-1, 2.0}, {-1, -2.0}};
  for (const auto& [k, a] : full) {
    const int r = substantial_rank(curvature_from_int(k), a, 128, 0);
    if (r != 4) {
      o.pass = false;
      os << "rank(" << k << "," << a << ") = " << r << "; ";
    }
  }
  double worst = 0.0;
  for (const auto& [k, a] : std::vector<std::pair<int, double>>{{0, 0.0}, {1, 1.0}, {1, -1.0}}) {
    const Curvature c = curvature_from_int(k);
    const int r = substantial_rank(c, a, 128, 0);
    os << "rank(" << k << "," << a << ") = " << r << "; ";
    if (r >= 4) o.pass = false;
    const LieAlgebraElement zeta = degenerate_zeta(c, a);
    const auto [t0, t1] = fiber_t_range(c);
    for (int i = 0; i < 20; ++i) {
      for (int j = 0; j < 20; ++j) {
        const double s = 2.0 * kPi * i / 20;
        const double t = t0 + (t1 - t0) * j / 20;
        worst = std::max(worst, std::abs(f_zeta(c, a, zeta, s, t)));
      }
    }
  }
  if (worst >= 1e-12) o.pass = false;
  os << "max |f_zeta| " << worst;
  o.detail = os.str();
  return o;
}

// 5. Closed-form screw exponential against a series oracle.
Outcome closed_form_exponential() {
  double worst = 0.0;
  for (int k : {-1, 0, 1}) {
    const Curvature c = curvature_from_int(k);
    for (double alpha : {0.0, 1.0, -1.0, 2.5, -2.5}) {
      const Mat4 xi = xi_alpha(c, alpha).matrix();
      for (int n = -8; n <= 8; ++n) {
        const double t = 0.25 * n;
        const Mat4 diff = screw_exponential(c, alpha, t).matrix() - oracle::expm(t * xi);
        worst = std::max(worst, diff.cwiseAbs().maxCoeff());
      }
    }
  }
  return {worst < 1e-10, "max |S_t - expm(t xi)| " + fmt("%.3g", worst)};
}

// 6. Spherical obstruction: one Phi factor stays fixed along 1-admissible curves.
Outcome spherical_obstruction() {
  Outcome o;
  std::ostringstream os;
  oracle::Gen g(606);
  for (double alpha : {1.0, -1.0}) {
    double worst_fixed = 0.0;
    double least_moving = 1e300;
    bool labels = true;
    for (int n = 0; n < 50; ++n) {
      const HelicoidalFrame f = random_frame(g, 1, alpha);
      std::vector<OrientedGeodesic> circles;
      Vec3 fixed0 = Vec3::Zero();
      Vec3 moving0 = Vec3::Zero();
      double moving = 0.0;
      for (int i = 0; i <= 64; ++i) {
        const OrientedGeodesic l = helicoidal_curve(f, 2.0 * kPi * i / 64);
        circles.push_back(l);
        const auto [x, y] = oracle::phi(l.base().coords(), l.dir().vec());
        const Vec3& fixed = alpha > 0 ? y : x;
        const Vec3& other = alpha > 0 ? x : y;
        if (i == 0) {
          fixed0 = fixed;
          moving0 = other;
        }
        worst_fixed = std::max(worst_fixed, (fixed - fixed0).norm());
        moving = std::max(moving, (other - moving0).norm());
      }
      least_moving = std::min(least_moving, moving);
      const HopfKind want = alpha > 0 ? HopfKind::Right : HopfKind::Left;
      labels = labels && hopf_classify(circles).kind == want;
    }
    os << "alpha " << alpha << ": fixed factor drift " << worst_fixed << ", labels "
       << (labels ? "ok" : "wrong") << "; ";
    o.pass = o.pass && worst_fixed < 1e-9 && labels && least_moving > 1e-3;
  }
  double worst_gamma = 0.0;
  for (double alpha : {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0}) {
    const HelicoidalFrame f = HelicoidalFrame::standard(Curvature::Spherical, alpha);
    for (int i = 0; i <= 40; ++i) {
      const double t = -kPi + 2.0 * kPi * i / 40;
      const OrientedGeodesic l = helicoidal_curve(f, t);
      const auto [x, y] = oracle::phi(l.base().coords(), l.dir().vec());
      const SphereCirclePoint closed = gamma_sphere(alpha, t);
      worst_gamma = std::max({worst_gamma, (x - closed.x).norm(), (y - closed.y).norm()});
    }
  }
  os << "closed-form curve error " << worst_gamma;
  o.pass = o.pass && worst_gamma < 1e-9;
  o.detail = os.str();
  return o;
}

// Tangential part of the ambient second derivative plus k J; zero for Jacobi fields.
double jacobi_equation_residual(const JacobiData& jd, int k, double s, double h) {
  auto field = [&](double x) { return jacobi_eval(jd, x).value.vec(); };
  const Vec4 p = geodesic_point(jd.sigma, s).coords();
  const Vec4 j = field(s);
  Vec4 second = (-field(s + 2 * h) + 16 * field(s + h) - 30 * j + 16 * field(s - h) - field(s - 2 * h)) /
                (12 * h * h);
  if (k != 0) second -= k * oracle::kinner(k, second, p) * p;
  return (second + k * j).norm();
}

// 7. Jacobi fields and the two admissibility tests.
Outcome jacobi_machinery() {
  Outcome o;
  std::ostringstream os;
  oracle::Gen g(707);
  double worst = 0.0;
  for (int k : {-1, 0, 1}) {
    const Curvature c = curvature_from_int(k);
    for (int n = 0; n < 100; ++n) {
      const SpacePoint p(c, g.point(k, 1.0));
      const Vec4 sv = g.tangent(k, p.coords());
      const double su = g.uniform(-2.0, 2.0);
      const double sw = g.uniform(-2.0, 2.0);
      const TangentVector sigma(p, sv);
      const TangentVector u(p, su * g.tangent_orthogonal(k, p.coords(), sv));
      const TangentVector v(p, sw * g.tangent_orthogonal(k, p.coords(), sv));
      const JacobiData jd(sigma, u, v, g.uniform(-1, 1), g.uniform(-1, 1));
      for (double s : {-1.0, -0.3, 0.0, 0.4, 1.0}) {
        worst = std::max(worst, jacobi_equation_residual(jd, k, s, 1e-3));
      }
    }
  }
  os << "max Jacobi equation residual " << worst << "; ";
  o.pass = worst < 1e-5;

  int agree_true = 0;
  int agree_false = 0;
  for (int n = 0; n < 100; ++n) {
    const double alpha = g.alpha(0.2, 5.0);
    const HelicoidalFrame f = random_frame(g, 0, alpha);
    RuledData d = helicoidal_ruled_data(f, 0.0);
    auto jacobi_of = [](const RuledData& r) {
      const SpacePoint base = SpacePoint::euclidean(r.beta);
      const double a = r.beta_dot.dot(r.V);
      return JacobiData(TangentVector::euclidean(base, r.V),
                        TangentVector::euclidean(base, r.beta_dot - a * r.V),
                        TangentVector::euclidean(base, r.V_dot), a, 0.0, 1e-6);
    };
    const bool rt = ruled_admissible(d, alpha, 1e-6);
    const bool jt = jacobi_admissible(jacobi_of(d), alpha, 1e-6);
    if (rt && jt) ++agree_true;

    // Push the striction velocity across the ruling direction: standardness
    // survives, the equations break by |alpha| eps.
    const Vec3 m = d.V.cross(d.V_dot).normalized();
    const double eps = (g.coin() ? 1.0 : -1.0) * g.uniform(2e-3, 5e-2) / std::abs(alpha);
    RuledData bad = d;
    bad.beta_dot += eps * m;
    if (g.coin()) bad.V_dot *= 1.0 + g.uniform(-0.05, 0.05);
    const double violation = std::abs(alpha) * std::abs(eps);
    const bool rf = ruled_admissible(bad, alpha, 1e-6);
    const bool jf = jacobi_admissible(jacobi_of(bad), alpha, 1e-6);
    if (!rf && !jf && violation >= 1e-3) ++agree_false;
  }
  os << "admissible frames agreeing " << agree_true << "/100, perturbed agreeing " << agree_false
     << "/100";
  o.pass = o.pass && agree_true == 100 && agree_false == 100;
  o.detail = os.str();
  return o;
}

// 8. Circular helicoids are never admissible.
Outcome circular_helicoid() {
  double worst_closed = 0.0;
  double worst_std = 0.0;
  bool all_inadmissible = true;
  for (double r : {0.1, 0.5, 1.0, 10.0}) {
    for (double alpha : {0.5, -0.5, 2.0, -2.0}) {
      const CircularHelicoidReport rep = circular_helicoid_check(r, alpha);
      const double closed = std::sqrt(alpha * alpha + 1.0 / (r * r));
      worst_closed = std::max(worst_closed, std::abs(rep.speed - closed));
      worst_std = std::max(worst_std, std::abs(rep.standardized_speed - closed));
      all_inadmissible = all_inadmissible && !rep.admissible;
    }
  }
  std::ostringstream os;
  os << "closed-form error " << worst_closed << ", standardized error " << worst_std
     << ", all inadmissible " << (all_inadmissible ? "yes" : "no");
  return {worst_closed < 1e-12 && worst_std < 1e-6 && all_inadmissible, os.str()};
}

// 9. With alpha = 0 rays only translate.
Outcome flat_degeneracy() {
  oracle::Gen g(909);
  double worst = 0.0;
  for (int n = 0; n < 50; ++n) {
    const HelicoidalFrame f = random_frame(g, 0, 0.0);
    const Vec4 d0 = f.line().dir().vec();
    for (int i = 0; i <= 100; ++i) {
      worst = std::max(worst, (helicoidal_curve(f, 0.1 * i).dir().vec() - d0).norm());
    }
  }
  int rejected = 0;
  int parallel_ok = 0;
  for (int n = 0; n < 50; ++n) {
    const OrientedGeodesic from = random_line(g);
    try {
      plan_helicoidal_3(from, random_line(g), 0.0);
    } catch (const InvalidInput&) {
      ++rejected;
    }
    const OrientedGeodesic to = OrientedGeodesic::euclidean(g.box3(3.0), from.dir().spatial());
    Plan p = plan_parallel(from, to, 1e-7);
    if (p.pieces.size() <= 1 && p.endpoint_residual < 1e-7) ++parallel_ok;
  }
  std::ostringstream os;
  os << "max direction drift " << worst << ", non-parallel rejected " << rejected
     << "/50, parallel planned " << parallel_ok << "/50";
  return {worst < 1e-12 && rejected == 50 && parallel_ok == 50, os.str()};
}

// 10. Only the identity element of the isotropy fixes the fiber generator.
Outcome isotropy() {
  Outcome o;
  std::ostringstream os;
  for (int k : {0, -1}) {
    for (double alpha : {0.5, -0.5, 1.0, -1.0, 3.0, -3.0}) {
      if (!isotropy_trivial(curvature_from_int(k), alpha, 20)) {
        o.pass = false;
        os << "nontrivial at (" << k << ", " << alpha << "); ";
      }
    }
  }
  o.detail = o.pass ? "trivial for all 12 cases on a 400-point grid" : os.str();
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"kendall number 3 for helicoidal pieces", kendall_three},
      {"two helicoidal pieces cannot reverse a line", two_piece_bound},
      {"kendall number 2 for screw pieces", kendall_two_screw},
      {"rank criterion alpha^2 != kappa", controllability},
      {"closed-form screw exponential", closed_form_exponential},
      {"spherical Hopf obstruction", spherical_obstruction},
      {"Jacobi fields and admissibility", jacobi_machinery},
      {"circular helicoid inadmissible", circular_helicoid},
      {"alpha = 0 Euclidean degeneracy", flat_degeneracy},
      {"trivial isotropy for kappa <= 0", isotropy},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
