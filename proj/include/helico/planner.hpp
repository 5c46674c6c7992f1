#pragma once

// Piecewise-admissible path planning between oriented lines of R^3.
//
// plan_helicoidal_3 joins any two lines with at most three alpha-helicoidal
// pieces; plan_homogeneous_2 uses at most two alpha-admissible screw orbits.

#include "helico/admissible.hpp"
#include "helico/lines.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace helico {

struct HelicoidalPiece {
  HelicoidalFrame frame;
  double duration = 0.0;
};

struct ScrewPiece {
  ScrewParams params;
  OrientedGeodesic start;
  double duration = 0.0;
};

using Piece = std::variant<HelicoidalPiece, ScrewPiece>;

OrientedGeodesic piece_start(const Piece& p);
OrientedGeodesic piece_end(const Piece& p);
// Position of the piece at local time t in [0, duration].
OrientedGeodesic piece_at(const Piece& p, double t);

struct Plan {
  double alpha = 0.0;
  std::vector<Piece> pieces;
  OrientedGeodesic source;
  OrientedGeodesic target;
  double endpoint_residual = 0.0;
};

inline constexpr double kChainTol = 1e-7;

// Runs the pieces in order and returns the canonical endpoint, updating
// plan.endpoint_residual. Throws BrokenPlan if a piece does not start where
// the previous one (or the source) ended.
OrientedGeodesic execute_plan(Plan& plan, double chain_tol = kChainTol);

// At most three helicoidal pieces from `from` to `to`. alpha = 0 throws
// InvalidInput (see plan_parallel).
Plan plan_helicoidal_3(const OrientedGeodesic& from, const OrientedGeodesic& to, double alpha,
                       double tol = kLineEqualTol);

// alpha = 0 planner: one translation-only piece between lines with the same
// direction. Throws InvalidInput when the directions differ.
Plan plan_parallel(const OrientedGeodesic& from, const OrientedGeodesic& to,
                   double tol = kLineEqualTol);

struct ScrewHopOptions {
  int grid_a = 64;
  int grid_b = 64;
  int max_winding = 3;
  double tol = 1e-9;
};

// One alpha-admissible screw orbit carrying `from` onto `to`, or nullopt.
std::optional<ScrewPiece> screw_hop_solve(const OrientedGeodesic& from,
                                          const OrientedGeodesic& to, double alpha,
                                          const ScrewHopOptions& opt = {});

// Diagnostics from the last failing plan_homogeneous_2 call are carried in the
// PlannerFailure message.
Plan plan_homogeneous_2(const OrientedGeodesic& from, const OrientedGeodesic& to, double alpha,
                        double tol = 1e-6, const ScrewHopOptions& opt = {});

struct TwoPieceGrid {
  int n_t0 = 10;
  int n_s = 10;
  int n_psi = 10;
  int n_t1 = 10;
  // Local refinement of the best grid points by coordinate search.
  bool polish = false;
};

struct TwoPieceResult {
  double residual = 0.0;
  double t0 = 0.0;
  double s = 0.0;
  double psi = 0.0;
  double t1 = 0.0;
  long evaluations = 0;
};

// Minimum over the grid of the canonical distance from the endpoint of a
// two-piece helicoidal path starting at l to `target`. The first piece is
// (l, base, e) for a fixed unit e orthogonal to l, run for t0; the second
// piece is anchored at the point s along the new ray from the first axis,
// with axis angle psi, run for t1. t0, t1 range over [-2 pi/|alpha|,
// 2 pi/|alpha|] and s over the same window.
TwoPieceResult two_piece_search(const OrientedGeodesic& l, const OrientedGeodesic& target,
                                double alpha, const TwoPieceGrid& grid = {});

// two_piece_search towards reverse(l).
double two_piece_residual(const OrientedGeodesic& l, double alpha, const TwoPieceGrid& grid = {});

}  // namespace helico
