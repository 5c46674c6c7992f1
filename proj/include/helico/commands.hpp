#pragma once

// Command-line front end. Every command reads JSON (a file or stdin), writes
// canonical JSON or mesh text, and reports its outcome through the exit code:
// 0 success, 1 invalid input, 2 planner or solver failure.

#include "helico/io.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace helico {

enum class Command { Plan, PlanScrew, CheckAdmissible, ClassifySphere, Rank, Sweep, Residual2Piece };

Command command_from_string(const std::string& name);
std::string to_string(Command c);

struct RunConfig {
  Command command = Command::Plan;
  double alpha = 1.0;
  Curvature kappa = Curvature::Flat;
  double tol = 1e-7;
  bool tol_set = false;  // distinguishes an explicit --tol from the default
  unsigned long long seed = 0;
  int samples = 128;
  int grid_s = 64;
  int grid_t = 64;
  std::string out_path;
  // Everything in the config file, for command-specific keys (alphas,
  // s_extent, two_piece_grid, polish).
  Json extra = Json::object();

  void validate() const;
};

enum ExitCode : int { kExitOk = 0, kExitInvalid = 1, kExitFailure = 2 };

// Parses "SxT" into two counts; throws InvalidInput.
std::pair<int, int> parse_grid(const std::string& text);

// Applies the keys of a config JSON object onto cfg.
void apply_config_json(RunConfig& cfg, const Json& j);

// Runs a command against already-parsed input. `input` may be null for
// commands that need none. Returns the exit code; the payload goes to out.
int run_command(const RunConfig& cfg, const Json& input, std::ostream& out);

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace helico
