#include "helico/commands.hpp"

#include "helico/admissible.hpp"
#include "helico/errors.hpp"
#include "helico/mesh.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace helico {

namespace {

struct CommandName {
  Command c;
  const char* name;
};

constexpr CommandName kCommands[] = {
    {Command::Plan, "plan"},
    {Command::PlanScrew, "plan-screw"},
    {Command::CheckAdmissible, "check-admissible"},
    {Command::ClassifySphere, "classify-sphere"},
    {Command::Rank, "rank"},
    {Command::Sweep, "sweep"},
    {Command::Residual2Piece, "residual-2piece"},
};

}  // namespace

Command command_from_string(const std::string& name) {
  for (const auto& c : kCommands) {
    if (name == c.name) return c.c;
  }
  throw InvalidInput("unknown command '" + name + "'");
}

std::string to_string(Command c) {
  for (const auto& e : kCommands) {
    if (e.c == c) return e.name;
  }
  return "?";
}

void RunConfig::validate() const {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw InvalidInput("tol must be positive");
  if (samples < 1) throw InvalidInput("samples must be at least 1");
  if (grid_s < 2 || grid_t < 2) throw InvalidInput("grid counts must be at least 2");
  if (!std::isfinite(alpha)) throw InvalidInput("alpha must be finite");
}

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw InvalidInput("grid must look like SxT, got '" + text + "'");
  try {
    std::size_t used_s = 0;
    std::size_t used_t = 0;
    const std::string a = text.substr(0, x);
    const std::string b = text.substr(x + 1);
    const int s = std::stoi(a, &used_s);
    const int t = std::stoi(b, &used_t);
    if (used_s != a.size() || used_t != b.size()) throw std::invalid_argument("trailing");
    return {s, t};
  } catch (const std::logic_error&) {
    throw InvalidInput("grid must look like SxT, got '" + text + "'");
  }
}

void apply_config_json(RunConfig& cfg, const Json& j) {
  if (!j.is_object()) throw InvalidInput("config: expected a JSON object");
  const std::string where = "config";
  if (j.contains("command")) {
    if (!j["command"].is_string()) throw InvalidInput("config.command: expected a string");
    cfg.command = command_from_string(j["command"].get<std::string>());
  }
  if (j.contains("alpha")) cfg.alpha = require_number(j, "alpha", where);
  if (j.contains("kappa")) {
    if (!j["kappa"].is_number_integer()) throw InvalidInput("config.kappa: expected -1, 0 or 1");
    cfg.kappa = curvature_from_int(j["kappa"].get<int>());
  }
  if (j.contains("tol")) {
    cfg.tol = require_number(j, "tol", where);
    cfg.tol_set = true;
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw InvalidInput("config.seed: expected a non-negative integer");
    cfg.seed = j["seed"].get<unsigned long long>();
  }
  if (j.contains("samples")) {
    if (!j["samples"].is_number_integer()) throw InvalidInput("config.samples: expected an integer");
    cfg.samples = j["samples"].get<int>();
  }
  if (j.contains("grid")) {
    const Json& g = j["grid"];
    if (g.is_string()) {
      std::tie(cfg.grid_s, cfg.grid_t) = parse_grid(g.get<std::string>());
    } else if (g.is_array() && g.size() == 2 && g[0].is_number_integer() && g[1].is_number_integer()) {
      cfg.grid_s = g[0].get<int>();
      cfg.grid_t = g[1].get<int>();
    } else {
      throw InvalidInput("config.grid: expected \"SxT\" or [S, T]");
    }
  }
  if (j.contains("out")) {
    if (!j["out"].is_string()) throw InvalidInput("config.out: expected a string");
    cfg.out_path = j["out"].get<std::string>();
  }
  for (auto it = j.begin(); it != j.end(); ++it) cfg.extra[it.key()] = it.value();
}

// ---------------------------------------------------------------------------

namespace {

const Json& need_input(const Json& input, const std::string& command) {
  if (input.is_null()) throw InvalidInput(command + ": no input JSON given");
  return input;
}

// A setting read from the input first and the config file second.
const Json* setting(const RunConfig& cfg, const Json& input, const std::string& key) {
  if (input.is_object() && input.contains(key)) return &input[key];
  if (cfg.extra.contains(key)) return &cfg.extra[key];
  return nullptr;
}

Json plan_report(const Plan& plan) { return to_json(plan); }

int cmd_plan(const RunConfig& cfg, const Json& input, std::ostream& out, bool screw) {
  const Json& in = need_input(input, "plan");
  const OrientedGeodesic from = geodesic_from_json(require_field(in, "source", "input"), "input.source");
  const OrientedGeodesic to = geodesic_from_json(require_field(in, "target", "input"), "input.target");
  Plan plan = screw ? plan_homogeneous_2(from, to, cfg.alpha, std::max(cfg.tol, 1e-9))
              : cfg.alpha == 0.0 ? plan_parallel(from, to, cfg.tol)
                                 : plan_helicoidal_3(from, to, cfg.alpha, cfg.tol);
  out << dump_canonical(plan_report(plan)) << "\n";
  return plan.endpoint_residual < cfg.tol ? kExitOk : kExitFailure;
}

TangentVector tangent_from_json(const SpacePoint& base, const Json& j, const std::string& where) {
  try {
    return TangentVector(base, vec4_from_json(j, where));
  } catch (const InvalidInput& e) {
    throw InvalidInput(where + ": " + e.what());
  }
}

int cmd_check(const RunConfig& cfg, const Json& input, std::ostream& out) {
  const Json& in = need_input(input, "check-admissible");
  const Json& kind_j = require_field(in, "kind", "input");
  if (!kind_j.is_string()) throw InvalidInput("input.kind: expected a string");
  const std::string kind = kind_j.get<std::string>();
  const double tol = cfg.tol_set ? cfg.tol : 1e-9;
  Json report = {{"kind", kind}, {"alpha", cfg.alpha}};

  if (kind == "ruled") {
    RuledData d;
    d.beta_dot = vec3_from_json(require_field(in, "beta_dot", "input"), "input.beta_dot");
    d.V = vec3_from_json(require_field(in, "V", "input"), "input.V");
    d.V_dot = vec3_from_json(require_field(in, "V_dot", "input"), "input.V_dot");
    report["admissible"] = ruled_admissible(d, cfg.alpha, tol);
    report["residual"] = ruled_residual(d, cfg.alpha);
  } else if (kind == "jacobi") {
    const Json& sj = require_field(in, "sigma", "input");
    const SpacePoint base(cfg.kappa, vec4_from_json(require_field(sj, "base", "input.sigma"), "input.sigma.base"));
    const TangentVector sigma = tangent_from_json(base, require_field(sj, "vec", "input.sigma"), "input.sigma.vec");
    const TangentVector u = tangent_from_json(base, require_field(in, "u", "input"), "input.u");
    const TangentVector v = tangent_from_json(base, require_field(in, "v", "input"), "input.v");
    const JacobiData jd(sigma, u, v, in.contains("a") ? require_number(in, "a", "input") : 0.0,
                        in.contains("b") ? require_number(in, "b", "input") : 0.0);
    report["kappa"] = value(cfg.kappa);
    report["admissible"] = jacobi_admissible(jd, cfg.alpha, tol);
  } else if (kind == "screw") {
    ScrewParams p;
    p.theta = require_number(in, "theta", "input");
    p.lambda = require_number(in, "lambda", "input");
    p.rho = require_number(in, "rho", "input");
    p.eta = require_number(in, "eta", "input");
    const auto [r1, r2] = screw_residuals(p, cfg.alpha);
    report["residuals"] = {r1, r2};
    report["admissible"] = screw_admissible(p, cfg.alpha, tol);
  } else if (kind == "circular_helicoid") {
    const double r = require_number(in, "r", "input");
    const CircularHelicoidReport c = circular_helicoid_check(r, cfg.alpha);
    report["r"] = r;
    report["speed"] = c.speed;
    report["standardized_speed"] = c.standardized_speed;
    report["admissible"] = c.admissible;
  } else if (kind == "piece") {
    const Piece piece = piece_from_json(require_field(in, "piece", "input"), "input.piece");
    if (const auto* h = std::get_if<HelicoidalPiece>(&piece)) {
      if (h->frame.kappa() != Curvature::Flat) {
        throw Unsupported("piece admissibility is checked through ruled data, which needs kappa = 0");
      }
      const RuledData d = helicoidal_ruled_data(h->frame, 0.0);
      report["alpha"] = h->frame.alpha();
      report["residual"] = ruled_residual(d, h->frame.alpha());
      report["admissible"] = ruled_admissible(d, h->frame.alpha(), std::max(tol, 1e-6));
    } else {
      const auto& s = std::get<ScrewPiece>(piece);
      const auto [r1, r2] = screw_residuals(s.params, cfg.alpha);
      report["residuals"] = {r1, r2};
      report["admissible"] = screw_admissible(s.params, cfg.alpha, tol);
    }
  } else {
    throw InvalidInput("input.kind: expected ruled, jacobi, screw, circular_helicoid or piece");
  }
  out << dump_canonical(report) << "\n";
  return kExitOk;
}

int cmd_classify(const RunConfig& cfg, const Json& input, std::ostream& out) {
  const Json& in = need_input(input, "classify-sphere");
  const Json& list = in.is_object() ? require_field(in, "circles", "input") : in;
  if (!list.is_array()) throw InvalidInput("input.circles: expected an array of geodesics");
  if (list.empty()) throw InvalidInput("input.circles: the list is empty");
  std::vector<OrientedGeodesic> circles;
  for (std::size_t i = 0; i < list.size(); ++i) {
    circles.push_back(geodesic_from_json(list[i], "input.circles[" + std::to_string(i) + "]"));
  }
  const HopfClassification c = cfg.tol_set ? hopf_classify(circles, cfg.tol) : hopf_classify(circles);
  Json report = {{"kind", to_string(c.kind)},
                 {"count", circles.size()},
                 {"left_spread", c.left_spread},
                 {"right_spread", c.right_spread}};
  if (c.kind == HopfKind::Left || c.kind == HopfKind::Right) report["z"] = vec_to_json(c.z);
  if (c.kind == HopfKind::Both) {
    report["z"] = vec_to_json(c.z);
    report["z_right"] = vec_to_json(c.z_right);
  }
  out << dump_canonical(report) << "\n";
  return kExitOk;
}

std::vector<double> default_alpha_grid(Curvature k) {
  switch (k) {
    case Curvature::Flat:
      return {-1.0, -0.5, 0.0, 0.5, 1.0};
    case Curvature::Spherical:
      return {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0};
    case Curvature::Hyperbolic:
      return {-2.0, -1.0, 0.0, 1.0, 2.0};
  }
  return {};
}

int cmd_rank(const RunConfig& cfg, const Json& input, std::ostream& out) {
  std::vector<double> alphas = default_alpha_grid(cfg.kappa);
  if (const Json* a = setting(cfg, input, "alphas")) {
    if (!a->is_array() || a->empty()) throw InvalidInput("alphas: expected a non-empty array of numbers");
    alphas.clear();
    for (const auto& x : *a) {
      if (!x.is_number()) throw InvalidInput("alphas: expected numbers");
      alphas.push_back(x.get<double>());
    }
  }
  Json results = Json::array();
  for (double alpha : alphas) {
    const RankReport r = substantial_rank_report(cfg.kappa, alpha, cfg.samples, cfg.seed);
    results.push_back({{"alpha", alpha},
                       {"rank", r.rank},
                       {"controllable", r.rank == 4},
                       {"singular_values", r.singular_values}});
  }
  Json critical = Json::array();
  if (cfg.kappa == Curvature::Flat) critical.push_back(0.0);
  if (cfg.kappa == Curvature::Spherical) critical = {-1.0, 1.0};
  const Json report = {{"kappa", value(cfg.kappa)},
                       {"samples", cfg.samples},
                       {"seed", cfg.seed},
                       {"critical_alphas", critical},
                       {"results", results}};
  out << dump_canonical(report) << "\n";
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, const Json& input, std::ostream& out) {
  const Json& in = need_input(input, "sweep");
  const Json& pj = in.contains("piece") ? in["piece"] : in;
  const Piece piece = piece_from_json(pj, "input.piece");
  const auto* h = std::get_if<HelicoidalPiece>(&piece);
  if (h == nullptr) throw InvalidInput("sweep: only helicoidal pieces can be swept");
  double extent = 1.0;
  if (const Json* e = setting(cfg, input, "s_extent")) {
    if (!e->is_number()) throw InvalidInput("s_extent: expected a number");
    extent = e->get<double>();
  }
  out << to_obj(sweep_mesh(*h, cfg.grid_s, cfg.grid_t, extent));
  return kExitOk;
}

int cmd_residual(const RunConfig& cfg, const Json& input, std::ostream& out) {
  OrientedGeodesic l = OrientedGeodesic::euclidean(Vec3::Zero(), Vec3::UnitX());
  if (const Json* lj = setting(cfg, input, "line")) l = geodesic_from_json(*lj, "line");
  TwoPieceGrid grid;
  if (const Json* g = setting(cfg, input, "two_piece_grid")) {
    if (!g->is_array() || g->size() != 4) throw InvalidInput("two_piece_grid: expected four counts");
    for (const auto& x : *g) {
      if (!x.is_number_integer()) throw InvalidInput("two_piece_grid: expected integers");
    }
    grid.n_t0 = (*g)[0].get<int>();
    grid.n_s = (*g)[1].get<int>();
    grid.n_psi = (*g)[2].get<int>();
    grid.n_t1 = (*g)[3].get<int>();
  }
  if (const Json* p = setting(cfg, input, "polish")) {
    if (!p->is_boolean()) throw InvalidInput("polish: expected true or false");
    grid.polish = p->get<bool>();
  }
  const TwoPieceResult r = two_piece_search(l, reverse(l), cfg.alpha, grid);
  const Json report = {{"alpha", cfg.alpha},
                       {"grid", {grid.n_t0, grid.n_s, grid.n_psi, grid.n_t1}},
                       {"polish", grid.polish},
                       {"residual", r.residual},
                       {"t0", r.t0},
                       {"s", r.s},
                       {"psi", r.psi},
                       {"t1", r.t1},
                       {"evaluations", r.evaluations}};
  out << dump_canonical(report) << "\n";
  return kExitOk;
}

}  // namespace

int run_command(const RunConfig& cfg, const Json& input, std::ostream& out) {
  cfg.validate();
  switch (cfg.command) {
    case Command::Plan:
      return cmd_plan(cfg, input, out, false);
    case Command::PlanScrew:
      return cmd_plan(cfg, input, out, true);
    case Command::CheckAdmissible:
      return cmd_check(cfg, input, out);
    case Command::ClassifySphere:
      return cmd_classify(cfg, input, out);
    case Command::Rank:
      return cmd_rank(cfg, input, out);
    case Command::Sweep:
      return cmd_sweep(cfg, input, out);
    case Command::Residual2Piece:
      return cmd_residual(cfg, input, out);
  }
  return kExitInvalid;
}

namespace {

std::string read_all(std::istream& in) {
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidInput("cannot open '" + path + "'");
  return read_all(f);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Helicoidal motions of oriented geodesics"};
  std::string command;
  std::string input_path;
  std::string config_path;
  std::optional<double> alpha;
  std::optional<int> kappa;
  std::optional<double> tol;
  std::optional<unsigned long long> seed;
  std::optional<int> samples;
  std::optional<std::string> grid;
  std::optional<std::string> out_path;

  app.add_option("command", command,
                 "plan | plan-screw | check-admissible | classify-sphere | rank | sweep | residual-2piece");
  app.add_option("input", input_path, "input JSON file, '-' for stdin");
  app.add_option("--config", config_path, "JSON config; flags override its fields");
  app.add_option("--alpha", alpha, "angular speed of the rays");
  app.add_option("--kappa", kappa, "curvature: -1, 0 or 1");
  app.add_option("--tol", tol, "tolerance (default 1e-7)");
  app.add_option("--seed", seed, "random seed (default 0)");
  app.add_option("--samples", samples, "fiber samples for rank (default 128)");
  app.add_option("--grid", grid, "sweep grid SxT (default 64x64)");
  app.add_option("--out", out_path, "write the result here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) {
      try {
        apply_config_json(cfg, parse_json(read_file(config_path)));
      } catch (const InvalidInput& e) {
        throw InvalidInput(config_path + ": " + e.what());
      }
    }
    if (!command.empty()) {
      cfg.command = command_from_string(command);
    } else if (config_path.empty() || !cfg.extra.contains("command")) {
      throw InvalidInput("no command given");
    }
    if (alpha) cfg.alpha = *alpha;
    if (kappa) cfg.kappa = curvature_from_int(*kappa);
    if (tol) {
      cfg.tol = *tol;
      cfg.tol_set = true;
    }
    if (seed) cfg.seed = *seed;
    if (samples) cfg.samples = *samples;
    if (grid) std::tie(cfg.grid_s, cfg.grid_t) = parse_grid(*grid);
    if (out_path) cfg.out_path = *out_path;
    cfg.validate();

    Json input;
    const bool needs_input = cfg.command != Command::Rank && cfg.command != Command::Residual2Piece;
    if (input_path == "-" || (input_path.empty() && needs_input)) {
      input = parse_json(read_all(in));
    } else if (!input_path.empty()) {
      try {
        input = parse_json(read_file(input_path));
      } catch (const InvalidInput& e) {
        throw InvalidInput(input_path + ": " + e.what());
      }
    }

    if (cfg.out_path.empty()) return run_command(cfg, input, out);
    std::ostringstream buffer;
    const int code = run_command(cfg, input, buffer);
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) throw InvalidInput("cannot write '" + cfg.out_path + "'");
    f << buffer.str();
    return code;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const Unsupported& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const Error& e) {
    err << "failure: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace helico
