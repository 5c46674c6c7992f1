#include "helico/io.hpp"

#include "helico/errors.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace helico {

namespace {

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

void dump(const Json& j, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent) * (depth + 1), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent) * depth, ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      // nlohmann::json stores objects in a std::map, so iteration is sorted.
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        out += Json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        dump(it.value(), indent, depth + 1, out);
      }
      out += nl;
      out += close_pad;
      out += "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Short numeric arrays stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_number(); });
      out += "[";
      if (!flat) out += nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) {
          out += ",";
          out += flat ? (indent > 0 ? " " : "") : nl;
        }
        if (!flat) out += pad;
        dump(j[i], indent, depth + 1, out);
      }
      if (!flat) {
        out += nl;
        out += close_pad;
      }
      out += "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

std::string child(const std::string& where, const std::string& key) { return where + "." + key; }

}  // namespace

std::string dump_canonical(const Json& j, int indent) {
  std::string out;
  dump(j, indent, 0, out);
  return out;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

const Json& require_field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw InvalidInput(where + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw InvalidInput(where + ": missing field '" + key + "'");
  return *it;
}

double require_number(const Json& j, const std::string& key, const std::string& where) {
  const Json& v = require_field(j, key, where);
  if (!v.is_number()) throw InvalidInput(child(where, key) + ": expected a number");
  return v.get<double>();
}

namespace {

Eigen::VectorXd vector_from_json(const Json& j, int n, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    throw InvalidInput(where + ": expected an array of " + std::to_string(n) + " numbers");
  }
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) {
    if (!j[i].is_number()) throw InvalidInput(where + "[" + std::to_string(i) + "]: not a number");
    v[i] = j[i].get<double>();
  }
  return v;
}

}  // namespace

Vec4 vec4_from_json(const Json& j, const std::string& where) { return vector_from_json(j, 4, where); }
Vec3 vec3_from_json(const Json& j, const std::string& where) { return vector_from_json(j, 3, where); }

Json vec_to_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

// ---------------------------------------------------------------------------

Json to_json(const OrientedGeodesic& l) {
  return {{"kappa", value(l.kappa())},
          {"base", vec_to_json(l.base().coords())},
          {"dir", vec_to_json(l.dir().vec())}};
}

OrientedGeodesic geodesic_from_json(const Json& j, const std::string& where) {
  const Json& kj = require_field(j, "kappa", where);
  if (!kj.is_number_integer()) throw InvalidInput(child(where, "kappa") + ": expected -1, 0 or 1");
  const Curvature k = curvature_from_int(kj.get<int>());
  const Vec4 base = vec4_from_json(require_field(j, "base", where), child(where, "base"));
  const Vec4 dir = vec4_from_json(require_field(j, "dir", where), child(where, "dir"));
  try {
    return OrientedGeodesic::from_point_direction(SpacePoint(k, base), dir);
  } catch (const InvalidInput& e) {
    throw InvalidInput(where + ": " + e.what());
  }
}

Json to_json(const SphereCirclePoint& p) {
  return {{"x", vec_to_json(p.x)}, {"y", vec_to_json(p.y)}};
}

SphereCirclePoint sphere_point_from_json(const Json& j, const std::string& where) {
  return {vec3_from_json(require_field(j, "x", where), child(where, "x")),
          vec3_from_json(require_field(j, "y", where), child(where, "y"))};
}

Json to_json(const HelicoidalFrame& f) {
  return {{"line", to_json(f.line())},
          {"p", vec_to_json(f.p().coords())},
          {"A", vec_to_json(f.axis().vec())},
          {"alpha", f.alpha()}};
}

HelicoidalFrame frame_from_json(const Json& j, const std::string& where) {
  const OrientedGeodesic line = geodesic_from_json(require_field(j, "line", where), child(where, "line"));
  const Vec4 p = vec4_from_json(require_field(j, "p", where), child(where, "p"));
  const Vec4 a = vec4_from_json(require_field(j, "A", where), child(where, "A"));
  const double alpha = require_number(j, "alpha", where);
  try {
    const SpacePoint sp(line.kappa(), p);
    return HelicoidalFrame(line, sp, TangentVector(sp, a), alpha);
  } catch (const InvalidInput& e) {
    throw InvalidInput(where + ": " + e.what());
  }
}

Json to_json(const Piece& piece) {
  if (const auto* h = std::get_if<HelicoidalPiece>(&piece)) {
    return {{"type", "helicoidal"}, {"frame", to_json(h->frame)}, {"duration", h->duration}};
  }
  const auto& s = std::get<ScrewPiece>(piece);
  Json frame = Json::array();
  const Mat4& m = s.params.frame.matrix();
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) frame.push_back(m(r, c));
  }
  return {{"type", "screw"},
          {"theta", s.params.theta},
          {"lambda", s.params.lambda},
          {"rho", s.params.rho},
          {"eta", s.params.eta},
          {"frame", frame},
          {"start", to_json(s.start)},
          {"duration", s.duration}};
}

Piece piece_from_json(const Json& j, const std::string& where) {
  const Json& type = require_field(j, "type", where);
  const double duration = require_number(j, "duration", where);
  if (type == "helicoidal") {
    return HelicoidalPiece{frame_from_json(require_field(j, "frame", where), child(where, "frame")),
                           duration};
  }
  if (type == "screw") {
    ScrewParams p;
    p.theta = require_number(j, "theta", where);
    p.lambda = require_number(j, "lambda", where);
    p.rho = require_number(j, "rho", where);
    p.eta = require_number(j, "eta", where);
    const Eigen::VectorXd m = vector_from_json(require_field(j, "frame", where), 16, child(where, "frame"));
    Mat4 mat;
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) mat(r, c) = m[4 * r + c];
    }
    try {
      p.frame = Isometry(Curvature::Flat, mat);
    } catch (const InvalidInput& e) {
      throw InvalidInput(child(where, "frame") + ": " + e.what());
    }
    return ScrewPiece{p, geodesic_from_json(require_field(j, "start", where), child(where, "start")),
                      duration};
  }
  throw InvalidInput(child(where, "type") + ": expected \"helicoidal\" or \"screw\"");
}

Json to_json(const Plan& p) {
  Json pieces = Json::array();
  for (const auto& piece : p.pieces) pieces.push_back(to_json(piece));
  return {{"schema_version", kPlanSchemaVersion},
          {"alpha", p.alpha},
          {"pieces", pieces},
          {"source", to_json(p.source)},
          {"target", to_json(p.target)},
          {"endpoint_residual", p.endpoint_residual}};
}

Plan plan_from_json(const Json& j) {
  const std::string where = "plan";
  const Json& version = require_field(j, "schema_version", where);
  if (version != kPlanSchemaVersion) {
    throw InvalidInput("plan.schema_version: unsupported version " + version.dump());
  }
  Plan plan{require_number(j, "alpha", where),
            {},
            geodesic_from_json(require_field(j, "source", where), "plan.source"),
            geodesic_from_json(require_field(j, "target", where), "plan.target"),
            0.0};
  const Json& pieces = require_field(j, "pieces", where);
  if (!pieces.is_array()) throw InvalidInput("plan.pieces: expected an array");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    plan.pieces.push_back(piece_from_json(pieces[i], "plan.pieces[" + std::to_string(i) + "]"));
  }
  if (j.contains("endpoint_residual") && j["endpoint_residual"].is_number()) {
    plan.endpoint_residual = j["endpoint_residual"].get<double>();
  }
  return plan;
}

}  // namespace helico
