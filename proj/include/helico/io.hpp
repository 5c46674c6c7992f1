#pragma once

// JSON encodings of geometric objects and plans. Numbers are written with 17
// significant digits and keys in sorted order, so encoding is byte-stable and
// every double round-trips exactly.

#include "helico/planner.hpp"
#include "helico/quatsphere.hpp"

#include <json.hpp>

#include <string>

namespace helico {

using Json = nlohmann::json;

inline constexpr int kPlanSchemaVersion = 1;

// Deterministic serializer (sorted keys, "%.17g" doubles, NaN/inf as null).
std::string dump_canonical(const Json& j, int indent = 2);

// Parses text, reporting syntax errors as InvalidInput with line and column.
Json parse_json(const std::string& text);

Json to_json(const OrientedGeodesic& l);
OrientedGeodesic geodesic_from_json(const Json& j, const std::string& where = "geodesic");

Json to_json(const SphereCirclePoint& p);
SphereCirclePoint sphere_point_from_json(const Json& j, const std::string& where = "point");

Json to_json(const HelicoidalFrame& f);
HelicoidalFrame frame_from_json(const Json& j, const std::string& where = "frame");

Json to_json(const Piece& p);
Piece piece_from_json(const Json& j, const std::string& where = "piece");

Json to_json(const Plan& p);
Plan plan_from_json(const Json& j);

// Field access with path-qualified InvalidInput errors.
const Json& require_field(const Json& j, const std::string& key, const std::string& where);
double require_number(const Json& j, const std::string& key, const std::string& where);
Vec4 vec4_from_json(const Json& j, const std::string& where);
Vec3 vec3_from_json(const Json& j, const std::string& where);
Json vec_to_json(const Eigen::VectorXd& v);

}  // namespace helico
