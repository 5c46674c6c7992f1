#include "helico/mesh.hpp"

#include "helico/errors.hpp"

#include <cstdio>

namespace helico {

Mesh sweep_mesh(const HelicoidalPiece& piece, int ns, int nt, double s_extent) {
  if (ns < 2 || nt < 2) throw InvalidInput("sweep grid needs at least 2 x 2 samples");
  if (!(s_extent > 0.0)) throw InvalidInput("sweep s-extent must be positive");
  const HelicoidalFrame& f = piece.frame;
  Mesh m;
  m.kappa = f.kappa();
  m.vertices.reserve(static_cast<std::size_t>(ns) * nt);
  for (int i = 0; i < ns; ++i) {
    const double s = -s_extent + 2.0 * s_extent * i / (ns - 1);
    for (int j = 0; j < nt; ++j) {
      const double t = piece.duration * j / (nt - 1);
      m.vertices.push_back(helicoid_point(f, s, t).coords());
    }
  }
  auto at = [nt](int i, int j) { return i * nt + j; };
  for (int i = 0; i + 1 < ns; ++i) {
    for (int j = 0; j + 1 < nt; ++j) {
      m.faces.push_back({at(i, j), at(i + 1, j), at(i + 1, j + 1)});
      m.faces.push_back({at(i, j), at(i + 1, j + 1), at(i, j + 1)});
    }
  }
  return m;
}

std::string to_obj(const Mesh& m) {
  std::string out;
  char buf[128];
  for (const Vec4& v : m.vertices) {
    if (m.kappa == Curvature::Flat) {
      std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v[1], v[2], v[3]);
    } else {
      std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g %.17g\n", v[0], v[1], v[2], v[3]);
    }
    out += buf;
  }
  for (const auto& f : m.faces) {
    std::snprintf(buf, sizeof buf, "f %d %d %d\n", f[0] + 1, f[1] + 1, f[2] + 1);
    out += buf;
  }
  return out;
}

}  // namespace helico
