#pragma once

#include <array>
#include <cstdio>
#include <string>
#include <vector>

#include "ruledkit/error.hpp"
#include "ruledkit/ruled_curve.hpp"

namespace ruledkit {

struct Mesh {
  std::vector<Vec3d> vertices;
  std::vector<std::array<int, 3>> triangles;  // zero-based
};

/// F(s, t) on an ns x nt grid; vertex (i, j) has index i * nt + j. Triangles wind counterclockwise
/// in the (s, t) chart, so their normals point along F_s x F_t.
inline Mesh sample_mesh(const RuledCurve& c, int ns, int nt, double t_lo, double t_hi) {
  if (ns < 2 || nt < 2) fail(ErrorCode::InvalidArgument, "mesh grid needs at least 2 x 2 samples");
  if (!(t_lo < t_hi)) fail(ErrorCode::InvalidArgument, "t range must satisfy a < b");
  const Interval I = c.domain();
  Mesh m;
  m.vertices.reserve(static_cast<size_t>(ns) * static_cast<size_t>(nt));
  for (int i = 0; i < ns; ++i) {
    const double s = I.lo + I.length() * i / (ns - 1);
    const DualVec v = c.at(s);
    const Vec3d r = cross(v.v0, v.v1);
    for (int j = 0; j < nt; ++j) {
      const double t = t_lo + (t_hi - t_lo) * j / (nt - 1);
      m.vertices.push_back(r + t * v.v0);
    }
  }
  for (int i = 0; i + 1 < ns; ++i)
    for (int j = 0; j + 1 < nt; ++j) {
      const int a = i * nt + j, b = (i + 1) * nt + j, c2 = (i + 1) * nt + j + 1, d = i * nt + j + 1;
      m.triangles.push_back({a, b, c2});
      m.triangles.push_back({a, c2, d});
    }
  return m;
}

inline std::string to_obj(const Mesh& m) {
  std::string out;
  out.reserve(m.vertices.size() * 64 + m.triangles.size() * 24);
  char buf[96];
  for (const auto& v : m.vertices) {
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x, v.y, v.z);
    out += buf;
  }
  for (const auto& f : m.triangles) {
    std::snprintf(buf, sizeof buf, "f %d %d %d\n", f[0] + 1, f[1] + 1, f[2] + 1);
    out += buf;
  }
  return out;
}

}  // namespace ruledkit
