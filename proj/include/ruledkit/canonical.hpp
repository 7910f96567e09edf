#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "ruledkit/dual.hpp"
#include "ruledkit/frenet.hpp"
#include "ruledkit/ruled_curve.hpp"

namespace ruledkit {

/// Motion taking the lines v(s0), n(s0), t(s0) to the x, y, z axes (striction point to the origin).
inline DualQuaternion canonical_frame_at(const RuledCurve& c, double s0, const Tolerances& tol = kDefaultTolerances) {
  const FrenetPoint p = frenet_at(c, s0, tol);
  const Vec3d sigma = StrictionCurve(c).point(s0);
  const Vec3d a = p.frame.v.direction(), b = p.frame.n.direction(), d = p.frame.t.direction();
  Eigen::Matrix3d R;
  R << a.x, a.y, a.z, b.x, b.y, b.z, d.x, d.y, d.z;
  Quaternion q0 = Quaternion::from_matrix(R);
  if (q0.w < 0.0) q0 = -1.0 * q0;
  return DualQuaternion::from_rotation_translation(q0, -q0.rotate(sigma));
}

/// Taylor coefficients of F(s, t) = r(s) + t e(s) about (s0, t0) in canonical position:
/// component i = sum_k r[i][k] d^k + t sum_k e[i][k] d^k, d = s - s0, t measured from the striction point.
struct CanonicalJet {
  int order = 0;
  std::array<std::vector<double>, 3> r;
  std::array<std::vector<double>, 3> e;

  /// Coefficient of d^k t^j (j in {0, 1}).
  double coefficient(int component, int k, int j) const {
    const auto& v = (j == 0 ? r : e)[static_cast<size_t>(component)];
    return k < static_cast<int>(v.size()) ? v[static_cast<size_t>(k)] : 0.0;
  }
};

/// The jet of v transported by a rigid motion.
inline SeriesLine transform_series(const SeriesLine& l, const DualQuaternion& q) {
  const Eigen::Matrix3d R = q.q0.matrix();
  auto rot = [&R](const SeriesVec& v) {
    return SeriesVec{R(0, 0) * v.x + R(0, 1) * v.y + R(0, 2) * v.z, R(1, 0) * v.x + R(1, 1) * v.y + R(1, 2) * v.z,
                     R(2, 0) * v.x + R(2, 1) * v.y + R(2, 2) * v.z};
  };
  const SeriesVec d = rot(l.v0);
  return {d, rot(l.v1) + cross(constant_series(q.translation_part()), d)};
}

inline CanonicalJet canonical_jet(const RuledCurve& c, double s0, int order, const Tolerances& tol = kDefaultTolerances) {
  require_arclength(c);
  if (order + 1 > c.max_order()) fail(ErrorCode::OrderUnavailable, "canonical jet order too high for this curve");
  const FrenetPoint p = frenet_at(c, s0, tol);
  if (std::fabs(p.invariants.kappa1) > tol.classify * (1.0 + std::fabs(p.invariants.tau1)))
    fail(ErrorCode::NotSingular, "kappa1(s0) = " + std::to_string(p.invariants.kappa1) + " is not zero");
  const SeriesLine l = transform_series(c.jet(s0, order), canonical_frame_at(c, s0, tol));
  const SeriesVec r = cross(l.v0, l.v1);
  CanonicalJet j;
  j.order = order;
  for (int i = 0; i < 3; ++i) {
    j.r[static_cast<size_t>(i)].resize(static_cast<size_t>(order) + 1);
    j.e[static_cast<size_t>(i)].resize(static_cast<size_t>(order) + 1);
    for (int k = 0; k <= order; ++k) {
      j.r[static_cast<size_t>(i)][static_cast<size_t>(k)] = r[i][k];
      j.e[static_cast<size_t>(i)][static_cast<size_t>(k)] = l.v0[i][k];
    }
  }
  return j;
}

}  // namespace ruledkit
