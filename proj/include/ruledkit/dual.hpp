#pragma once

#include <cmath>

#include <Eigen/Geometry>

#include "ruledkit/error.hpp"
#include "ruledkit/tolerances.hpp"
#include "ruledkit/vec3.hpp"

namespace ruledkit {

/// a0 + eps a1 with eps^2 = 0.
template <typename T = double>
struct DualNumber {
  T real{};
  T dual{};

  constexpr DualNumber() = default;
  constexpr DualNumber(T r, T d) : real(std::move(r)), dual(std::move(d)) {}

  friend DualNumber operator+(const DualNumber& a, const DualNumber& b) { return {a.real + b.real, a.dual + b.dual}; }
  friend DualNumber operator-(const DualNumber& a, const DualNumber& b) { return {a.real - b.real, a.dual - b.dual}; }
  friend DualNumber operator-(const DualNumber& a) { return {-a.real, -a.dual}; }
  friend DualNumber operator*(const DualNumber& a, const DualNumber& b) {
    return {a.real * b.real, a.real * b.dual + a.dual * b.real};
  }
  friend DualNumber operator*(const T& k, const DualNumber& a) { return {k * a.real, k * a.dual}; }

  bool operator==(const DualNumber&) const = default;
};

using Dual = DualNumber<double>;

template <typename T>
DualNumber<T> dual_mul(const DualNumber<T>& a, const DualNumber<T>& b) {
  return a * b;
}

inline Dual dual_inverse(const Dual& a) {
  if (a.real == 0.0) fail(ErrorCode::InvalidArgument, "dual number with zero real part is not invertible");
  return {1.0 / a.real, -a.dual / (a.real * a.real)};
}

template <typename T>
DualNumber<T> dual_inverse(const DualNumber<T>& a) {
  const T inv = T(1.0) / a.real;
  return {inv, -(a.dual * inv * inv)};
}

inline Dual dual_sqrt(const Dual& a) {
  if (!(a.real > 0.0)) fail(ErrorCode::NonPositiveReal, "dual square root needs a positive real part");
  const double r = std::sqrt(a.real);
  return {r, a.dual / (2.0 * r)};
}

/// Series-valued square root; the positivity check applies to the constant term.
template <typename T>
DualNumber<T> dual_sqrt(const DualNumber<T>& a) {
  using std::sqrt;
  const T r = sqrt(a.real);
  return {r, a.dual / (T(2.0) * r)};
}

/// v0 + eps v1 in D^3.
template <typename T = double>
struct DualVector {
  Vec3<T> v0{};
  Vec3<T> v1{};

  constexpr DualVector() = default;
  constexpr DualVector(Vec3<T> a, Vec3<T> b) : v0(std::move(a)), v1(std::move(b)) {}

  friend DualVector operator+(const DualVector& a, const DualVector& b) { return {a.v0 + b.v0, a.v1 + b.v1}; }
  friend DualVector operator-(const DualVector& a, const DualVector& b) { return {a.v0 - b.v0, a.v1 - b.v1}; }
  friend DualVector operator-(const DualVector& a) { return {-a.v0, -a.v1}; }

  /// (a + eps b)(v0 + eps v1)
  friend DualVector operator*(const DualNumber<T>& k, const DualVector& a) {
    return {k.real * a.v0, k.real * a.v1 + k.dual * a.v0};
  }

  bool operator==(const DualVector&) const = default;
};

using DualVec = DualVector<double>;

template <typename T>
DualNumber<T> dual_dot(const DualVector<T>& u, const DualVector<T>& v) {
  return {dot(u.v0, v.v0), dot(u.v0, v.v1) + dot(u.v1, v.v0)};
}

template <typename T>
DualVector<T> dual_cross(const DualVector<T>& u, const DualVector<T>& v) {
  return {cross(u.v0, v.v0), cross(u.v0, v.v1) + cross(u.v1, v.v0)};
}

/// v / |v| in the dual sense.
template <typename T>
DualVector<T> dual_normalized(const DualVector<T>& v) {
  return dual_inverse(dual_sqrt(dual_dot(v, v))) * v;
}

struct Quaternion {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  static Quaternion pure(const Vec3d& v) { return {0.0, v.x, v.y, v.z}; }
  static Quaternion zero() { return {0.0, 0.0, 0.0, 0.0}; }

  Vec3d vec() const { return {x, y, z}; }
  Quaternion conj() const { return {w, -x, -y, -z}; }
  double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }

  friend Quaternion operator+(const Quaternion& a, const Quaternion& b) { return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Quaternion operator-(const Quaternion& a, const Quaternion& b) { return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Quaternion operator*(double k, const Quaternion& a) { return {k * a.w, k * a.x, k * a.y, k * a.z}; }
  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }

  bool operator==(const Quaternion&) const = default;

  /// Rotation by `angle` about the unit `axis`.
  static Quaternion rotation(const Vec3d& axis, double angle) {
    const double s = std::sin(0.5 * angle);
    return {std::cos(0.5 * angle), s * axis.x, s * axis.y, s * axis.z};
  }

  static Quaternion from_matrix(const Eigen::Matrix3d& R) {
    Eigen::Quaterniond q(R);
    q.normalize();
    return {q.w(), q.x(), q.y(), q.z()};
  }

  Eigen::Matrix3d matrix() const { return Eigen::Quaterniond(w, x, y, z).normalized().toRotationMatrix(); }

  /// q v qbar for a 3-vector v.
  Vec3d rotate(const Vec3d& v) const { return ((*this) * pure(v) * conj()).vec(); }
};

/// q0 + eps q1. Unit ones represent rigid motions x -> q0 x q0bar + 2 q1 q0bar.
struct DualQuaternion {
  Quaternion q0{};
  Quaternion q1 = Quaternion::zero();

  static DualQuaternion identity() { return {}; }

  /// Motion x -> rotate(x) + c.
  static DualQuaternion from_rotation_translation(const Quaternion& rot, const Vec3d& c) {
    return {rot, 0.5 * (Quaternion::pure(c) * rot)};
  }

  static DualQuaternion translation(const Vec3d& c) { return from_rotation_translation(Quaternion{}, c); }

  /// qbar0 + eps qbar1
  DualQuaternion conj() const { return {q0.conj(), q1.conj()}; }

  friend DualQuaternion operator*(const DualQuaternion& a, const DualQuaternion& b) {
    return {a.q0 * b.q0, a.q0 * b.q1 + a.q1 * b.q0};
  }

  bool operator==(const DualQuaternion&) const = default;

  /// Re[q1 q0bar]; zero for unit dual quaternions.
  double real_cross_term() const { return (q1 * q0.conj()).w; }

  bool is_unit(double tol = kDefaultTolerances.unit) const {
    return std::fabs(q0.norm() - 1.0) <= tol && std::fabs(real_cross_term()) <= tol;
  }

  Vec3d translation_part() const { return 2.0 * (q1 * q0.conj()).vec(); }

  /// Inverse motion; for unit q this is the conjugate.
  DualQuaternion inverse() const { return conj(); }
};

/// Nearest unit dual quaternion: q0 onto the unit sphere, then the Re[q1 q0bar] part removed.
inline DualQuaternion normalize(const DualQuaternion& q) {
  const double n = q.q0.norm();
  if (n == 0.0) fail(ErrorCode::InvalidArgument, "cannot normalize a dual quaternion with zero real part");
  const Quaternion a = (1.0 / n) * q.q0;
  Quaternion b = (1.0 / n) * q.q1;
  const double c = a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
  b = b - c * a;
  return {a, b};
}

inline Vec3d dq_act(const DualQuaternion& q, const Vec3d& x, double tol = kDefaultTolerances.unit) {
  if (!q.is_unit(tol)) fail(ErrorCode::NotUnit, "dq_act needs a unit dual quaternion");
  return q.q0.rotate(x) + q.translation_part();
}

/// An oriented line: direction v0 (unit) and moment v1 with v0.v1 = 0.
class UnitDualVector {
 public:
  UnitDualVector() : v_{{1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}} {}

  explicit UnitDualVector(const DualVec& v, double tol = kDefaultTolerances.unit) : v_(v) {
    if (std::fabs(norm(v.v0) - 1.0) > tol || std::fabs(dot(v.v0, v.v1)) > tol)
      fail(ErrorCode::NotUnit, "dual vector is not unit (|v0| = 1, v0.v1 = 0)");
  }

  /// Project an arbitrary dual vector with v0 != 0 onto the unit dual vectors.
  static UnitDualVector normalized(const DualVec& v) {
    if (norm(v.v0) == 0.0) fail(ErrorCode::ZeroDirection, "zero direction");
    const Vec3d d = ruledkit::normalized(v.v0);
    const Vec3d m = v.v1 / norm(v.v0);
    return UnitDualVector(DualVec{d, m - dot(m, d) * d});
  }

  const DualVec& dual() const { return v_; }
  const Vec3d& direction() const { return v_.v0; }
  const Vec3d& moment() const { return v_.v1; }

  /// Foot of the perpendicular from the origin.
  Vec3d closest_point() const { return cross(v_.v0, v_.v1); }

  /// Line moved by a rigid motion: the sandwich q v q*.
  UnitDualVector transformed(const DualQuaternion& q) const {
    const Vec3d d = q.q0.rotate(v_.v0);
    const Vec3d m = q.q0.rotate(v_.v1) + cross(q.translation_part(), d);
    return UnitDualVector(DualVec{d, m}, 1e-8);
  }

 private:
  DualVec v_;
};

inline UnitDualVector line_from_point_dir(const Vec3d& a, const Vec3d& d, double tol = kDefaultTolerances.unit) {
  const double n = norm(d);
  if (n <= tol) fail(ErrorCode::ZeroDirection, "line direction is zero");
  if (std::fabs(n - 1.0) > tol) fail(ErrorCode::NotUnit, "line direction must be a unit vector");
  return UnitDualVector(DualVec{d, cross(a, d)});
}

inline bool point_on_line(const Vec3d& a, const UnitDualVector& L, const Tolerances& tol = kDefaultTolerances) {
  return max_abs(cross(a, L.direction()) - L.moment()) <= tol.geo_scaled(norm(a));
}

inline bool lines_meet_perpendicular(const UnitDualVector& L1, const UnitDualVector& L2,
                                     const Tolerances& tol = kDefaultTolerances) {
  const Dual d = dual_dot(L1.dual(), L2.dual());
  const double scale = std::fmax(norm(L1.moment()), norm(L2.moment()));
  return std::fabs(d.real) <= tol.geo_scaled(0.0) && std::fabs(d.dual) <= tol.geo_scaled(scale);
}

/// Line as a pure dual quaternion v0 + eps v1.
inline DualQuaternion as_dual_quaternion(const DualVec& v) {
  return {Quaternion::pure(v.v0), Quaternion::pure(v.v1)};
}

}  // namespace ruledkit
