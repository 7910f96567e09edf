#pragma once

#include <cmath>

namespace ruledkit {

/// Three-component vector over an arbitrary scalar ring (double, truncated series, ...).
template <typename T = double>
struct Vec3 {
  T x{};
  T y{};
  T z{};

  constexpr Vec3() = default;
  constexpr Vec3(T x_, T y_, T z_) : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}

  T& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  const T& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  template <typename S>
  Vec3& operator*=(const S& k) {
    x *= k;
    y *= k;
    z *= k;
    return *this;
  }

  friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend Vec3 operator-(const Vec3& a) { return Vec3(-a.x, -a.y, -a.z); }
  friend Vec3 operator*(const T& k, const Vec3& a) { return Vec3(k * a.x, k * a.y, k * a.z); }
  friend Vec3 operator*(const Vec3& a, const T& k) { return Vec3(a.x * k, a.y * k, a.z * k); }
  friend Vec3 operator/(const Vec3& a, const T& k) { return Vec3(a.x / k, a.y / k, a.z / k); }

  bool operator==(const Vec3&) const = default;
};

using Vec3d = Vec3<double>;

template <typename T>
T dot(const Vec3<T>& a, const Vec3<T>& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <typename T>
Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
  return Vec3<T>(a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x);
}

template <typename T>
T det(const Vec3<T>& a, const Vec3<T>& b, const Vec3<T>& c) {
  return dot(a, cross(b, c));
}

inline double norm(const Vec3d& a) { return std::sqrt(dot(a, a)); }

inline Vec3d normalized(const Vec3d& a) { return a / norm(a); }

inline double max_abs(const Vec3d& a) {
  return std::fmax(std::fabs(a.x), std::fmax(std::fabs(a.y), std::fabs(a.z)));
}

}  // namespace ruledkit
