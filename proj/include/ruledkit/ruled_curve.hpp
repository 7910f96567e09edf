#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "ruledkit/dual.hpp"
#include "ruledkit/error.hpp"
#include "ruledkit/taylor.hpp"
#include "ruledkit/vec3.hpp"

namespace ruledkit {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double length() const { return hi - lo; }
  bool contains(double s, double slack = 0.0) const { return s >= lo - slack && s <= hi + slack; }
  double clamp(double s) const { return std::fmin(hi, std::fmax(lo, s)); }
  /// Parameter origin: 0 when inside, otherwise the nearer endpoint.
  double origin() const { return contains(0.0) ? 0.0 : (std::fabs(lo) < std::fabs(hi) ? lo : hi); }

  bool operator==(const Interval&) const = default;
};

enum class DerivativeSource { Analytic, Numeric };

using SeriesVec = Vec3<Taylor>;
using SeriesLine = DualVector<Taylor>;

/// Polynomial with ascending coefficients.
using Poly = std::vector<double>;
using Poly3 = std::array<Poly, 3>;

/// A curve s -> v(s) of unit dual vectors, queried through local Taylor jets.
///
/// `jet(s, k)` returns the series of v0 and v1 in the offset d = u - s up to d^k.
class RuledCurve {
 public:
  using JetFn = std::function<SeriesLine(double, int)>;

  RuledCurve(JetFn fn, Interval domain, int max_order, DerivativeSource source, bool arclength)
      : fn_(std::move(fn)), domain_(domain), max_order_(max_order), source_(source), arclength_(arclength) {
    if (!(domain.hi > domain.lo)) fail(ErrorCode::InvalidArgument, "curve domain must be a nonempty interval");
  }

  const Interval& domain() const { return domain_; }
  int max_order() const { return max_order_; }
  DerivativeSource source() const { return source_; }
  bool is_arclength() const { return arclength_; }

  SeriesLine jet(double s, int order) const {
    if (order > max_order_)
      fail(ErrorCode::OrderUnavailable, "requested jet order " + std::to_string(order) + " exceeds " + std::to_string(max_order_));
    if (!domain_.contains(s, 1e-9 * (1.0 + domain_.length())))
      fail(ErrorCode::OutOfDomain, "parameter " + std::to_string(s) + " outside the curve domain");
    return fn_(s, order);
  }

  DualVec at(double s) const {
    const SeriesLine j = jet(s, 0);
    return {{j.v0.x.value(), j.v0.y.value(), j.v0.z.value()}, {j.v1.x.value(), j.v1.y.value(), j.v1.z.value()}};
  }

  UnitDualVector line(double s) const { return UnitDualVector::normalized(at(s)); }

  /// Base curve r = v0 x v1 (foot of the perpendicular from the origin).
  Vec3d base(double s) const {
    const DualVec v = at(s);
    return cross(v.v0, v.v1);
  }
  Vec3d director(double s) const { return at(s).v0; }

  /// F(s, t) = r(s) + t e(s)
  Vec3d point(double s, double t) const {
    const DualVec v = at(s);
    return cross(v.v0, v.v1) + t * v.v0;
  }

 private:
  JetFn fn_;
  Interval domain_;
  int max_order_;
  DerivativeSource source_;
  bool arclength_;
};

inline constexpr int kAnalyticMaxOrder = 24;
inline constexpr int kNumericMaxOrder = 8;

inline Vec3d value_of(const SeriesVec& v) { return {v.x.value(), v.y.value(), v.z.value()}; }

inline Vec3d coefficient_of(const SeriesVec& v, int k) { return {v.x[k], v.y[k], v.z[k]}; }

inline SeriesVec series_derivative(const SeriesVec& v) { return {v.x.derivative(), v.y.derivative(), v.z.derivative()}; }

inline SeriesVec constant_series(const Vec3d& v) { return {Taylor(v.x), Taylor(v.y), Taylor(v.z)}; }

/// Unit dual vector built from a point on the line and a (not necessarily unit) direction.
inline SeriesLine line_series(const SeriesVec& point, const SeriesVec& direction) {
  using std::sqrt;
  const Taylor len = sqrt(dot(direction, direction));
  const SeriesVec e = direction / len;
  return {e, cross(point, e)};
}

/// Curve from a generic generator g(u) -> {point, direction} evaluated on truncated series.
template <typename Generator>
RuledCurve from_generator(Generator gen, Interval domain, bool arclength = false, int max_order = kAnalyticMaxOrder) {
  auto fn = [gen](double s, int order) {
    const Taylor u = Taylor::variable(s, order);
    const auto [p, d] = gen(u);
    SeriesLine l = line_series(p, d);
    auto fix = [order](SeriesVec& v) {
      v.x = v.x.with_order(order);
      v.y = v.y.with_order(order);
      v.z = v.z.with_order(order);
    };
    fix(l.v0);
    fix(l.v1);
    return l;
  };
  return RuledCurve(fn, domain, max_order, DerivativeSource::Analytic, arclength);
}

inline SeriesVec poly_series(const Poly3& p, const Taylor& u) {
  return {horner<Taylor>(p[0], u), horner<Taylor>(p[1], u), horner<Taylor>(p[2], u)};
}

/// F(s,t) = r(s) + t e(s) with polynomial base curve r and director e (e need not be unit).
inline RuledCurve from_polynomials(const Poly3& r, const Poly3& e, Interval domain) {
  for (const auto& c : e)
    if (c.empty()) fail(ErrorCode::InvalidArgument, "director polynomial has no coefficients");
  return from_generator([r, e](const Taylor& u) { return std::pair{poly_series(r, u), poly_series(e, u)}; }, domain);
}

namespace detail {

/// j-th derivative of f at x by central differences, Richardson-extrapolated over h, h/2, h/4, h/8.
template <typename F>
std::array<double, 6> central_derivative(const F& f, double x, int j, double h) {
  std::array<std::array<double, 6>, 4> table{};
  for (int level = 0; level < 4; ++level) {
    const double step = h / static_cast<double>(1 << level);
    std::array<double, 6> acc{};
    double binom = 1.0;
    for (int i = 0; i <= j; ++i) {
      const double sign = (i % 2 == 0) ? 1.0 : -1.0;
      const auto v = f(x + (0.5 * j - i) * step);
      for (size_t c = 0; c < 6; ++c) acc[c] += sign * binom * v[c];
      binom = binom * (j - i) / (i + 1);
    }
    for (size_t c = 0; c < 6; ++c) table[static_cast<size_t>(level)][c] = acc[c] / std::pow(step, j);
  }
  // Error series is even in the step: eliminate h^2, h^4, h^6.
  for (int m = 1; m < 4; ++m) {
    const double factor = std::pow(4.0, m);
    for (int level = 3; level >= m; --level)
      for (size_t c = 0; c < 6; ++c)
        table[static_cast<size_t>(level)][c] =
            (factor * table[static_cast<size_t>(level)][c] - table[static_cast<size_t>(level) - 1][c]) / (factor - 1.0);
  }
  return table[3];
}

}  // namespace detail

/// Curve from a plain function u -> {point, direction}; derivatives by finite differences.
inline RuledCurve from_function(std::function<std::pair<Vec3d, Vec3d>(double)> f, Interval domain) {
  const double scale = std::fmax(1.0, domain.length());
  auto sample = [f](double u) {
    const auto [p, d] = f(u);
    const Vec3d e = normalized(d);
    const Vec3d m = cross(p, e);
    return std::array<double, 6>{e.x, e.y, e.z, m.x, m.y, m.z};
  };
  auto fn = [sample, scale](double s, int order) {
    std::array<std::vector<double>, 6> coeffs;
    for (auto& c : coeffs) c.assign(static_cast<size_t>(order) + 1, 0.0);
    const auto v = sample(s);
    for (size_t c = 0; c < 6; ++c) coeffs[c][0] = v[c];
    for (int j = 1; j <= order; ++j) {
      const double h = std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (j + 2)) * scale;
      const auto d = detail::central_derivative(sample, s, j, h);
      for (size_t c = 0; c < 6; ++c) coeffs[c][static_cast<size_t>(j)] = d[c] / Taylor::factorial(j);
    }
    return SeriesLine{{Taylor(coeffs[0]), Taylor(coeffs[1]), Taylor(coeffs[2])},
                      {Taylor(coeffs[3]), Taylor(coeffs[4]), Taylor(coeffs[5])}};
  };
  return RuledCurve(fn, domain, kNumericMaxOrder, DerivativeSource::Numeric, false);
}

/// Moving every ruling by a rigid motion.
inline RuledCurve apply_motion(const RuledCurve& c, const DualQuaternion& q) {
  if (!q.is_unit()) fail(ErrorCode::NotUnit, "apply_motion needs a unit dual quaternion");
  const Eigen::Matrix3d R = q.q0.matrix();
  const Vec3d t = q.translation_part();
  auto rot = [R](const SeriesVec& v) {
    return SeriesVec{R(0, 0) * v.x + R(0, 1) * v.y + R(0, 2) * v.z, R(1, 0) * v.x + R(1, 1) * v.y + R(1, 2) * v.z,
                     R(2, 0) * v.x + R(2, 1) * v.y + R(2, 2) * v.z};
  };
  auto fn = [c, rot, t](double s, int order) {
    const SeriesLine l = c.jet(s, order);
    const SeriesVec d = rot(l.v0);
    return SeriesLine{d, rot(l.v1) + cross(constant_series(t), d)};
  };
  return RuledCurve(fn, c.domain(), c.max_order(), c.source(), c.is_arclength());
}

// ---- closed-form surfaces ----

/// r = (0, 0, p s), e = (cos s, sin s, 0).
inline RuledCurve helicoid(double p, Interval domain = {-3.0, 3.0}) {
  return from_generator(
      [p](const Taylor& u) {
        return std::pair{SeriesVec{Taylor(0.0), Taylor(0.0), p * u}, SeriesVec{cos(u), sin(u), Taylor(0.0)}};
      },
      domain, true);
}

/// Tangent lines of the unit-speed helix (a cos(s/c), a sin(s/c), h s/c), c = sqrt(a^2 + h^2).
inline RuledCurve helix_tangent_developable(double a, double h, Interval domain = {-3.0, 3.0}) {
  if (!(a > 0.0)) fail(ErrorCode::InvalidArgument, "helix radius must be positive");
  const double c = std::sqrt(a * a + h * h);
  return from_generator(
      [a, h, c](const Taylor& u) {
        const Taylor w = u * Taylor(1.0 / c);
        Taylor sn, cs;
        sincos(w, sn, cs);
        return std::pair{SeriesVec{a * cs, a * sn, h * w}, SeriesVec{-(a / c) * sn, (a / c) * cs, Taylor(h / c) + 0.0 * u}};
      },
      domain);
}

/// Circular cone with apex `apex` and half-angle `alpha` about the z-axis.
inline RuledCurve cone(const Vec3d& apex, double alpha, Interval domain = {-3.0, 3.0}) {
  if (!(alpha > 0.0 && alpha < std::numbers::pi / 2)) fail(ErrorCode::InvalidArgument, "cone half-angle must lie in (0, pi/2)");
  const double sa = std::sin(alpha);
  const double ca = std::cos(alpha);
  return from_generator(
      [apex, sa, ca](const Taylor& u) {
        Taylor sn, cs;
        sincos(u, sn, cs);
        return std::pair{constant_series(apex), SeriesVec{sa * cs, sa * sn, Taylor(ca) + 0.0 * u}};
      },
      domain);
}

}  // namespace ruledkit
