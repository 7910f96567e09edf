#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include <math.h>  // pchip.hpp calls unqualified isnan

#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "ruledkit/error.hpp"
#include "ruledkit/ruled_curve.hpp"
#include "ruledkit/tolerances.hpp"

namespace ruledkit {

/// Director speed |v0'(u)|.
inline double director_speed(const RuledCurve& c, double u) { return norm(coefficient_of(c.jet(u, 1).v0, 1)); }

/// s(u) = integral of |v0'| from the parameter origin, and its inverse.
class ArclengthMap {
 public:
  static constexpr int kGrid = 512;

  explicit ArclengthMap(RuledCurve curve, const Tolerances& tol = kDefaultTolerances) : curve_(std::move(curve)) {
    const Interval I = curve_.domain();
    u_.resize(kGrid);
    s_.resize(kGrid);
    for (int i = 0; i < kGrid; ++i) u_[static_cast<size_t>(i)] = I.lo + I.length() * i / (kGrid - 1);
    // Speed at the nodes, and at every interior minimum of |v0'|^2 (sign change of its derivative).
    auto check = [&](double u) {
      const double sp = director_speed(curve_, u);
      if (!(sp > tol.cylinder_floor)) fail(ErrorCode::CylindricalPoint, "|v0'| = " + std::to_string(sp) + " at u = " + std::to_string(u));
    };
    auto slope = [this](double u) {
      const SeriesLine j = curve_.jet(u, 2);
      return dot(coefficient_of(j.v0, 1), coefficient_of(j.v0, 2));
    };
    double prev = 0.0;
    for (int i = 0; i < kGrid; ++i) {
      const double u = u_[static_cast<size_t>(i)];
      check(u);
      const double g = slope(u);
      if (i > 0 && prev < 0.0 && g > 0.0) {
        std::uintmax_t iters = 100;
        auto close = [](double a, double b) { return std::fabs(a - b) <= 1e-15 * (1.0 + std::fabs(a)); };
        const auto r = boost::math::tools::toms748_solve(slope, u_[static_cast<size_t>(i) - 1], u, prev, g, close, iters);
        check(0.5 * (r.first + r.second));
      }
      prev = g;
    }
    s_[0] = 0.0;
    for (size_t i = 1; i < u_.size(); ++i) s_[i] = s_[i - 1] + integrate(u_[i - 1], u_[i]);
    origin_ = I.origin();
    const double shift = raw_s_of_u(origin_);
    for (auto& v : s_) v -= shift;
    for (size_t i = 1; i < s_.size(); ++i)
      if (!(s_[i] > s_[i - 1])) fail(ErrorCode::CylindricalPoint, "arclength is not strictly increasing");
    inverse_ = std::make_shared<Pchip>(std::vector<double>(s_), std::vector<double>(u_));
  }

  const RuledCurve& curve() const { return curve_; }
  Interval arclength_domain() const { return {s_.front(), s_.back()}; }
  double origin() const { return origin_; }

  double s_of_u(double u) const { return raw_s_of_u(u); }

  double speed(double u) const { return director_speed(curve_, u); }

  double u_of_s(double s) const {
    const Interval J = arclength_domain();
    const double sc = J.clamp(s);
    auto it = std::upper_bound(s_.begin(), s_.end(), sc);
    size_t i = it == s_.begin() ? 0 : static_cast<size_t>(it - s_.begin()) - 1;
    if (i + 1 >= s_.size()) i = s_.size() - 2;
    double lo = u_[i];
    double hi = u_[i + 1];
    double u = std::clamp((*inverse_)(sc), lo, hi);
    for (int iter = 0; iter < 50; ++iter) {
      const double f = s_of_u(u) - sc;
      if (std::fabs(f) <= 1e-15 * (1.0 + std::fabs(sc))) break;
      if (f > 0.0) hi = u;
      else lo = u;
      double next = u - f / speed(u);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      const bool done = std::fabs(next - u) <= 1e-14 * (1.0 + std::fabs(u));
      u = next;
      if (done) break;
    }
    return u;
  }

 private:
  using Pchip = boost::math::interpolators::pchip<std::vector<double>>;

  double integrate(double a, double b) const {
    if (a == b) return 0.0;
    auto f = [this](double u) { return director_speed(curve_, u); };
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0);
  }

  double raw_s_of_u(double u) const {
    auto it = std::upper_bound(u_.begin(), u_.end(), u);
    size_t i = it == u_.begin() ? 0 : static_cast<size_t>(it - u_.begin()) - 1;
    if (i + 1 >= u_.size()) i = u_.size() - 2;
    return s_[i] + integrate(u_[i], u);
  }

  RuledCurve curve_;
  std::vector<double> u_;
  std::vector<double> s_;
  double origin_ = 0.0;
  std::shared_ptr<Pchip> inverse_;
};

/// The same surface with rulings parameterized by the arclength of v0.
inline RuledCurve arclength_reparam(const RuledCurve& c, const Tolerances& tol = kDefaultTolerances) {
  if (c.is_arclength()) return c;
  auto map = std::make_shared<ArclengthMap>(c, tol);
  auto fn = [map](double s, int order) {
    const double u0 = map->u_of_s(s);
    const SeriesLine raw = map->curve().jet(u0, order + 1);
    using std::sqrt;
    const SeriesVec dv0 = series_derivative(raw.v0);
    const Taylor g = sqrt(dot(dv0, dv0)).integral(0.0);  // s - s0 as a series in u - u0
    const Taylor h = revert(g);                          // u - u0 as a series in s - s0
    auto sub = [&](const SeriesVec& v) {
      return SeriesVec{compose(v.x, h).truncated(order), compose(v.y, h).truncated(order), compose(v.z, h).truncated(order)};
    };
    return SeriesLine{sub(raw.v0), sub(raw.v1)};
  };
  return RuledCurve(fn, map->arclength_domain(), c.max_order() - 1, c.source(), true);
}

}  // namespace ruledkit
