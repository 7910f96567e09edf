#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "ruledkit/frenet.hpp"
#include "ruledkit/ruled_curve.hpp"
#include "ruledkit/tolerances.hpp"

namespace ruledkit {

/// kappa1 at s on an arclength-parameterized curve.
inline double kappa1_at(const RuledCurve& c, double s) {
  const SeriesLine v = c.jet(s, 1);
  const Vec3d d0 = coefficient_of(v.v0, 1);
  return dot(d0, coefficient_of(v.v1, 1)) / norm(d0);
}

/// Derivative values of kappa1 at s up to `order`.
inline std::vector<double> kappa1_derivatives(const RuledCurve& c, double s, int order) {
  const SeriesLine v = c.jet(s, order + 1);
  const SeriesLine dv = series_derivative(v);
  using std::sqrt;
  const Taylor k0 = sqrt(dot(dv.v0, dv.v0));
  return (dot(dv.v0, dv.v1) / k0).derivative_values(order);
}

inline std::vector<double> sample_grid(const Interval& I, int n) {
  std::vector<double> s(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) s[static_cast<size_t>(i)] = I.lo + I.length() * i / (n - 1);
  return s;
}

inline bool is_developable(const RuledCurve& c, double tol = 1e-8, int samples = 201) {
  require_arclength(c);
  for (double s : sample_grid(c.domain(), samples))
    if (std::fabs(kappa1_at(c, s)) > tol) return false;
  return true;
}

struct SingularPoint {
  double s = 0.0;
  double t = 0.0;
  int multiplicity = 1;  // vanishing order of kappa1 detected at s

  bool operator==(const SingularPoint&) const = default;
};

struct SingularLocus {
  bool singular_curve = false;  // developable: every ruling carries one singular point
  std::vector<SingularPoint> points;

  bool operator==(const SingularLocus&) const = default;
};

namespace detail {

inline double refine_bracket(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  std::uintmax_t iters = 200;
  auto tol = [](double x, double y) { return std::fabs(x - y) <= 4e-16 * (1.0 + std::fabs(x)); };
  const auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, iters);
  return 0.5 * (r.first + r.second);
}

/// Vanishing order of kappa1 at s and the root polished on the first non-vanishing derivative.
inline SingularPoint polish_root(const RuledCurve& c, double s, double lo, double hi, double scale) {
  const int top = std::min(6, c.max_order() - 1);
  const double loose = 1e-6 * scale;
  auto order_at = [&](double x) {
    const auto d = kappa1_derivatives(c, x, top);
    for (int j = 1; j <= top; ++j)
      if (std::fabs(d[static_cast<size_t>(j)]) > loose) return j;
    return top;
  };
  int m = order_at(s);
  if (m >= 2) {
    // kappa1^(m-1) has a simple root at a root of multiplicity m.
    for (int it = 0; it < 60; ++it) {
      const auto d = kappa1_derivatives(c, s, m);
      const double step = d[static_cast<size_t>(m) - 1] / d[static_cast<size_t>(m)];
      if (!std::isfinite(step)) break;
      const double next = std::clamp(s - step, lo, hi);
      if (std::fabs(next - s) <= 1e-16 * (1.0 + std::fabs(s))) {
        s = next;
        break;
      }
      s = next;
    }
    m = order_at(s);
  }
  return {s, 0.0, m};
}

}  // namespace detail

/// Points (s0, t0) with kappa1(s0) = 0 and t0 = -r'(s0).e'(s0); the whole striction curve for developables.
inline SingularLocus singular_locus(const RuledCurve& c, int samples = 1001, const Tolerances& tol = kDefaultTolerances) {
  require_arclength(c);
  const StrictionCurve sc(c);
  const std::vector<double> s = sample_grid(c.domain(), samples);
  std::vector<double> k(s.size());
  double scale = 0.0;
  for (size_t i = 0; i < s.size(); ++i) {
    k[i] = kappa1_at(c, s[i]);
    scale = std::fmax(scale, std::fabs(k[i]));
  }
  SingularLocus out;
  if (scale <= 1e-8) {
    out.singular_curve = true;
    for (double si : s) out.points.push_back({si, sc.offset(si), 0});
    return out;
  }
  const double accept = 1e-10 * (1.0 + scale);
  auto f = [&c](double x) { return kappa1_at(c, x); };
  auto df = [&c](double x) { return kappa1_derivatives(c, x, 1)[1]; };
  std::vector<SingularPoint> found;
  const size_t n = s.size();
  for (size_t i = 0; i < n; ++i) {
    const double lo = s[i > 0 ? i - 1 : 0];
    const double hi = s[i + 1 < n ? i + 1 : n - 1];
    if (k[i] == 0.0) {
      found.push_back(detail::polish_root(c, s[i], lo, hi, 1.0 + scale));
      continue;
    }
    if (i + 1 < n && k[i] * k[i + 1] < 0.0) {
      const double r = detail::refine_bracket(f, s[i], s[i + 1]);
      found.push_back(detail::polish_root(c, r, s[i], s[i + 1], 1.0 + scale));
      continue;
    }
    // Touching roots: local minimum of |kappa1| without a sign change.
    if (i > 0 && i + 1 < n && std::fabs(k[i]) <= std::fabs(k[i - 1]) && std::fabs(k[i]) <= std::fabs(k[i + 1]) &&
        std::fabs(k[i]) < std::fmax(std::fabs(k[i - 1]), std::fabs(k[i + 1])) &&
        k[i - 1] * k[i] > 0.0 && k[i] * k[i + 1] > 0.0) {
      const double da = df(lo), db = df(hi);
      double x = s[i];
      if (da * db < 0.0) x = detail::refine_bracket(df, lo, hi);
      const SingularPoint p = detail::polish_root(c, x, lo, hi, 1.0 + scale);
      if (std::fabs(f(p.s)) <= accept) found.push_back(p);
    }
  }
  std::sort(found.begin(), found.end(), [](const SingularPoint& a, const SingularPoint& b) { return a.s < b.s; });
  const double merge = 0.5 * c.domain().length() / (samples - 1);
  for (const auto& p : found) {
    if (std::fabs(f(p.s)) > std::fmax(accept, tol.geo_scaled(scale))) continue;
    if (!out.points.empty() && std::fabs(out.points.back().s - p.s) < merge) {
      if (p.multiplicity > out.points.back().multiplicity) out.points.back() = p;
      continue;
    }
    out.points.push_back(p);
  }
  for (auto& p : out.points) p.t = sc.offset(p.s);
  return out;
}

}  // namespace ruledkit
