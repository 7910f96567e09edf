#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "ruledkit/dual.hpp"
#include "ruledkit/error.hpp"
#include "ruledkit/ruled_curve.hpp"
#include "ruledkit/tolerances.hpp"

namespace ruledkit {

struct DualFrame {
  UnitDualVector v;
  UnitDualVector n;
  UnitDualVector t;

  /// Largest defect among the nine dual orthonormality relations and t = v x n.
  double orthonormality_defect() const {
    const DualVec* e[3] = {&v.dual(), &n.dual(), &t.dual()};
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const Dual d = dual_dot(*e[i], *e[j]);
        worst = std::fmax(worst, std::fabs(d.real - (i == j ? 1.0 : 0.0)));
        worst = std::fmax(worst, std::fabs(d.dual));
      }
    const DualVec c = dual_cross(v.dual(), n.dual()) - t.dual();
    return std::fmax(worst, std::fmax(max_abs(c.v0), max_abs(c.v1)));
  }
};

/// Dual Frenet apparatus along a local jet: frame series and kappa, tau series.
struct FrenetSeries {
  SeriesLine v, n, t;
  DualNumber<Taylor> kappa;
  DualNumber<Taylor> tau;
};

inline SeriesLine series_derivative(const SeriesLine& l) { return {series_derivative(l.v0), series_derivative(l.v1)}; }

/// kappa = sqrt(v'.v'), n = v'/kappa, t = v x n, tau = n'.t.  Needs a jet of order >= 2.
inline FrenetSeries frenet_series(const SeriesLine& v, const Tolerances& tol = kDefaultTolerances) {
  const SeriesLine dv = series_derivative(v);
  const DualNumber<Taylor> kk2 = dual_dot(dv, dv);
  if (!(kk2.real.value() > tol.cylinder_floor * tol.cylinder_floor))
    fail(ErrorCode::CylindricalPoint, "v0' vanishes (cylindrical ruling)");
  const DualNumber<Taylor> kappa = dual_sqrt(kk2);
  const SeriesLine n = dual_inverse(kappa) * dv;
  const SeriesLine t = dual_cross(v, n);
  const DualNumber<Taylor> tau = dual_dot(series_derivative(n), t);
  return {v, n, t, kappa, tau};
}

inline DualVec value_of(const SeriesLine& l) { return {value_of(l.v0), value_of(l.v1)}; }

struct InvariantValues {
  double kappa0 = 0.0;
  double kappa1 = 0.0;
  double tau0 = 0.0;
  double tau1 = 0.0;
};

struct FrenetPoint {
  double s = 0.0;
  DualFrame frame;
  InvariantValues invariants;
  double residual = 0.0;  // sup-norm of the Frenet equations at s
};

inline void require_arclength(const RuledCurve& c) {
  if (!c.is_arclength()) fail(ErrorCode::NotArclength, "curve must be parameterized by the arclength of v0");
}

/// Residual of  v' = kappa n,  n' = -kappa v + tau t,  t' = -tau n  at the jet origin.
inline double frenet_residual(const FrenetSeries& f) {
  auto at0 = [](const DualNumber<Taylor>& a) { return Dual{a.real.value(), a.dual.value()}; };
  const Dual k = at0(f.kappa);
  const Dual tau = at0(f.tau);
  const DualVec v = value_of(f.v), n = value_of(f.n), t = value_of(f.t);
  const DualVec dv = value_of(series_derivative(f.v));
  const DualVec dn = value_of(series_derivative(f.n));
  const DualVec dt = value_of(series_derivative(f.t));
  const DualVec r1 = dv - k * n;
  const DualVec r2 = dn - (tau * t - k * v);
  const DualVec r3 = dt + tau * n;
  double worst = 0.0;
  for (const DualVec* r : {&r1, &r2, &r3}) worst = std::fmax(worst, std::fmax(max_abs(r->v0), max_abs(r->v1)));
  return worst;
}

inline FrenetPoint frenet_at(const RuledCurve& c, double s, const Tolerances& tol = kDefaultTolerances) {
  require_arclength(c);
  const FrenetSeries f = frenet_series(c.jet(s, 3), tol);
  FrenetPoint p;
  p.s = s;
  p.frame = {UnitDualVector::normalized(value_of(f.v)), UnitDualVector::normalized(value_of(f.n)),
             UnitDualVector::normalized(value_of(f.t))};
  p.invariants = {f.kappa.real.value(), f.kappa.dual.value(), f.tau.real.value(), f.tau.dual.value()};
  p.residual = frenet_residual(f);
  return p;
}

/// Invariants from the determinant formulas:
/// kappa1 = det(e, e', r'), tau0 = det(e, e', e''), tau1 = sigma'.e, sigma = r - (r'.e') e.
struct DeterminantSeries {
  Taylor kappa1, tau0, tau1;
};

inline DeterminantSeries determinant_series(const SeriesLine& v) {
  const SeriesVec e = v.v0;
  const SeriesVec r = cross(v.v0, v.v1);
  const SeriesVec de = series_derivative(e);
  const SeriesVec dde = series_derivative(de);
  const SeriesVec dr = series_derivative(r);
  const SeriesVec sigma = r - dot(dr, de) * e;
  return {det(e, de, dr), det(e, de, dde), dot(series_derivative(sigma), e)};
}

/// Derivative values (index = order) of the invariants at s0.
struct InvariantJet {
  double s0 = 0.0;
  int order = 0;
  std::vector<double> kappa0, kappa1, tau0, tau1;
  double cross_path_defect = 0.0;  // max |definitional - determinant| / (1 + |value|)
};

inline InvariantJet invariant_jet(const RuledCurve& c, double s0, int order, const Tolerances& tol = kDefaultTolerances) {
  require_arclength(c);
  if (order < 0 || order + 2 > c.max_order())
    fail(ErrorCode::OrderUnavailable, "invariant jet of order " + std::to_string(order) + " needs curve order " +
                                          std::to_string(order + 2));
  const SeriesLine v = c.jet(s0, order + 2);
  const FrenetSeries f = frenet_series(v, tol);
  const DeterminantSeries d = determinant_series(v);
  InvariantJet j;
  j.s0 = s0;
  j.order = order;
  j.kappa0 = f.kappa.real.derivative_values(order);
  j.kappa1 = f.kappa.dual.derivative_values(order);
  j.tau0 = f.tau.real.derivative_values(order);
  j.tau1 = f.tau.dual.derivative_values(order);
  const auto k1 = d.kappa1.derivative_values(order);
  const auto t0 = d.tau0.derivative_values(order);
  const auto t1 = d.tau1.derivative_values(order);
  for (int k = 0; k <= order; ++k) {
    const size_t i = static_cast<size_t>(k);
    j.cross_path_defect = std::fmax(j.cross_path_defect, std::fabs(j.kappa1[i] - k1[i]) / (1.0 + std::fabs(j.kappa1[i])));
    j.cross_path_defect = std::fmax(j.cross_path_defect, std::fabs(j.tau0[i] - t0[i]) / (1.0 + std::fabs(j.tau0[i])));
    j.cross_path_defect = std::fmax(j.cross_path_defect, std::fabs(j.tau1[i] - t1[i]) / (1.0 + std::fabs(j.tau1[i])));
  }
  return j;
}

/// Striction curve sigma(s) = r(s) - (r'(s).e'(s)) e(s) and the ruling offset t0(s) = -r'.e'.
class StrictionCurve {
 public:
  explicit StrictionCurve(RuledCurve c) : c_(std::move(c)) { require_arclength(c_); }

  /// Series of sigma at s (order `order`).
  SeriesVec jet(double s, int order) const {
    const SeriesLine v = c_.jet(s, order + 1);
    const SeriesVec r = cross(v.v0, v.v1);
    const SeriesVec de = series_derivative(v.v0);
    const SeriesVec dr = series_derivative(r);
    SeriesVec sigma = r - dot(dr, de) * v.v0;
    return {sigma.x.truncated(order), sigma.y.truncated(order), sigma.z.truncated(order)};
  }

  Vec3d point(double s) const { return value_of(jet(s, 0)); }

  double offset(double s) const {
    const SeriesLine v = c_.jet(s, 1);
    const SeriesVec r = cross(v.v0, v.v1);
    return -dot(coefficient_of(r, 1), coefficient_of(v.v0, 1));
  }

  const RuledCurve& curve() const { return c_; }

 private:
  RuledCurve c_;
};

inline StrictionCurve striction(const RuledCurve& c) {
  // Non-cylindrical precondition checked at the origin; evaluation elsewhere re-checks through the frame.
  require_arclength(c);
  const double sp = norm(coefficient_of(c.jet(c.domain().clamp(0.0), 1).v0, 1));
  if (!(sp > kDefaultTolerances.cylinder_floor)) fail(ErrorCode::CylindricalPoint, "v0' vanishes");
  return StrictionCurve(c);
}

}  // namespace ruledkit
