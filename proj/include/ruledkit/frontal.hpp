#pragma once

#include <array>
#include <cmath>
#include <string>

#include "ruledkit/canonical.hpp"
#include "ruledkit/frenet.hpp"
#include "ruledkit/singular.hpp"

namespace ruledkit {

/// Unit normal, singularity function and null vector field of a developable F(s,t) = r(s) + t e(s).
class FrontalData {
 public:
  explicit FrontalData(RuledCurve c) : c_(std::move(c)) {}

  const RuledCurve& curve() const { return c_; }

  /// nu = e x e' / |e x e'|, constant along each ruling.
  Vec3d normal(double s, double /*t*/ = 0.0) const {
    const SeriesLine v = c_.jet(s, 1);
    const Vec3d n = cross(value_of(v.v0), coefficient_of(v.v0, 1));
    const double len = norm(n);
    if (!(len > kDefaultTolerances.cylinder_floor)) fail(ErrorCode::DegenerateDirector, "e x e' vanishes");
    return n / len;
  }

  /// lambda = det[F_s, F_t, nu]
  double lambda(double s, double t) const {
    const SeriesLine v = c_.jet(s, 1);
    const SeriesVec r = cross(v.v0, v.v1);
    const Vec3d Fs = coefficient_of(r, 1) + t * coefficient_of(v.v0, 1);
    return det(Fs, value_of(v.v0), normal(s));
  }

  /// eta = d/ds - (r'.e) d/dt, spanning ker dF along the singular set; returned as (ds, dt).
  std::array<double, 2> null_direction(double s, double /*t*/ = 0.0) const {
    const SeriesLine v = c_.jet(s, 1);
    const SeriesVec r = cross(v.v0, v.v1);
    return {1.0, -dot(coefficient_of(r, 1), value_of(v.v0))};
  }

  /// |nu_s|; the map (F, nu) is a Legendre immersion where this is nonzero.
  double normal_speed(double s) const {
    const SeriesLine v = c_.jet(s, 2);
    const SeriesVec n = cross(v.v0, series_derivative(v.v0));
    using std::sqrt;
    const SeriesVec nu = n / sqrt(dot(n, n));
    return norm(coefficient_of(nu, 1));
  }

 private:
  RuledCurve c_;
};

inline FrontalData frontal_data(const RuledCurve& c, double developable_tol = 1e-8) {
  require_arclength(c);
  if (!is_developable(c, developable_tol)) fail(ErrorCode::NotDevelopable, "kappa1 does not vanish identically");
  FrontalData fd(c);
  fd.normal(c.domain().clamp(0.0));
  return fd;
}

struct IzumiyaSajiResult {
  std::string label;                 // cE, Sw, cA4 or cA5
  std::array<double, 4> derivatives{};  // eta lambda, eta eta lambda, ... at p
};

/// Iterated derivatives of the normalized singularity function at p = (s0, t0).
///
/// In canonical coordinates y = s, x = first component of F, the singular set is a graph
/// x = g(y); with lambda = x - g(y) and eta = d/dy one has eta^k lambda = -g^(k).
inline std::array<double, 4> eta_lambda_derivatives(const FrontalData& fd, double s0) {
  const RuledCurve& c = fd.curve();
  const SeriesLine l = transform_series(c.jet(s0, 6), canonical_frame_at(c, s0));
  const SeriesVec e = l.v0;
  const SeriesVec r = cross(l.v0, l.v1);
  const SeriesVec de = series_derivative(e);
  const SeriesVec dr = series_derivative(r);
  const SeriesVec nu_dir = cross(e, de);
  // det(r' + t e', e, nu) = 0 solved for t; |nu| cancels.
  const Taylor T = -det(dr, e, nu_dir) / det(de, e, nu_dir);
  const Taylor g = r.x.truncated(T.order()) + T * e.x;
  const auto d = g.derivative_values(4);
  return {-d[1], -d[2], -d[3], -d[4]};
}

inline IzumiyaSajiResult izumiya_saji_classify(const FrontalData& fd, double s0, double t0,
                                               const Tolerances& tol = kDefaultTolerances) {
  const double scale = 1.0 + std::fabs(t0);
  if (std::fabs(fd.lambda(s0, t0)) > 1e-6 * scale)
    fail(ErrorCode::DegenerateSingularity, "p is not a singular point (lambda != 0)");
  if (!(fd.normal_speed(s0) > 1e-6))
    fail(ErrorCode::DegenerateSingularity, "the normal is stationary at p (tau0 = 0); not a Legendre immersion");
  IzumiyaSajiResult res;
  res.derivatives = eta_lambda_derivatives(fd, s0);
  double jet_scale = 1.0;
  for (double v : res.derivatives) jet_scale = std::fmax(jet_scale, std::fabs(v));
  static const char* labels[4] = {"cE", "Sw", "cA4", "cA5"};
  for (int k = 0; k < 4; ++k)
    if (std::fabs(res.derivatives[static_cast<size_t>(k)]) > tol.classify * jet_scale) {
      res.label = labels[k];
      return res;
    }
  fail(ErrorCode::NoVerdict, "eta^k lambda vanishes for k = 1..4");
}

}  // namespace ruledkit
