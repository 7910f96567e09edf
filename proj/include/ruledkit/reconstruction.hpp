#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ruledkit/arclength.hpp"
#include "ruledkit/classification.hpp"
#include "ruledkit/dual.hpp"
#include "ruledkit/error.hpp"
#include "ruledkit/frenet.hpp"
#include "ruledkit/ruled_curve.hpp"
#include "ruledkit/singular.hpp"
#include "ruledkit/tolerances.hpp"

namespace ruledkit {

/// Real function of the curve parameter with analytic jets; either a polynomial or an arbitrary jet source.
class ScalarFunction {
 public:
  using JetFn = std::function<Taylor(double, int)>;

  ScalarFunction() : poly_(Poly{0.0}) {}

  static ScalarFunction constant(double c) { return polynomial({c}); }

  /// sum_k c[k] u^k
  static ScalarFunction polynomial(Poly c) {
    if (c.empty()) c.push_back(0.0);
    ScalarFunction f;
    f.poly_ = std::move(c);
    return f;
  }

  /// Polynomial with the given derivative values at u = 0.
  static ScalarFunction from_derivatives(const std::vector<double>& d) {
    Poly c(d.size());
    for (size_t k = 0; k < d.size(); ++k) c[k] = d[k] / Taylor::factorial(static_cast<int>(k));
    return polynomial(std::move(c));
  }

  /// Arbitrary jet source; `max_order` is the highest order it can supply.
  static ScalarFunction from_jet(JetFn fn, int max_order) {
    ScalarFunction f;
    f.poly_.reset();
    f.fn_ = std::move(fn);
    f.max_order_ = max_order;
    return f;
  }

  int max_order() const { return max_order_; }

  Taylor jet(double u, int order) const {
    if (poly_) return horner<Taylor>(*poly_, Taylor::variable(u, order)).with_order(order);
    return fn_(u, order);
  }

  double operator()(double u) const {
    if (poly_) return horner<double>(*poly_, u);
    return fn_(u, 0).value();
  }

  const std::optional<Poly>& coefficients() const { return poly_; }

  bool is_constant(double c) const {
    if (!poly_) return false;
    for (size_t k = 0; k < poly_->size(); ++k)
      if ((*poly_)[k] != (k == 0 ? c : 0.0)) return false;
    return true;
  }

  ScalarFunction plus(double c) const {
    if (poly_) {
      Poly p = *poly_;
      p[0] += c;
      return polynomial(std::move(p));
    }
    return from_jet([fn = fn_, c](double u, int order) { return fn(u, order) + Taylor(c); }, max_order_);
  }

 private:
  std::optional<Poly> poly_;
  JetFn fn_;
  int max_order_ = Taylor::kExact;
};

struct InvariantPrescription {
  ScalarFunction kappa0 = ScalarFunction::constant(1.0);
  ScalarFunction kappa1;
  ScalarFunction tau0;
  ScalarFunction tau1;
  Interval domain{-0.5, 0.5};

  /// Derivative values at 0 of kappa1, tau0, tau1 with kappa0 = 1.
  static InvariantPrescription from_jets(const std::vector<double>& kappa1, const std::vector<double>& tau0,
                                         const std::vector<double>& tau1, Interval domain = {-0.5, 0.5}) {
    InvariantPrescription p;
    p.kappa1 = ScalarFunction::from_derivatives(kappa1);
    p.tau0 = ScalarFunction::from_derivatives(tau0);
    p.tau1 = ScalarFunction::from_derivatives(tau1);
    p.domain = domain;
    return p;
  }

  bool unit_speed() const { return kappa0.is_constant(1.0); }

  int max_order() const {
    return std::min({kappa0.max_order(), kappa1.max_order(), tau0.max_order(), tau1.max_order()});
  }
};

/// Invariants of an arclength-parameterized curve read back as a prescription (kappa0 = 1).
inline InvariantPrescription measured_prescription(const RuledCurve& c, const Tolerances& tol = kDefaultTolerances) {
  require_arclength(c);
  struct Cache {
    std::mutex m;
    double u = std::nan("");
    int order = -1;
    std::array<Taylor, 3> jets;
  };
  auto cache = std::make_shared<Cache>();
  auto get = [c, tol, cache](double u, int order, int which) {
    std::lock_guard<std::mutex> lock(cache->m);
    if (!(cache->u == u && cache->order == order)) {
      const FrenetSeries f = frenet_series(c.jet(u, order + 2), tol);
      cache->jets = {f.kappa.dual.truncated(order), f.tau.real.truncated(order), f.tau.dual.truncated(order)};
      cache->u = u;
      cache->order = order;
    }
    return cache->jets[static_cast<size_t>(which)];
  };
  InvariantPrescription p;
  const int top = c.max_order() - 2;
  p.kappa1 = ScalarFunction::from_jet([get](double u, int k) { return get(u, k, 0); }, top);
  p.tau0 = ScalarFunction::from_jet([get](double u, int k) { return get(u, k, 1); }, top);
  p.tau1 = ScalarFunction::from_jet([get](double u, int k) { return get(u, k, 2); }, top);
  p.domain = c.domain();
  return p;
}

namespace detail {

/// Frame components in the order v0, v1, n0, n1, t0, t1.
template <typename V>
using Frame6 = std::array<V, 6>;

/// Right-hand side of the dual Frenet system with P = kappa0, Q = kappa0 kappa1, T0 = kappa0 tau0, T1 = kappa0 tau1.
template <typename V, typename S>
Frame6<V> frenet_rhs(const S& P, const S& Q, const S& T0, const S& T1, const Frame6<V>& X) {
  const V &v0 = X[0], &v1 = X[1], &n0 = X[2], &n1 = X[3], &t0 = X[4], &t1 = X[5];
  return {P * n0,
          P * n1 + Q * n0,
          T0 * t0 - P * v0,
          T0 * t1 + T1 * t0 - P * v1 - Q * v0,
          -(T0 * n0),
          -(T0 * n1) - T1 * n0};
}

inline Frame6<Vec3d> to_frame6(const DualFrame& f) {
  return {f.v.direction(), f.v.moment(), f.n.direction(), f.n.moment(), f.t.direction(), f.t.moment()};
}

/// Dual Gram-Schmidt: normalize v, orthogonalize n against v, t = v x n.
inline DualFrame orthonormalize(const Frame6<Vec3d>& X) {
  const DualVec v = dual_normalized(DualVec{X[0], X[1]});
  DualVec n{X[2], X[3]};
  n = n - dual_dot(v, n) * v;
  n = dual_normalized(n);
  const DualVec t = dual_cross(v, n);
  return {UnitDualVector::normalized(v), UnitDualVector::normalized(n), UnitDualVector::normalized(t)};
}

/// Coefficient vectors of the four coefficient series at u.
struct CoefficientJets {
  std::vector<double> P, Q, T0, T1;
};

inline CoefficientJets coefficient_jets(const InvariantPrescription& p, double u, int order) {
  const Taylor k0 = p.kappa0.jet(u, order);
  if (!(k0.value() > 0.0)) fail(ErrorCode::NonPositiveKappa0, "kappa0(" + std::to_string(u) + ") <= 0");
  auto coeffs = [order](const Taylor& t) {
    std::vector<double> c(static_cast<size_t>(order) + 1);
    for (int k = 0; k <= order; ++k) c[static_cast<size_t>(k)] = t[k];
    return c;
  };
  return {coeffs(k0), coeffs(k0 * p.kappa1.jet(u, order)), coeffs(k0 * p.tau0.jet(u, order)),
          coeffs(k0 * p.tau1.jet(u, order))};
}

/// Taylor coefficients X_0..X_order of the frame solution through X(u) = X0.
inline std::vector<Frame6<Vec3d>> taylor_frame(const InvariantPrescription& p, double u, const Frame6<Vec3d>& X0, int order) {
  const CoefficientJets a = coefficient_jets(p, u, order);
  std::vector<Frame6<Vec3d>> X(static_cast<size_t>(order) + 1);
  X[0] = X0;
  for (int k = 0; k < order; ++k) {
    Frame6<Vec3d> acc{};
    for (int j = 0; j <= k; ++j) {
      const size_t jj = static_cast<size_t>(j);
      const Frame6<Vec3d> term = frenet_rhs(a.P[jj], a.Q[jj], a.T0[jj], a.T1[jj], X[static_cast<size_t>(k - j)]);
      for (size_t i = 0; i < 6; ++i) acc[i] += term[i];
    }
    for (auto& v : acc) v = v / static_cast<double>(k + 1);
    X[static_cast<size_t>(k) + 1] = acc;
  }
  return X;
}

inline Frame6<Vec3d> evaluate_frame(const std::vector<Frame6<Vec3d>>& X, double d) {
  Frame6<Vec3d> out{};
  for (auto it = X.rbegin(); it != X.rend(); ++it)
    for (size_t i = 0; i < 6; ++i) out[i] = out[i] * d + (*it)[i];
  return out;
}

inline SeriesLine line_from_coefficients(const std::vector<Frame6<Vec3d>>& X, int order) {
  auto series = [&](size_t comp, int axis) {
    std::vector<double> c(static_cast<size_t>(order) + 1);
    for (int k = 0; k <= order; ++k) c[static_cast<size_t>(k)] = X[static_cast<size_t>(k)][comp][axis];
    return Taylor(std::move(c));
  };
  auto vec = [&](size_t comp) { return SeriesVec{series(comp, 0), series(comp, 1), series(comp, 2)}; };
  return {vec(0), vec(1)};
}

inline Frame6<Vec3d> rk4_step(const InvariantPrescription& p, double u, double h, const Frame6<Vec3d>& X) {
  auto f = [&p](double x, const Frame6<Vec3d>& Y) {
    const double k0 = p.kappa0(x);
    if (!(k0 > 0.0)) fail(ErrorCode::NonPositiveKappa0, "kappa0(" + std::to_string(x) + ") <= 0");
    return frenet_rhs(k0, k0 * p.kappa1(x), k0 * p.tau0(x), k0 * p.tau1(x), Y);
  };
  auto axpy = [](const Frame6<Vec3d>& a, double k, const Frame6<Vec3d>& b) {
    Frame6<Vec3d> r;
    for (size_t i = 0; i < 6; ++i) r[i] = a[i] + k * b[i];
    return r;
  };
  const Frame6<Vec3d> k1 = f(u, X);
  const Frame6<Vec3d> k2 = f(u + h / 2, axpy(X, h / 2, k1));
  const Frame6<Vec3d> k3 = f(u + h / 2, axpy(X, h / 2, k2));
  const Frame6<Vec3d> k4 = f(u + h, axpy(X, h, k3));
  Frame6<Vec3d> out;
  for (size_t i = 0; i < 6; ++i) out[i] = X[i] + (h / 6) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

inline constexpr int kLocalOrder = 30;

}  // namespace detail

inline DualFrame identity_frame() {
  return {UnitDualVector(DualVec{{1, 0, 0}, {0, 0, 0}}), UnitDualVector(DualVec{{0, 1, 0}, {0, 0, 0}}),
          UnitDualVector(DualVec{{0, 0, 1}, {0, 0, 0}})};
}

struct ReconstructedCurve {
  std::vector<double> nodes;
  std::vector<DualFrame> frames;
  DualFrame initial;
  double max_defect = 0.0;  // largest dual orthonormality defect over the nodes
  RuledCurve curve;

  /// Frame at the node nearest to u.
  const DualFrame& frame_near(double u) const {
    const auto it = std::lower_bound(nodes.begin(), nodes.end(), u);
    size_t i = static_cast<size_t>(it - nodes.begin());
    if (i == nodes.size() || (i > 0 && std::fabs(nodes[i - 1] - u) <= std::fabs(nodes[i] - u))) --i;
    return frames[i];
  }
};

/// Integrates the dual Frenet system from `init` at the parameter origin with fixed-step RK4.
/// The curve between nodes is the local Taylor solution through the nearest node frame.
inline ReconstructedCurve integrate_frenet(const InvariantPrescription& p, const DualFrame& init, double step = 1e-3,
                                           const Tolerances& tol = kDefaultTolerances) {
  if (!(step > 0.0)) fail(ErrorCode::InvalidArgument, "step must be positive");
  if (!(p.domain.length() > 0.0)) fail(ErrorCode::InvalidArgument, "empty prescription domain");
  if (init.orthonormality_defect() > tol.unit) fail(ErrorCode::InvalidInitialFrame, "initial frame is not dual orthonormal");
  const Interval I = p.domain;
  const double u0 = I.origin();

  std::vector<double> back, fwd;
  std::vector<DualFrame> fback, ffwd;
  auto march = [&](double end, std::vector<double>& us, std::vector<DualFrame>& fs) {
    double u = u0;
    DualFrame F = init;
    const double dir = end >= u0 ? 1.0 : -1.0;
    const long n = static_cast<long>(std::ceil(std::fabs(end - u0) / step - 1e-9));
    for (long i = 1; i <= n; ++i) {
      const double next = i == n ? end : u0 + dir * step * static_cast<double>(i);
      F = detail::orthonormalize(detail::rk4_step(p, u, next - u, detail::to_frame6(F)));
      u = next;
      us.push_back(u);
      fs.push_back(F);
    }
  };
  march(I.lo, back, fback);
  march(I.hi, fwd, ffwd);

  auto nodes = std::make_shared<std::vector<double>>();
  auto frames = std::make_shared<std::vector<DualFrame>>();
  for (size_t i = back.size(); i-- > 0;) {
    nodes->push_back(back[i]);
    frames->push_back(fback[i]);
  }
  nodes->push_back(u0);
  frames->push_back(init);
  for (size_t i = 0; i < fwd.size(); ++i) {
    nodes->push_back(fwd[i]);
    frames->push_back(ffwd[i]);
  }
  double defect = 0.0;
  for (const auto& f : *frames) defect = std::fmax(defect, f.orthonormality_defect());

  const int local = std::min(detail::kLocalOrder, p.max_order());
  auto fn = [p, nodes, frames, local](double u, int order) {
    const auto it = std::lower_bound(nodes->begin(), nodes->end(), u);
    size_t i = static_cast<size_t>(it - nodes->begin());
    if (i == nodes->size() || (i > 0 && std::fabs((*nodes)[i - 1] - u) <= std::fabs((*nodes)[i] - u))) --i;
    detail::Frame6<Vec3d> X = detail::to_frame6((*frames)[i]);
    const double d = u - (*nodes)[i];
    if (d != 0.0) X = detail::evaluate_frame(detail::taylor_frame(p, (*nodes)[i], X, local), d);
    return detail::line_from_coefficients(detail::taylor_frame(p, u, X, order), order);
  };
  RuledCurve curve(fn, I, std::min(kAnalyticMaxOrder, p.max_order()), DerivativeSource::Analytic, p.unit_speed());
  return {*nodes, *frames, init, defect, std::move(curve)};
}

inline constexpr int kTruncationDegree = 20;

/// Polynomial ruled surface whose invariant jets at 0 agree with the prescription (Taylor truncation of the
/// frame solution through the identity frame). The director is renormalized; the resulting parameter is
/// arclength up to o(degree).
inline RuledCurve truncated_polynomial_surface(const InvariantPrescription& p, Interval domain = {-0.5, 0.5},
                                               int degree = kTruncationDegree) {
  const auto X = detail::taylor_frame(p, 0.0, detail::to_frame6(identity_frame()), degree);
  Poly3 r, e;
  for (int axis = 0; axis < 3; ++axis) {
    r[static_cast<size_t>(axis)].assign(static_cast<size_t>(degree) + 1, 0.0);
    e[static_cast<size_t>(axis)].assign(static_cast<size_t>(degree) + 1, 0.0);
  }
  // r = v0 x v1 truncated to the same degree.
  for (int i = 0; i <= degree; ++i)
    for (int j = 0; i + j <= degree; ++j) {
      const Vec3d c = cross(X[static_cast<size_t>(i)][0], X[static_cast<size_t>(j)][1]);
      for (int axis = 0; axis < 3; ++axis) r[static_cast<size_t>(axis)][static_cast<size_t>(i + j)] += c[axis];
    }
  for (int k = 0; k <= degree; ++k)
    for (int axis = 0; axis < 3; ++axis) e[static_cast<size_t>(axis)][static_cast<size_t>(k)] = X[static_cast<size_t>(k)][0][axis];
  return from_generator([r, e](const Taylor& u) { return std::pair{poly_series(r, u), poly_series(e, u)}; }, domain,
                        p.unit_speed());
}

/// Jets given as derivative values at 0 (order k <= 8 each).
inline RuledCurve truncated_polynomial_surface(const std::vector<double>& kappa1, const std::vector<double>& tau0,
                                               const std::vector<double>& tau1, Interval domain = {-0.5, 0.5}) {
  for (const auto* v : {&kappa1, &tau0, &tau1})
    if (v->size() > 9) fail(ErrorCode::InvalidArgument, "jets of order at most 8 are supported");
  return truncated_polynomial_surface(InvariantPrescription::from_jets(kappa1, tau0, tau1, domain), domain);
}

// ---- tangent developables in normal form ----

/// x = t, y = s^(m+l) + s^(m+l+1) phi(s) + t (s^l + s^(l+1) varphi(s)),
/// z = (l+r)(m+l+r) int_0^s u^r dy/du du.
inline RuledCurve tangent_developable_of_type(int m, int l, int r, const Poly& phi = {}, const Poly& varphi = {},
                                              Interval domain = {-0.5, 0.5}) {
  if (m < 1 || l < 1 || r < 1) fail(ErrorCode::InvalidArgument, "m, l, r must be at least 1");
  const double K = static_cast<double>((l + r) * (m + l + r));
  auto shifted = [](const Poly& f, int lead) {
    Poly c(static_cast<size_t>(lead) + 1 + f.size(), 0.0);
    c[static_cast<size_t>(lead)] = 1.0;
    for (size_t k = 0; k < f.size(); ++k) c[static_cast<size_t>(lead) + 1 + k] += f[k];
    return c;
  };
  auto z_of = [K, r](const Poly& y) {
    // K int_0^s u^r y'(u) du, exactly
    Poly z(y.size() + static_cast<size_t>(r), 0.0);
    for (size_t k = 1; k < y.size(); ++k) {
      const size_t deg = k - 1 + static_cast<size_t>(r) + 1;
      z[deg] += K * static_cast<double>(k) * y[k] / static_cast<double>(deg);
    }
    return z;
  };
  const Poly Y0 = shifted(phi, m + l);
  const Poly Y1 = shifted(varphi, l);
  const Poly3 P{Poly{0.0}, Y0, z_of(Y0)};
  const Poly3 E{Poly{1.0}, Y1, z_of(Y1)};
  return from_generator([P, E](const Taylor& u) { return std::pair{poly_series(P, u), poly_series(E, u)}; }, domain);
}

/// General smooth phi, varphi: z by adaptive quadrature, jets by finite differences.
inline RuledCurve tangent_developable_of_type(int m, int l, int r, std::function<double(double)> phi,
                                              std::function<double(double)> varphi, Interval domain = {-0.5, 0.5}) {
  if (m < 1 || l < 1 || r < 1) fail(ErrorCode::InvalidArgument, "m, l, r must be at least 1");
  const double K = static_cast<double>((l + r) * (m + l + r));
  // y = s^a + s^(a+1) f(s); dy/ds by central differences of f.
  auto dy = [](const std::function<double(double)>& f, int a) {
    return [f, a](double s) {
      const double h = 1e-5 * std::fmax(1.0, std::fabs(s));
      const double df = (f(s + h) - f(s - h)) / (2 * h);
      return a * std::pow(s, a - 1) + (a + 1) * std::pow(s, a) * f(s) + std::pow(s, a + 1) * df;
    };
  };
  auto Z = [K, r](std::function<double(double)> d) {
    return [K, r, d](double s) {
      if (s == 0.0) return 0.0;
      auto g = [r, &d](double u) { return std::pow(u, r) * d(u); };
      return K * boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, 0.0, s, 10, 1e-14);
    };
  };
  const int a0 = m + l;
  auto y0 = [phi, a0](double s) { return std::pow(s, a0) + std::pow(s, a0 + 1) * phi(s); };
  auto y1 = [varphi, l](double s) { return std::pow(s, l) + std::pow(s, l + 1) * varphi(s); };
  auto z0 = Z(dy(phi, a0));
  auto z1 = Z(dy(varphi, l));
  return from_function([=](double s) { return std::pair{Vec3d{0.0, y0(s), z0(s)}, Vec3d{1.0, y1(s), z1(s)}}; }, domain);
}

// ---- versal deformation of S1 ----

struct DeformationFamily {
  InvariantPrescription base;
  Interval lambda_box{-1e-2, 1e-2};
  Interval surface_domain{-0.5, 0.5};

  /// kappa1 shifted by lambda.
  InvariantPrescription member(double lambda) const {
    InvariantPrescription p = base;
    p.kappa1 = base.kappa1.plus(lambda);
    return p;
  }

  RuledCurve surface(double lambda) const { return truncated_polynomial_surface(member(lambda), surface_domain); }

  /// Sign of lambda for which kappa1 + lambda has two real zeros near 0.
  double two_point_sign() const {
    const double k2 = base.kappa1.jet(0.0, 2).derivative_value(2);
    return k2 > 0.0 ? -1.0 : 1.0;
  }
};

inline DeformationFamily versal_family_S1(const InvariantPrescription& base, const Tolerances& tol = kDefaultTolerances) {
  const auto k1 = base.kappa1.jet(0.0, 2).derivative_values(2);
  const double t0 = base.tau0(0.0), t1 = base.tau1(0.0);
  const double scale = std::fmax(1.0, std::fmax(std::fabs(k1[2]), std::fabs(t0 * t1)));
  const double eps = tol.classify * scale;
  if (std::fabs(k1[0]) > eps || std::fabs(k1[1]) > eps || std::fabs(k1[2]) <= eps ||
      std::fabs(k1[2] - 2 * t0 * t1) <= eps || std::fabs(t1) <= eps)
    fail(ErrorCode::NotOnStratum, "prescription is not on the S1 stratum at 0");
  DeformationFamily fam;
  fam.base = base;
  fam.surface_domain = base.domain;
  return fam;
}

// ---- gallery ----

struct GalleryEntry {
  Label label = Label::Unresolved;
  std::vector<double> kappa1, tau0, tau1;  // derivative values at 0
  RuledCurve surface;
};

struct GalleryRow {
  Label label;
  std::vector<double> kappa1, tau0, tau1;
  int slot;  // 0 kappa1, 1 tau0, 2 tau1: coefficient searched when the base prescription misses
  int index;
};

inline const std::vector<GalleryRow>& gallery_rows() {
  static const std::vector<GalleryRow> rows = {
      {Label::S0, {0, 1}, {0}, {0}, 0, 1},
      {Label::S1Plus, {0, 0, 1}, {0}, {1}, 0, 2},
      {Label::S1Minus, {0, 0, 1}, {1}, {1}, 0, 2},
      {Label::S2, {0, 0, 0, 1}, {1}, {1}, 0, 3},
      {Label::B2Minus, {0, 0, 2}, {1}, {1}, 0, 4},
      {Label::B2Plus, {0, 0, 2, 0, 10}, {1}, {1}, 0, 4},
      {Label::H2, {0, 0, 1}, {0}, {0, 1}, 2, 1},
      {Label::S3Plus, {0, 0, 0, 0, -1}, {1}, {1}, 0, 4},
      {Label::S3Minus, {0, 0, 0, 0, 1}, {1}, {1}, 0, 4},
      {Label::S4, {0, 0, 0, 0, 0, 1}, {1}, {1}, 0, 5},
      {Label::C3Plus, {0, 0, 0, 1}, {0}, {1}, 0, 3},
      {Label::C3Minus, {0, 0, 0, 1}, {0, 1}, {1}, 0, 3},
      {Label::F4, {0, 0, 0, 2, 1}, {0, 1}, {1}, 0, 4},
      {Label::C4Plus, {0, 0, 0, 0, -1}, {0, 1}, {1}, 0, 4},
      {Label::C4Minus, {0, 0, 0, 0, 1}, {0, 1}, {1}, 0, 4},
      {Label::C5Plus, {0, 0, 0, 0, 0, -1}, {0, 1}, {1}, 0, 5},
      {Label::C5Minus, {0, 0, 0, 0, 0, 1}, {0, 1}, {1}, 0, 5},
      {Label::CE, {0}, {1}, {1}, 1, 0},
      {Label::CS0, {0}, {0, 1}, {1}, 1, 1},
      {Label::CS1Plus, {0}, {0, 0, 1}, {1}, 1, 2},
      {Label::CC3Plus, {0}, {0, 0, 0, 1}, {1}, 1, 3},
      {Label::Sw, {0}, {1}, {0, 1}, 2, 1},
      {Label::CA4, {0}, {1}, {0, 0, 1}, 2, 2},
      {Label::CA5, {0}, {1}, {0, 0, 0, 1}, 2, 3},
      {Label::T1, {0}, {0}, {0, 1}, 2, 1},
      {Label::T2, {0}, {0, 1}, {0, 0, 1}, 2, 2},
  };
  return rows;
}

/// Order of the invariant jet used for classification.
inline constexpr int kClassifyOrder = 6;

inline SingularityReport classify_at(const RuledCurve& c, double s0, const Tolerances& tol = kDefaultTolerances) {
  const InvariantJet j = invariant_jet(c, s0, kClassifyOrder, tol);
  SingularityReport r = classify_ruled(j, tol);
  r.s0 = s0;
  r.t0 = StrictionCurve(c).offset(s0);
  return r;
}

/// A surface realizing `label` at s = 0. The tabulated prescription is tried first; if the classifier disagrees,
/// the row's free coefficient runs through a fixed list of small integers.
inline GalleryEntry gallery(Label label, const Tolerances& tol = kDefaultTolerances) {
  for (const auto& row : gallery_rows()) {
    if (row.label != label) continue;
    static const double kSearch[] = {0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 10, -10};
    for (double delta : kSearch) {
      GalleryRow g = row;
      auto& slot = row.slot == 0 ? g.kappa1 : (row.slot == 1 ? g.tau0 : g.tau1);
      if (slot.size() <= static_cast<size_t>(row.index)) slot.resize(static_cast<size_t>(row.index) + 1, 0.0);
      slot[static_cast<size_t>(row.index)] += delta;
      RuledCurve c = truncated_polynomial_surface(g.kappa1, g.tau0, g.tau1);
      if (classify_at(c, 0.0, tol).label == label) return {label, g.kappa1, g.tau0, g.tau1, std::move(c)};
    }
    fail(ErrorCode::UnsupportedLabel, "no gallery prescription found for " + std::string(to_string(label)));
  }
  fail(ErrorCode::UnsupportedLabel, std::string(to_string(label)) + " depends on moduli that are not evaluated");
}

// ---- rigid alignment ----

struct Alignment {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();
  double max_residual = 0.0;

  Vec3d apply(const Vec3d& x) const {
    const Eigen::Vector3d y = rotation * Eigen::Vector3d(x.x, x.y, x.z) + translation;
    return {y.x(), y.y(), y.z()};
  }
};

/// Least-squares rigid motion taking `from` onto `to` (Kabsch).
inline Alignment align_points(const std::vector<Vec3d>& from, const std::vector<Vec3d>& to) {
  if (from.size() != to.size() || from.size() < 3) fail(ErrorCode::InvalidArgument, "alignment needs matching point sets");
  Eigen::Matrix3Xd A(3, static_cast<Eigen::Index>(from.size())), B(3, static_cast<Eigen::Index>(to.size()));
  for (size_t i = 0; i < from.size(); ++i) {
    A.col(static_cast<Eigen::Index>(i)) << from[i].x, from[i].y, from[i].z;
    B.col(static_cast<Eigen::Index>(i)) << to[i].x, to[i].y, to[i].z;
  }
  const Eigen::Matrix4d T = Eigen::umeyama(A, B, false);
  Alignment al;
  al.rotation = T.topLeftCorner<3, 3>();
  al.translation = T.topRightCorner<3, 1>();
  for (size_t i = 0; i < from.size(); ++i) al.max_residual = std::fmax(al.max_residual, norm(al.apply(from[i]) - to[i]));
  return al;
}

}  // namespace ruledkit
