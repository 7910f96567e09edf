// Acceptance criteria: one PASS/FAIL line each; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "ruledkit/cli.hpp"

using namespace ruledkit;
using oracle::nonzero;
using oracle::uniform;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double rel(double a, double b) { return std::fabs(a - b) / std::fmax(1.0, std::fmax(std::fabs(a), std::fabs(b))); }

/// The fixed set of surfaces used by criteria 2-4.
std::vector<std::pair<std::string, RuledCurve>> test_surfaces() {
  std::vector<std::pair<std::string, RuledCurve>> out;
  out.emplace_back("helicoid", helicoid(0.5));
  out.emplace_back("helix tangent developable", arclength_reparam(helix_tangent_developable(1.0, 1.0, {-1.0, 1.0})));
  for (int i = 0; i < 20; ++i) out.emplace_back("random polynomial " + std::to_string(i), oracle::random_polynomial_surface());
  return out;
}

Outcome ac1_algebra() {
  double worst = 0.0;
  auto rvec = [] { return Vec3d{uniform(-2, 2), uniform(-2, 2), uniform(-2, 2)}; };
  auto rdual = [] { return Dual{uniform(-2, 2), uniform(-2, 2)}; };
  auto rdvec = [&] { return DualVec{rvec(), rvec()}; };
  auto track = [&](double got, double want) { worst = std::fmax(worst, rel(got, want)); };
  for (int i = 0; i < 10000; ++i) {
    const Dual a = rdual(), b = rdual(), c = rdual();
    const Dual l = (a * b) * c, r = a * (b * c);
    track(l.real, r.real);
    track(l.dual, r.dual);
    const Dual eps{0.0, 1.0};
    const Dual e2 = eps * eps;
    track(e2.real, 0.0);
    track(e2.dual, 0.0);
    // (a x b).(c x d) = (a.c)(b.d) - (a.d)(b.c) over dual vectors
    const DualVec A = rdvec(), B = rdvec(), C = rdvec(), D = rdvec();
    const Dual lhs = dual_dot(dual_cross(A, B), dual_cross(C, D));
    const Dual rhs = dual_dot(A, C) * dual_dot(B, D) - dual_dot(A, D) * dual_dot(B, C);
    track(lhs.real, rhs.real);
    track(lhs.dual, rhs.dual);
    const Quaternion p{uniform(-1, 1), uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
    const Quaternion q{uniform(-1, 1), uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
    const Quaternion s{uniform(-1, 1), uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
    const Quaternion ql = (p * q) * s, qr = p * (q * s);
    track(ql.w, qr.w);
    track(ql.x, qr.x);
    track(ql.y, qr.y);
    track(ql.z, qr.z);
    const Vec3d axis = normalized(rvec());
    const DualQuaternion m = DualQuaternion::from_rotation_translation(Quaternion::rotation(axis, uniform(-3, 3)), rvec());
    const Vec3d x = rvec(), y = rvec();
    track(norm(dq_act(m, x) - dq_act(m, y)), norm(x - y));
  }
  return {worst <= 1e-12, fmt("40000 identity checks, worst relative defect %.2e", worst)};
}

Outcome ac2_frenet_residual(const std::vector<std::pair<std::string, RuledCurve>>& surfaces) {
  double worst = 0.0;
  for (const auto& [name, c] : surfaces)
    for (double s : sample_grid(c.domain(), 1001)) worst = std::fmax(worst, frenet_at(c, s).residual);
  return {worst <= 1e-8, fmt("22 surfaces x 1001 points, sup residual %.2e", worst)};
}

Outcome ac3_cross_path(const std::vector<std::pair<std::string, RuledCurve>>& surfaces) {
  double worst = 0.0;
  for (const auto& [name, c] : surfaces)
    for (double s : sample_grid(c.domain(), 201)) worst = std::fmax(worst, invariant_jet(c, s, 3).cross_path_defect);
  return {worst <= 1e-6, fmt("determinant vs definitional invariants (orders 0-3), worst %.2e", worst)};
}

Outcome ac4_striction(const std::vector<std::pair<std::string, RuledCurve>>& surfaces) {
  double worst = 0.0;
  for (const auto& [name, c] : surfaces) {
    const StrictionCurve sc(c);
    for (double s : sample_grid(c.domain(), 201)) {
      const SeriesVec sig = sc.jet(s, 1);
      const FrenetPoint f = frenet_at(c, s);
      const Vec3d sigma = value_of(sig), dsigma = coefficient_of(sig, 1);
      const Vec3d v0 = f.frame.v.direction(), v1 = f.frame.v.moment(), t0 = f.frame.t.direction();
      worst = std::fmax(worst, max_abs(cross(sigma, v0) - v1));
      worst = std::fmax(worst, max_abs(dsigma - (f.invariants.tau1 * v0 + f.invariants.kappa1 * t0)));
    }
  }
  return {worst <= 1e-8, fmt("sigma x v0 = v1 and sigma' = tau1 v0 + kappa1 t0, worst %.2e", worst)};
}

Outcome ac5_rank() {
  double worst_sing = 0.0, worst_reg = 1e300;
  for (Label l : {Label::S0, Label::S1Plus, Label::S2, Label::H2, Label::CE, Label::Sw}) {
    const RuledCurve c = gallery(l).surface;
    const SingularLocus loc = singular_locus(c);
    const size_t stride = loc.singular_curve ? 50 : 1;
    for (size_t i = 0; i < loc.points.size(); i += stride) {
      const auto [smin, smax] = oracle::jacobian_singular_values(c, loc.points[i].s, loc.points[i].t);
      worst_sing = std::fmax(worst_sing, smin / smax);
    }
  }
  const RuledCurve h = helicoid(1.0);
  const RuledCurve s0 = gallery(Label::S0).surface;
  for (int i = 0; i < 100; ++i) {
    const bool first = i % 2 == 0;
    const double s = first ? uniform(-3, 3) : (uniform(0, 1) < 0.5 ? -1.0 : 1.0) * uniform(0.2, 0.5);
    const auto [smin, smax] = oracle::jacobian_singular_values(first ? h : s0, s, uniform(-1, 1));
    worst_reg = std::fmin(worst_reg, smin / smax);
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "singular points: max smin/|dF| %.2e; regular points: min %.2e", worst_sing, worst_reg);
  return {worst_sing <= 1e-7 && worst_reg >= 1e-3, buf};
}

/// Perturbation of a gallery prescription that leaves the row's stratum.
struct OffStratum {
  Label label;
  int slot;   // 0 kappa1, 1 tau0, 2 tau1
  int index;  // derivative order perturbed
};

Outcome ac6_ruled_gallery() {
  const std::vector<OffStratum> rows = {
      {Label::S0, 0, 0},      {Label::S1Plus, 0, 1},  {Label::S1Minus, 0, 1}, {Label::S2, 0, 2},
      {Label::B2Plus, 0, 2},  {Label::B2Minus, 0, 2}, {Label::H2, 2, 0},      {Label::S3Plus, 0, 3},
      {Label::S3Minus, 0, 3}, {Label::C3Plus, 1, 0},  {Label::C3Minus, 1, 0}, {Label::F4, 0, 3},
      {Label::C4Plus, 0, 3},  {Label::C4Minus, 0, 3}, {Label::C5Plus, 0, 4},  {Label::C5Minus, 0, 4}};
  bool ok = true;
  std::string detail;
  for (const auto& row : rows) {
    const GalleryEntry g = gallery(row.label);
    const SingularityReport got = classify_at(g.surface, 0.0);
    std::vector<double> jets[3] = {g.kappa1, g.tau0, g.tau1};
    auto& v = jets[row.slot];
    if (v.size() <= static_cast<size_t>(row.index)) v.resize(static_cast<size_t>(row.index) + 1, 0.0);
    v[static_cast<size_t>(row.index)] += 1e-3;
    const SingularityReport off = classify_at(truncated_polynomial_surface(jets[0], jets[1], jets[2]), 0.0);
    const bool row_ok = got.label == row.label && off.codimension >= 0 && off.codimension < codimension(row.label);
    ok = ok && row_ok;
    detail += std::string(to_string(row.label)) + "->" + std::string(to_string(off.label)) + (row_ok ? " " : "(!) ");
  }
  return {ok, detail};
}

Outcome ac7_developable_gallery() {
  bool ok = true;
  std::string detail;
  for (Label l : {Label::CE, Label::CS0, Label::CS1Plus, Label::CC3Plus, Label::Sw, Label::CA4, Label::CA5, Label::T1, Label::T2}) {
    const GalleryEntry g = gallery(l);
    const InvariantJet j = invariant_jet(g.surface, 0.0, kClassifyOrder);
    const bool row_ok = is_developable(g.surface) && classify_developable(j).label == l;
    ok = ok && row_ok;
    if (!row_ok) detail += std::string(to_string(l)) + " not reproduced; ";
  }
  const std::set<std::string> allowed = {"cE", "cS0", "cS1+", "cC3+", "Sw", "cA4", "cA5", "T1", "T2", "Unresolved"};
  std::map<std::string, int> seen;
  for (int i = 0; i < 1000; ++i) {
    // Random small-integer jets, with frequent zeros so that degenerate strata are visited.
    std::vector<double> t0(4), t1(4);
    for (auto* v : {&t0, &t1})
      for (auto& x : *v) x = oracle::uniform_int(0, 2) == 0 ? static_cast<double>(oracle::uniform_int(-2, 2)) : 0.0;
    const RuledCurve c = truncated_polynomial_surface({0.0}, t0, t1);
    const std::string label(to_string(classify_developable(invariant_jet(c, 0.0, kClassifyOrder)).label));
    ++seen[label];
    if (!allowed.count(label)) {
      ok = false;
      detail += "emitted " + label + "; ";
    }
  }
  detail += "labels over 1000 random developables:";
  for (const auto& [k, n] : seen) detail += " " + k + "=" + std::to_string(n);
  return {ok, detail};
}

Outcome ac8_izumiya_saji() {
  bool ok = true;
  double worst = 0.0;
  int compared = 0;
  std::string detail;
  auto compare = [&](const RuledCurve& c, const std::string& name) {
    const Label l = classify_developable(invariant_jet(c, 0.0, kClassifyOrder)).label;
    const FrontalData fd = frontal_data(c);
    const IzumiyaSajiResult is = izumiya_saji_classify(fd, 0.0, StrictionCurve(c).offset(0.0));
    ++compared;
    if (is.label != std::string(to_string(l))) {
      ok = false;
      detail += name + ": " + std::string(to_string(l)) + " vs eta-lambda " + is.label + "; ";
    }
  };
  for (Label l : {Label::CE, Label::CS0, Label::CS1Plus, Label::CC3Plus, Label::Sw, Label::CA4, Label::CA5, Label::T1, Label::T2}) {
    const GalleryEntry g = gallery(l);
    if (std::fabs(invariant_jet(g.surface, 0.0, 0).tau0[0]) > 1e-9)
      compare(g.surface, std::string(to_string(l)));
  }
  // Random members of each stratum: tau0(0) != 0, tau1 vanishing to order k.
  for (int i = 0; i < 200; ++i) {
    const int k = i % 4;
    const RuledCurve c = truncated_polynomial_surface({0.0}, {nonzero(), uniform(-1, 1), uniform(-1, 1)},
                                                      oracle::jet_with_order(k, 6));
    compare(c, "random order " + std::to_string(k));
  }
  // eta lambda = -tau1 on cuspidal edges; with tau1 = 0 the higher identities.
  for (int i = 0; i < 20; ++i) {
    const double t0 = nonzero(), a = uniform(-2, 2), b = uniform(-2, 2), c3 = uniform(-2, 2), t1 = nonzero();
    const RuledCurve ce = truncated_polynomial_surface({0.0}, {t0, uniform(-1, 1)}, {t1, a});
    worst = std::fmax(worst, rel(eta_lambda_derivatives(frontal_data(ce), 0.0)[0], -t1));
    const RuledCurve sw = truncated_polynomial_surface({0.0}, {t0, uniform(-1, 1)}, {0.0, a, b, c3});
    const auto d = eta_lambda_derivatives(frontal_data(sw), 0.0);
    worst = std::fmax(worst, std::fabs(d[0]));
    worst = std::fmax(worst, rel(d[1], -a));
    worst = std::fmax(worst, rel(d[2], -b));
    worst = std::fmax(worst, rel(d[3], -(c3 - 3 * a)));
  }
  ok = ok && worst <= 1e-6;
  return {ok, detail + std::to_string(compared) + " developables with tau0 != 0 agree" +
                  fmt("; eta-lambda identity defect %.2e", worst)};
}

Outcome ac9_striction_type() {
  bool ok = true;
  int count = 0;
  std::string detail;
  for (int i = 0; i < 50; ++i) {
    const int m = 1 + i % 4;
    const int r = 1 + (i / 4) % 4;
    const std::vector<double> tau1 = oracle::jet_with_order(m - 1, 6);
    const std::vector<double> tau0 = oracle::jet_with_order(r - 1, 6);
    const RuledCurve c = truncated_polynomial_surface({0.0}, tau0, tau1);
    const CurveType ct = topological_type(invariant_jet(c, 0.0, kClassifyOrder));
    const auto ex = oracle::striction_exponents(c);
    const bool hit = ct.m == m && ct.l == 1 && ct.r == r && ex[0] == m && ex[1] == m + 1 && ex[2] == m + 1 + r;
    if (!hit) {
      ok = false;
      char buf[160];
      std::snprintf(buf, sizeof buf, "(m,r)=(%d,%d): type (%d,%d,%d), fit (%d,%d,%d); ", m, r, ct.m, ct.m + ct.l,
                    ct.m + ct.l + ct.r, ex[0], ex[1], ex[2]);
      detail += buf;
    }
    ++count;
  }
  return {ok, detail + std::to_string(count) + " random developables, types (m, m+1, m+1+r) for m, r in 1..4"};
}

/// Distance between the reconstructed frame lines and the original lines in canonical position.
double frame_error(const RuledCurve& original, const ReconstructedCurve& rc, double u) {
  const DualQuaternion q = canonical_frame_at(original, 0.0);
  const FrenetPoint f = frenet_at(original, u);
  const DualFrame& g = rc.frame_near(u);
  double e = 0.0;
  const UnitDualVector* a[3] = {&f.frame.v, &f.frame.n, &f.frame.t};
  const UnitDualVector* b[3] = {&g.v, &g.n, &g.t};
  for (int k = 0; k < 3; ++k) {
    const UnitDualVector moved = a[k]->transformed(q);
    e = std::fmax(e, std::fmax(max_abs(moved.direction() - b[k]->direction()), max_abs(moved.moment() - b[k]->moment())));
  }
  return e;
}

Outcome ac10_reconstruction() {
  const RuledCurve h = arclength_reparam(helix_tangent_developable(1.0, 1.0, {-1.0, 1.0}));
  const InvariantPrescription p = measured_prescription(h);
  const ReconstructedCurve rc = integrate_frenet(p, identity_frame(), 1e-3);
  const Alignment al = align_points(cli::striction_samples(rc.curve, 101, 9), cli::striction_samples(h, 101, 9));
  double err[3];
  const double steps[3] = {0.1, 0.05, 0.025};
  for (int i = 0; i < 3; ++i) {
    const ReconstructedCurve ri = integrate_frenet(p, identity_frame(), steps[i]);
    err[i] = std::fmax(frame_error(h, ri, h.domain().lo), frame_error(h, ri, h.domain().hi));
  }
  const double o1 = std::log2(err[0] / err[1]), o2 = std::log2(err[1] / err[2]);
  char buf[200];
  std::snprintf(buf, sizeof buf, "aligned sup distance %.2e at h=1e-3; errors %.2e %.2e %.2e, observed orders %.2f %.2f",
                al.max_residual, err[0], err[1], err[2], o1, o2);
  return {al.max_residual <= 1e-6 && o1 >= 3.7 && o1 <= 4.3 && o2 >= 3.7 && o2 <= 4.3, buf};
}

Outcome ac11_canonical_jet() {
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double k1p = uniform(-2, 2), k1pp = uniform(-2, 2), t0 = uniform(-2, 2), t1 = uniform(-2, 2), t1p = uniform(-2, 2);
    const RuledCurve base = truncated_polynomial_surface({0.0, k1p, k1pp, uniform(-1, 1)}, {t0, uniform(-1, 1)},
                                                         {t1, t1p, uniform(-1, 1)});
    // Move it out of canonical position so the normalization is exercised.
    const Vec3d axis = normalized(Vec3d{uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)});
    const RuledCurve c = apply_motion(
        base, DualQuaternion::from_rotation_translation(Quaternion::rotation(axis, uniform(-3, 3)),
                                                        Vec3d{uniform(-2, 2), uniform(-2, 2), uniform(-2, 2)}));
    const CanonicalJet j = canonical_jet(c, 0.0, 3);
    const oracle::CanonicalExpectation x = oracle::canonical_closed_form(k1p, k1pp, t0, t1, t1p);
    for (int comp = 0; comp < 3; ++comp) {
      for (int k = 0; k <= 3; ++k) worst = std::fmax(worst, oracle::rel_err(j.coefficient(comp, k, 0), x.r[comp][k]));
      for (int k = 0; k <= 2; ++k) worst = std::fmax(worst, oracle::rel_err(j.coefficient(comp, k, 1), x.e[comp][k]));
    }
  }
  return {worst <= 1e-6, fmt("20 random singular prescriptions in random position, worst relative coefficient error %.2e", worst)};
}

Outcome ac12_versal() {
  bool ok = true;
  std::string detail;
  for (double tau0 : {0.0, 1.0}) {  // S1+ and S1-
    const InvariantPrescription base = InvariantPrescription::from_jets({0, 0, 1}, {tau0}, {1});
    const DeformationFamily fam = versal_family_S1(base);
    const Label at0 = classify_at(fam.surface(0.0), 0.0).label;
    auto crosscaps = [&](double lambda) {
      const RuledCurve c = fam.surface(lambda);
      int n = 0;
      for (const auto& p : singular_locus(c).points)
        if (classify_at(c, p.s).label == Label::S0) ++n;
      return n;
    };
    const double sgn = fam.two_point_sign();
    const int two = crosscaps(sgn * 1e-3), none = crosscaps(-sgn * 1e-3);
    const bool row_ok = (at0 == Label::S1Plus || at0 == Label::S1Minus) && two == 2 && none == 0;
    ok = ok && row_ok;
    detail += std::string(to_string(at0)) + ": " + std::to_string(two) + " S0 points for lambda=" + fmt("%+g", sgn * 1e-3) +
              ", " + std::to_string(none) + " for lambda=" + fmt("%+g", -sgn * 1e-3) + "; ";
  }
  return {ok, detail};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Outcome ac13_cli() {
  const std::string cli = RULEDKIT_CLI_PATH;
  const std::string data = RULEDKIT_DATA_DIR;
  const std::string tmp = RULEDKIT_TMP_DIR;
  bool ok = true;
  std::string detail;
  for (const char* spec : {"helicoid.spec", "gallery_s0.spec", "s1_plus.spec", "cubic_polynomial.spec", "helix_developable.spec"}) {
    std::string first;
    for (int run = 0; run < 2; ++run) {
      const std::string out = tmp + "/ac13_" + std::to_string(run) + ".json";
      const int rc = std::system((cli + " analyze " + data + "/" + spec + " --json " + out + " > /dev/null").c_str());
      const std::string text = slurp(out);
      if (rc != 0 || text.empty()) {
        ok = false;
        detail += std::string(spec) + " failed; ";
      }
      if (run == 0)
        first = text;
      else if (text != first) {
        ok = false;
        detail += std::string(spec) + " not byte-identical; ";
      }
    }
  }
  const std::string obj = tmp + "/ac13.obj";
  const int rc = std::system((cli + " mesh " + data + "/helicoid.spec --grid 64x16 --t-range -1:1 -o " + obj + " > /dev/null").c_str());
  std::istringstream in(slurp(obj));
  std::string line;
  int v = 0, f = 0;
  while (std::getline(in, line)) {
    if (line.rfind("v ", 0) == 0) ++v;
    if (line.rfind("f ", 0) == 0) ++f;
  }
  ok = ok && rc == 0 && v == 64 * 16 && f == 2 * 63 * 15;
  return {ok, detail + "5 specs analyzed twice byte-identically; helicoid 64x16 mesh: " + std::to_string(v) + " vertices, " +
                  std::to_string(f) + " triangles"};
}

}  // namespace

int main() {
  const auto surfaces = test_surfaces();
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"AC1 algebra identities", ac1_algebra},
      {"AC2 Frenet residual", [&] { return ac2_frenet_residual(surfaces); }},
      {"AC3 invariant cross-path", [&] { return ac3_cross_path(surfaces); }},
      {"AC4 striction identities", [&] { return ac4_striction(surfaces); }},
      {"AC5 singular-point rank", ac5_rank},
      {"AC6 ruled-surface gallery", ac6_ruled_gallery},
      {"AC7 developable gallery", ac7_developable_gallery},
      {"AC8 Izumiya-Saji cross-check", ac8_izumiya_saji},
      {"AC9 curve type of the striction curve", ac9_striction_type},
      {"AC10 reconstruction completeness", ac10_reconstruction},
      {"AC11 canonical jet", ac11_canonical_jet},
      {"AC12 versal S1 family", ac12_versal},
      {"AC13 CLI determinism", ac13_cli},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %s (%.1fs): %s\n", o.pass ? "PASS" : "FAIL", name, secs, o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
