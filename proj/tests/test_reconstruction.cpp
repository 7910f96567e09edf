#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "ruledkit/cli.hpp"

using namespace ruledkit;

namespace {

void expect_vec(const Vec3d& got, const Vec3d& want, double tol) {
  EXPECT_NEAR(got.x, want.x, tol);
  EXPECT_NEAR(got.y, want.y, tol);
  EXPECT_NEAR(got.z, want.z, tol);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

InvariantPrescription flat(Interval domain) {
  InvariantPrescription p;
  p.domain = domain;
  return p;
}

}  // namespace

TEST(IntegrateFrenet, GreatCirclePencil) {
  const ReconstructedCurve rc = integrate_frenet(flat({-1.0, 1.0}), identity_frame(), 1e-2);
  EXPECT_LE(rc.max_defect, 1e-10);
  for (double s : {-1.0, -0.33, 0.0, 0.5, 1.0}) {
    const DualVec v = rc.curve.at(s);
    expect_vec(v.v0, Vec3d{std::cos(s), std::sin(s), 0.0}, 1e-10);
    expect_vec(v.v1, Vec3d{0, 0, 0}, 1e-10);
  }
}

TEST(IntegrateFrenet, ScaledKappa0) {
  InvariantPrescription p = flat({-0.5, 0.5});
  p.kappa0 = ScalarFunction::constant(2.0);
  const ReconstructedCurve rc = integrate_frenet(p, identity_frame(), 1e-2);
  EXPECT_FALSE(rc.curve.is_arclength());
  for (double u : {-0.5, 0.1, 0.45}) expect_vec(rc.curve.director(u), Vec3d{std::cos(2 * u), std::sin(2 * u), 0.0}, 1e-8);
}

TEST(IntegrateFrenet, HelicoidFromConstantInvariants) {
  InvariantPrescription p = flat({-2.0, 2.0});
  p.kappa1 = ScalarFunction::constant(0.5);
  const RuledCurve c = integrate_frenet(p, identity_frame(), 1e-2).curve;
  for (double s : {-1.5, 0.0, 1.2}) {
    const FrenetPoint f = frenet_at(c, s);
    EXPECT_NEAR(f.invariants.kappa1, 0.5, 1e-9);
    EXPECT_NEAR(f.invariants.tau0, 0.0, 1e-9);
    EXPECT_NEAR(f.invariants.tau1, 0.0, 1e-9);
  }
}

TEST(IntegrateFrenet, RoundTripInvariants) {
  const RuledCurve original = arclength_reparam(helix_tangent_developable(1.0, 1.0, {-1.0, 1.0}));
  const ReconstructedCurve rc = integrate_frenet(measured_prescription(original), identity_frame(), 1e-3);
  double worst = 0.0;
  for (double s : sample_grid(original.domain(), 41)) {
    const InvariantValues a = frenet_at(original, s).invariants, b = frenet_at(rc.curve, s).invariants;
    worst = std::fmax(worst, std::fabs(a.kappa1 - b.kappa1));
    worst = std::fmax(worst, std::fabs(a.tau0 - b.tau0));
    worst = std::fmax(worst, std::fabs(a.tau1 - b.tau1));
  }
  EXPECT_LE(worst, 1e-6);
  EXPECT_LE(rc.max_defect, 1e-10);
}

TEST(IntegrateFrenet, DifferentInitialFramesAreCongruent) {
  InvariantPrescription p = InvariantPrescription::from_jets({0.2, 0.5, -0.3}, {0.4, 0.1}, {1.0, -0.2}, {-0.5, 0.5});
  const DualQuaternion g = DualQuaternion::from_rotation_translation(Quaternion::rotation(normalized(Vec3d{1, 2, 3}), 0.9), {1, -1, 2});
  const DualFrame id = identity_frame();
  const DualFrame moved{id.v.transformed(g), id.n.transformed(g), id.t.transformed(g)};
  const RuledCurve a = integrate_frenet(p, id, 1e-2).curve;
  const RuledCurve b = integrate_frenet(p, moved, 1e-2).curve;
  for (double s : sample_grid(p.domain, 11)) {
    const UnitDualVector la = a.line(s).transformed(g), lb = b.line(s);
    expect_vec(la.direction(), lb.direction(), 1e-8);
    expect_vec(la.moment(), lb.moment(), 1e-8);
  }
}

TEST(IntegrateFrenet, RejectsBadInput) {
  DualFrame bad = identity_frame();
  bad.n = UnitDualVector(DualVec{{1, 0, 0}, {0, 0, 0}});
  EXPECT_EQ(code_of([&] { integrate_frenet(flat({-1, 1}), bad); }), ErrorCode::InvalidInitialFrame);
  InvariantPrescription p = flat({-1, 1});
  p.kappa0 = ScalarFunction::polynomial({0.1, 1.0});
  EXPECT_EQ(code_of([&] { integrate_frenet(p, identity_frame(), 1e-2); }), ErrorCode::NonPositiveKappa0);
}

TEST(TruncatedPolynomial, JetsAreRealized) {
  const std::vector<double> k1{0.0, 1.5, -2.0, 0.5}, t0{0.7, -0.4, 0.2}, t1{1.2, 0.3, -1.0, 2.0};
  const InvariantJet j = invariant_jet(truncated_polynomial_surface(k1, t0, t1), 0.0, 3);
  for (size_t k = 0; k < 4; ++k) {
    EXPECT_NEAR(j.kappa1[k], k1[k], 1e-10);
    EXPECT_NEAR(j.tau0[k], k < t0.size() ? t0[k] : 0.0, 1e-10);
    EXPECT_NEAR(j.tau1[k], t1[k], 1e-10);
  }
}

TEST(TruncatedPolynomial, ClassifiesAsPrescribed) {
  EXPECT_EQ(classify_at(truncated_polynomial_surface({0.0, 1.0}, {0.0}, {0.0}), 0.0).label, Label::S0);
  EXPECT_EQ(classify_at(truncated_polynomial_surface({0.0, 0.0, 1.0}, {0.0}, {1.0}), 0.0).label, Label::S1Plus);
}

TEST(TangentDevelopableOfType, NormalFormCoefficients) {
  // (1,1,1): y = s^2 + t s, z = 4 s^3 + t 3 s^2
  const RuledCurve c = tangent_developable_of_type(1, 1, 1);
  for (double s : {-0.4, 0.1, 0.3}) {
    EXPECT_TRUE(point_on_line(Vec3d{0, s * s, 4 * s * s * s}, c.line(s)));
    expect_vec(c.director(s), normalized(Vec3d{1, s, 3 * s * s}), 1e-14);
  }
}

TEST(TangentDevelopableOfType, StrictionTypeMatches) {
  const RuledCurve c = arclength_reparam(tangent_developable_of_type(2, 1, 1, Poly{}, Poly{}, {-0.3, 0.3}));
  EXPECT_TRUE(is_developable(c, 1e-8));
  const CurveType t = topological_type(invariant_jet(c, 0.0, 5));
  EXPECT_EQ(t.m, 2);
  EXPECT_EQ(t.r, 1);
  EXPECT_EQ(classify_developable(invariant_jet(c, 0.0, 5)).label, Label::Sw);
}

TEST(TangentDevelopableOfType, GeneralFunctionsAgreeWithPolynomials) {
  const RuledCurve a = tangent_developable_of_type(1, 1, 2, Poly{0.5, -1.0}, Poly{0.25});
  const RuledCurve b = tangent_developable_of_type(
      1, 1, 2, [](double s) { return 0.5 - s; }, [](double) { return 0.25; });
  for (double s : {-0.3, 0.0, 0.2}) {
    expect_vec(a.director(s), b.director(s), 1e-10);
    expect_vec(a.base(s), b.base(s), 1e-10);
  }
}

TEST(TangentDevelopableOfType, RejectsZeroExponents) {
  EXPECT_EQ(code_of([] { tangent_developable_of_type(1, 1, 0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { tangent_developable_of_type(0, 1, 1); }), ErrorCode::InvalidArgument);
}

TEST(Versal, S1Family) {
  const DeformationFamily fam = versal_family_S1(InvariantPrescription::from_jets({0, 0, 1}, {0}, {1}));
  EXPECT_EQ(classify_at(fam.surface(0.0), 0.0).label, Label::S1Plus);
  const double sgn = fam.two_point_sign();
  const RuledCurve two = fam.surface(sgn * 1e-3);
  const SingularLocus l = singular_locus(two);
  ASSERT_EQ(l.points.size(), 2u);
  for (const auto& p : l.points) EXPECT_EQ(classify_at(two, p.s).label, Label::S0);
  EXPECT_TRUE(singular_locus(fam.surface(-sgn * 1e-3)).points.empty());
}

TEST(Versal, OffStratumRejected) {
  EXPECT_EQ(code_of([] { versal_family_S1(InvariantPrescription::from_jets({0, 1}, {0}, {1})); }), ErrorCode::NotOnStratum);
  EXPECT_EQ(code_of([] { versal_family_S1(InvariantPrescription::from_jets({0, 0, 2}, {1}, {1})); }), ErrorCode::NotOnStratum);
  EXPECT_EQ(code_of([] { versal_family_S1(InvariantPrescription::from_jets({0, 0, 1}, {1}, {0})); }), ErrorCode::NotOnStratum);
}

TEST(Gallery, KnownPrescriptions) {
  const GalleryEntry s0 = gallery(Label::S0);
  ASSERT_GE(s0.kappa1.size(), 2u);
  EXPECT_EQ(s0.kappa1[0], 0.0);
  EXPECT_NE(s0.kappa1[1], 0.0);
  const GalleryEntry ce = gallery(Label::CE);
  EXPECT_TRUE(is_developable(ce.surface));
  EXPECT_EQ(ce.tau0[0], 1.0);
  EXPECT_EQ(ce.tau1[0], 1.0);
  const GalleryEntry h2 = gallery(Label::H2);
  EXPECT_NE(moduli_coefficients(invariant_jet(h2.surface, 0.0, kClassifyOrder)).h2, 0.0);
}

TEST(Gallery, EveryDecidableRow) {
  for (Label l : kAllLabels) {
    if (l == Label::Unresolved || l == Label::Immersion || l == Label::B3Candidate || l == Label::H3Candidate ||
        l == Label::P3Candidate)
      continue;
    const GalleryEntry g = gallery(l);
    EXPECT_EQ(g.label, l);
    EXPECT_EQ(classify_at(g.surface, 0.0).label, l) << to_string(l);
  }
}

TEST(Gallery, CandidatesUnsupported) {
  EXPECT_EQ(code_of([] { gallery(Label::B3Candidate); }), ErrorCode::UnsupportedLabel);
  EXPECT_EQ(code_of([] { gallery(Label::Unresolved); }), ErrorCode::UnsupportedLabel);
}

TEST(Alignment, RecoversRigidMotion) {
  std::vector<Vec3d> a;
  for (int i = 0; i < 20; ++i) a.push_back({oracle::uniform(-1, 1), oracle::uniform(-1, 1), oracle::uniform(-1, 1)});
  const DualQuaternion g = DualQuaternion::from_rotation_translation(Quaternion::rotation(normalized(Vec3d{0, 1, 1}), 2.0), {3, 0, -1});
  std::vector<Vec3d> b;
  for (const auto& x : a) b.push_back(dq_act(g, x));
  const Alignment al = align_points(a, b);
  EXPECT_LE(al.max_residual, 1e-12);
  EXPECT_THROW(align_points(a, std::vector<Vec3d>(a.begin(), a.begin() + 5)), Error);
}
