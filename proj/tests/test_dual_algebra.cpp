#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ruledkit/dual.hpp"
#include "ruledkit/taylor.hpp"

using namespace ruledkit;

namespace {

const Vec3d e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1}, zero{0, 0, 0};

void expect_vec(const Vec3d& got, const Vec3d& want, double tol = 1e-14) {
  EXPECT_NEAR(got.x, want.x, tol);
  EXPECT_NEAR(got.y, want.y, tol);
  EXPECT_NEAR(got.z, want.z, tol);
}

}  // namespace

TEST(DualNumber, Multiplication) {
  EXPECT_EQ(Dual(1, 0) * Dual(7, -3), Dual(7, -3));
  EXPECT_EQ(Dual(0, 1) * Dual(0, 1), Dual(0, 0));
  EXPECT_EQ(Dual(2, 3) * Dual(4, 5), Dual(8, 22));
}

TEST(DualNumber, SquareRoot) {
  EXPECT_EQ(dual_sqrt(Dual(1, 0)), Dual(1, 0));
  EXPECT_EQ(dual_sqrt(Dual(4, 4)), Dual(2, 1));
  for (double t : {-3.0, 0.0, 0.25, 11.0}) EXPECT_EQ(dual_sqrt(Dual(1, 2 * t)), Dual(1, t));
}

TEST(DualNumber, SquareRootNeedsPositiveReal) {
  try {
    dual_sqrt(Dual(0, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveReal);
  }
  EXPECT_THROW(dual_sqrt(Dual(-1, 0)), Error);
}

TEST(DualNumber, Inverse) {
  const Dual a(2, 3);
  const Dual p = a * dual_inverse(a);
  EXPECT_DOUBLE_EQ(p.real, 1.0);
  EXPECT_NEAR(p.dual, 0.0, 1e-15);
  EXPECT_THROW(dual_inverse(Dual(0, 1)), Error);
}

TEST(DualVector, DotProduct) {
  EXPECT_EQ(dual_dot(DualVec{e1, zero}, DualVec{e1, zero}), Dual(1, 0));
  EXPECT_EQ(dual_dot(DualVec{e1, e2}, DualVec{e2, e1}), Dual(0, 2));
  const UnitDualVector L = line_from_point_dir({3, -1, 2}, normalized(Vec3d{1, 2, 2}));
  const Dual n = dual_dot(L.dual(), L.dual());
  EXPECT_NEAR(n.real, 1.0, 1e-15);
  EXPECT_NEAR(n.dual, 0.0, 1e-15);
}

TEST(DualVector, CrossProduct) {
  const DualVec c = dual_cross(DualVec{e1, zero}, DualVec{e2, zero});
  expect_vec(c.v0, e3);
  expect_vec(c.v1, zero);
  const DualVec v{{1, 2, 3}, {-1, 0.5, 2}};
  const DualVec self = dual_cross(v, v);
  expect_vec(self.v0, zero);
  expect_vec(self.v1, zero);
  const DualVec m = dual_cross(DualVec{e1, e3}, DualVec{e2, zero});
  expect_vec(m.v0, e3);
  expect_vec(m.v1, Vec3d{-1, 0, 0});
}

TEST(DualQuaternion, ActsAsRigidMotion) {
  expect_vec(dq_act(DualQuaternion::identity(), {1, 2, 3}), {1, 2, 3});
  const Vec3d t{0.5, -2, 4};
  const DualQuaternion shift{Quaternion{}, 0.5 * Quaternion::pure(t)};
  expect_vec(dq_act(shift, {1, 2, 3}), Vec3d{1.5, 0, 7});
  const DualQuaternion half_turn{Quaternion::rotation(e3, std::numbers::pi), Quaternion::zero()};
  expect_vec(dq_act(half_turn, e1), Vec3d{-1, 0, 0});
}

TEST(DualQuaternion, CompositionAndInverse) {
  const DualQuaternion a = DualQuaternion::from_rotation_translation(Quaternion::rotation(normalized(Vec3d{1, 1, 0}), 0.7), {1, 2, 3});
  const DualQuaternion b = DualQuaternion::from_rotation_translation(Quaternion::rotation(e2, -1.3), {0, -1, 0.5});
  const Vec3d x{0.3, -0.2, 1.1};
  expect_vec(dq_act(a * b, x), dq_act(a, dq_act(b, x)), 1e-13);
  expect_vec(dq_act(a.inverse(), dq_act(a, x)), x, 1e-13);
  EXPECT_TRUE(a.is_unit());
}

TEST(DualQuaternion, TransformsLines) {
  const UnitDualVector L = line_from_point_dir({1, 0, 2}, e2);
  const DualQuaternion q = DualQuaternion::from_rotation_translation(Quaternion::rotation(e1, 0.4), {2, 0, -1});
  const UnitDualVector M = L.transformed(q);
  EXPECT_TRUE(point_on_line(dq_act(q, Vec3d{1, 0, 2}), M));
  EXPECT_TRUE(point_on_line(dq_act(q, Vec3d{1, 5, 2}), M));
}

TEST(Lines, FromPointAndDirection) {
  const UnitDualVector a = line_from_point_dir(zero, e1);
  expect_vec(a.direction(), e1);
  expect_vec(a.moment(), zero);
  expect_vec(line_from_point_dir(e2, e1).moment(), Vec3d{0, 0, -1});
  expect_vec(line_from_point_dir(e1, e1).moment(), zero);
  expect_vec(line_from_point_dir({3, 4, 0}, e3).closest_point(), Vec3d{3, 4, 0});
}

TEST(Lines, RejectsBadDirections) {
  try {
    line_from_point_dir(e1, zero);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroDirection);
  }
  try {
    line_from_point_dir(e1, Vec3d{2, 0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotUnit);
  }
  EXPECT_THROW(UnitDualVector(DualVec{e1, e1}), Error);
}

TEST(Lines, Incidence) {
  const UnitDualVector x_axis = line_from_point_dir(zero, e1);
  EXPECT_TRUE(point_on_line(zero, x_axis));
  EXPECT_FALSE(point_on_line(e2, x_axis));
  for (double t : {-5.0, 0.1, 42.0}) EXPECT_TRUE(point_on_line({t, 0, 0}, x_axis));
}

TEST(Lines, MeetPerpendicular) {
  const UnitDualVector x_axis = line_from_point_dir(zero, e1);
  EXPECT_TRUE(lines_meet_perpendicular(x_axis, line_from_point_dir(zero, e2)));
  EXPECT_FALSE(lines_meet_perpendicular(x_axis, x_axis));
  EXPECT_FALSE(lines_meet_perpendicular(x_axis, line_from_point_dir(e3, e2)));
  EXPECT_TRUE(lines_meet_perpendicular(x_axis, line_from_point_dir({2, 0, 0}, e3)));
}

TEST(Taylor, ProductAndQuotient) {
  const Taylor x = Taylor::variable(0.0, 6);
  const Taylor f = Taylor(1.0) + x;
  const Taylor g = Taylor(1.0) / f;
  for (int k = 0; k <= 6; ++k) EXPECT_NEAR(g[k], (k % 2 ? -1.0 : 1.0), 1e-15);
  const Taylor h = f * g;
  EXPECT_NEAR(h[0], 1.0, 1e-15);
  for (int k = 1; k <= 6; ++k) EXPECT_NEAR(h[k], 0.0, 1e-15);
}

TEST(Taylor, CompositionReversionRecentre) {
  const Taylor d = Taylor::variable(0.0, 8);
  const Taylor g = d + 0.5 * d * d - 0.25 * d * d * d;
  const Taylor h = revert(g);
  const Taylor id = compose(g, h);
  EXPECT_NEAR(id[1], 1.0, 1e-14);
  for (int k = 2; k <= 8; ++k) EXPECT_NEAR(id[k], 0.0, 1e-13);
  // (1 + d)^2 re-expanded at d = 2 is 9 + 6 e + e^2
  const Taylor sq = Taylor(std::vector<double>{1, 2, 1});
  const Taylor moved = recentre(sq, 2.0);
  EXPECT_DOUBLE_EQ(moved[0], 9.0);
  EXPECT_DOUBLE_EQ(moved[1], 6.0);
  EXPECT_DOUBLE_EQ(moved[2], 1.0);
}

TEST(Taylor, DerivativeValues) {
  const Taylor x = Taylor::variable(0.0, 5);
  const Taylor c = x * x * x;
  const auto d = c.derivative_values(4);
  EXPECT_DOUBLE_EQ(d[3], 6.0);
  EXPECT_DOUBLE_EQ(d[4], 0.0);
  EXPECT_THROW(Taylor(std::vector<double>{}), Error);
}
