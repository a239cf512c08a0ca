// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "spp/instances.hpp"
#include "spp/projection.hpp"

namespace {

using namespace spp;
using spp::testing::orthant;
using spp::testing::wedge;

Vector gaussian(std::size_t n, Rng& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = g(rng);
  return v;
}

MaxAffine abs_value() { return MaxAffine({{Vector{1.0}, 0.0}, {Vector{-1.0}, 0.0}}); }

TEST(ProjectHalfspaceTest, Examples) {
  EXPECT_EQ(project_halfspace(Vector{0, 0}, Vector{0, 1}, -1), (Vector{0, -1}));
  EXPECT_EQ(project_halfspace(Vector{1, -5}, Vector{0, 1}, -1), (Vector{1, -5}));
  EXPECT_EQ(project_halfspace(Vector{3, 4}, Vector{1, 0}, 0), (Vector{0, 4}));
  EXPECT_THROW(project_halfspace(Vector{1, 1}, Vector{0, 0}, 0), Error);
}

TEST(ProjectPolyhedronTest, Examples) {
  const auto r = project_polyhedron(wedge(), Vector{-1, -10.5});
  EXPECT_LE(max_abs_diff(r.proj, Vector{0, 0}), 1e-12);
  EXPECT_LE(r.residual_normal, 1e-9);
  EXPECT_EQ(r.active.indices, (std::vector<std::size_t>{0, 1}));

  const auto q = project_polyhedron(orthant(3), Vector{1, -8, -7});
  EXPECT_LE(max_abs_diff(q.proj, Vector{1, 0, 0}), 1e-15);
  EXPECT_FALSE(q.used_fallback);

  const auto inside = project_polyhedron(wedge(), Vector{0.5, 3});
  EXPECT_EQ(inside.proj, (Vector{0.5, 3}));
  EXPECT_EQ(inside.residual_normal, 0.0);
}

TEST(ProjectPolyhedronTest, EmptyPolyhedronThrows) {
  const Polyhedron empty(Matrix{{1.0, 0.0}, {-1.0, 0.0}}, Vector{-1.0, -1.0});
  EXPECT_THROW(project_polyhedron(empty, Vector{0, 0}), Error);
  ProjectionOptions no_fallback;
  no_fallback.allow_fallback = false;
  EXPECT_THROW(project_polyhedron(empty, Vector{0, 0}, no_fallback), Error);
}

TEST(ProjectPolyhedronTest, MatchesBruteForce) {
  Rng rng(21);
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  int fallbacks = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = dim(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(n + 1, 8)(rng);
    const Polyhedron p = random_bounded_polyhedron(n, m, rng);
    const Vector z = gaussian(n, rng, 3.0);
    const auto fast = project_polyhedron(p, z);
    const auto slow = project_brute(p, z);
    EXPECT_LE(max_abs_diff(fast.proj, slow.proj), 1e-7) << "instance " << i;
    EXPECT_LE(fast.residual_normal, 1e-9);
    fallbacks += fast.used_fallback;
  }
  EXPECT_EQ(fallbacks, 0);
}

TEST(ProjectPolyhedronTest, DegenerateVertexWithRedundantRows) {
  // Four rows through the apex of a pyramid plus duplicated rows.
  const Polyhedron p(Matrix{{1, 0, -1}, {-1, 0, -1}, {0, 1, -1}, {0, -1, -1}, {1, 0, -1}, {2, 0, -2}},
                     Vector{0, 0, 0, 0, 0, 0});
  const Vector z{0.1, -0.2, -5};
  const auto r = project_polyhedron(p, z);
  EXPECT_LE(max_abs_diff(r.proj, Vector{0, 0, 0}), 1e-12);
  EXPECT_LE(max_abs_diff(r.proj, project_brute(p, z).proj), 1e-12);
}

TEST(ProjectPolyhedronTest, Nonexpansive) {
  Rng rng(22);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + i % 3;
    const Polyhedron p = random_bounded_polyhedron(n, n + 3, rng);
    const Vector z1 = gaussian(n, rng, 3.0);
    const Vector z2 = gaussian(n, rng, 3.0);
    const double d = distance(project_polyhedron(p, z1).proj, project_polyhedron(p, z2).proj);
    EXPECT_LE(d, distance(z1, z2) + 1e-9);
  }
}

TEST(ProjectPolyhedronTest, VariationalInequality) {
  Rng rng(23);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 2 + i % 3;
    const Polyhedron p = random_bounded_polyhedron(n, n + 3, rng);
    const Vector z = gaussian(n, rng, 3.0);
    const Vector x = project_polyhedron(p, z).proj;
    for (int k = 0; k < 100; ++k) {
      const Vector y = random_feasible_point(p, rng);
      EXPECT_LE((z - x).dot(y - x), 1e-8);
    }
  }
}

TEST(ProjectPolyhedronTest, TranslationAlongLineality) {
  // Rows only involve the first two coordinates, so e3 spans the lineality.
  Rng rng(24);
  for (int i = 0; i < 50; ++i) {
    const Polyhedron base = random_bounded_polyhedron(2, 5, rng);
    Matrix a(base.rows(), 3);
    for (std::size_t r = 0; r < base.rows(); ++r) {
      a(r, 0) = base.a()(r, 0);
      a(r, 1) = base.a()(r, 1);
    }
    const Polyhedron p(a, base.b());
    const Vector z = gaussian(3, rng, 3.0);
    const Vector shift{0.0, 0.0, 4.5};
    const Vector x1 = project_polyhedron(p, z).proj;
    const Vector x2 = project_polyhedron(p, z + shift).proj;
    EXPECT_LE(max_abs_diff(x2, x1 + shift), 1e-9);
  }
}

TEST(LiftEpigraphTest, AbsoluteValueOverInterval) {
  const Polyhedron interval(Matrix{{1.0}, {-1.0}}, Vector{1.0, 1.0});
  const LiftedEpigraph lift = lift_epigraph(interval, abs_value());
  ASSERT_EQ(lift.poly.rows(), 4u);
  EXPECT_EQ(lift.base_rows, 2u);
  EXPECT_EQ(lift.pieces, 2u);
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_EQ(lift.poly.normal(0), (Vector{1, 0}));
  EXPECT_EQ(lift.poly.normal(1), (Vector{-1, 0}));
  EXPECT_LE(max_abs_diff(lift.poly.normal(2), Vector{h, -h}), 1e-15);
  EXPECT_LE(max_abs_diff(lift.poly.normal(3), Vector{-h, -h}), 1e-15);
}

TEST(LiftEpigraphTest, LinearFunctionAddsOneRow) {
  const MaxAffine f({{Vector{2.0, -1.0}, 0.5}});
  EXPECT_EQ(lift_epigraph(box(2, 0, 1), f).poly.rows(), 5u);
}

TEST(LiftEpigraphTest, MembershipMatchesDirectEvaluation) {
  Rng rng(25);
  const Polyhedron p = box(2, -1, 1);
  const MaxAffine f = random_max_affine(2, 4, rng);
  const LiftedEpigraph lift = lift_epigraph(p, f);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::uniform_real_distribution<double> s(-3.0, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const Vector x{u(rng), u(rng)};
    const double t = s(rng);
    const bool direct = p.max_violation(x) <= 0.0 && f.value(x) <= t;
    const bool lifted = lift.poly.max_violation(x.extended(t)) <= 1e-12;
    // Points within rounding of the boundary are ambiguous; none are drawn here.
    EXPECT_EQ(direct, lifted);
  }
}

TEST(LiftEpigraphTest, EmptyPieceListRejected) {
  EXPECT_THROW(MaxAffine({}), Error);
}

TEST(ProjectEpigraphTest, Examples) {
  const Polyhedron interval(Matrix{{1.0}, {-1.0}}, Vector{1.0, 1.0});
  const auto apex = project_epigraph(interval, abs_value(), Vector{0.0, -1.0});
  EXPECT_LE(max_abs_diff(apex.proj, Vector{0, 0}), 1e-15);

  const Vector pt{2.0, -1.0};
  const auto r = project_epigraph(interval, abs_value(), pt);
  const auto oracle = project_brute(lift_epigraph(interval, abs_value()).poly, pt);
  EXPECT_LE(max_abs_diff(r.proj, oracle.proj), 1e-12);
  // Nearest point of the cone t >= |x| is (0.5, 0.5), and it satisfies x <= 1.
  EXPECT_LE(max_abs_diff(r.proj, Vector{0.5, 0.5}), 1e-12);
}

TEST(ProjectEpigraphTest, LandsOnTheGraphFromBelow) {
  Rng rng(26);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + i % 3;
    const Polyhedron p = random_bounded_polyhedron(n, n + 2, rng);
    const MaxAffine f = random_max_affine(n, 1 + i % 4, rng);
    const auto lifted_min = lp_solve_enumeration(lift_epigraph(p, f).poly, Vector::unit(n + 1, n));
    ASSERT_EQ(lifted_min.status, LpStatus::optimal);
    const Vector v = gaussian(n, rng);
    const double t = *lifted_min.value - 1.0 - std::abs(gaussian(1, rng)[0]);
    const auto r = project_epigraph(p, f, v.extended(t));
    const Vector w = r.proj.head(n);
    EXPECT_LE(std::abs(r.proj[n] - f.value(w)), 1e-8);
  }
}

}  // namespace
