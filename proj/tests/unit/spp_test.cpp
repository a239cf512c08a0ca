// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "spp/instances.hpp"
#include "spp/sharpness.hpp"
#include "spp/single_projection.hpp"

namespace {

using namespace spp;
using spp::testing::dir;
using spp::testing::orthant;
using spp::testing::sqrt2;
using spp::testing::wedge;

Vector gaussian(std::size_t n, Rng& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = g(rng);
  return v;
}

double oracle_value(const Polyhedron& p, const UnitDirection& x_star) {
  return *lp_solve_enumeration(p, x_star.vec()).value;
}

struct RandomLp {
  Polyhedron p;
  UnitDirection x_star;
};

RandomLp random_lp(Rng& rng) {
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
  const std::size_t m = std::uniform_int_distribution<std::size_t>(n + 1, 8)(rng);
  return {random_bounded_polyhedron(n, m, rng), random_direction(n, rng)};
}

MaxAffine abs_value() { return MaxAffine({{Vector{1.0}, 0.0}, {Vector{-1.0}, 0.0}}); }

const Polyhedron& interval() {
  static const Polyhedron p(Matrix{{1.0}, {-1.0}}, Vector{1.0, 1.0});
  return p;
}

TEST(Theta, Examples) {
  EXPECT_NEAR(theta(wedge(), dir({0, 1}), Vector{-1, -0.5}), 0.5, 1e-12);
  EXPECT_NEAR(theta(wedge(), dir({0, 1}), Vector{0, 0}), 0.0, 1e-12);
  EXPECT_NEAR(theta(orthant(3), dir({0, 1, 1}), Vector{1, -1, 0}), 1 / sqrt2(), 1e-12);
  EXPECT_THROW(theta(wedge(), dir({0, -1}), Vector{0, 0}), Error);
}

TEST(CheckConditions, Examples) {
  const double a = sqrt2() / 2;
  const auto c = check_conditions(wedge(), dir({0, 1}), Vector{-1, -0.5}, a);
  EXPECT_TRUE(c.cond1);
  EXPECT_FALSE(c.cond2);
  EXPECT_NEAR(c.d_va, 3 * sqrt2() / 4, 1e-10);

  const auto s = check_conditions(wedge(), dir({0, 1}), Vector{-1, -10.5}, a);
  EXPECT_TRUE(s.cond1);
  EXPECT_TRUE(s.cond2);
  EXPECT_NEAR(s.theta, 10.5, 1e-12);

  EXPECT_FALSE(check_conditions(wedge(), dir({0, 1}), Vector{0, 2}, a).cond1);
  EXPECT_THROW(check_conditions(wedge(), dir({0, 1}), Vector{0, 2}, 0.0), Error);
}

TEST(MuThreshold, Examples) {
  const double a = sqrt2() / 2;
  const double d = 3 * sqrt2() / 4;
  EXPECT_NEAR(mu_threshold_lemma(0.5, d, a), 21 * sqrt2() / 4 - 4, 1e-12);
  EXPECT_NEAR(mu_threshold_lemma(7.0 / 8.0 * d, d, a), 0.0, 1e-12);
  EXPECT_LT(mu_threshold_lemma(5.0, d, a), 0.0);
  EXPECT_THROW(mu_threshold_lemma(0.0, d, a), Error);

  EXPECT_NEAR(mu_threshold_prop(d, a), 21 * sqrt2() / 4, 1e-10);
  EXPECT_NEAR(mu_threshold_prop(1.0, 1 / sqrt2()), 7.0, 1e-10);
  EXPECT_NEAR(mu_threshold_prop(1.0, 1.0), 3.0, 1e-15);
}

TEST(SolveLpSpp, WedgeExample) {
  SppOptions opts;
  opts.mu = 10.0;
  const auto r = solve_lp_spp(wedge(), dir({0, 1}), Vector{-1, -0.5}, opts);
  EXPECT_EQ(r.u, (Vector{-1, -10.5}));
  EXPECT_LE(max_abs_diff(r.solution, Vector{0, 0}), 1e-8);
  EXPECT_NEAR(r.value, 0.0, 1e-8);
  EXPECT_NEAR(r.alpha_used, sqrt2() / 2, 1e-12);
  EXPECT_TRUE(r.alpha_auto);
  EXPECT_FALSE(r.mu_auto);
  EXPECT_NEAR(r.mu_threshold, 21 * sqrt2() / 4, 1e-10);
  EXPECT_TRUE(r.certified);
  EXPECT_LE(r.kkt_certificate, 1e-9);
  ASSERT_TRUE(r.oracle_match.has_value());
  EXPECT_TRUE(*r.oracle_match);
  ASSERT_TRUE(r.conditions_u.has_value());
  EXPECT_TRUE(r.conditions_u->cond1 && r.conditions_u->cond2);
}

TEST(SolveLpSpp, OrthantExample) {
  SppOptions opts;
  opts.mu = 7 * sqrt2();
  const auto r = solve_lp_spp(orthant(3), dir({0, 1, 1}), Vector{1, -1, 0}, opts);
  EXPECT_LE(max_abs_diff(r.u, Vector{1, -8, -7}), 1e-14);
  EXPECT_LE(max_abs_diff(r.solution, Vector{1, 0, 0}), 1e-8);
  EXPECT_NEAR(r.value, 0.0, 1e-8);
  EXPECT_NEAR(r.alpha_used, 1 / sqrt2(), 1e-12);
  EXPECT_NEAR(r.mu_threshold, 7.0, 1e-10);
  EXPECT_TRUE(r.certified);
}

TEST(SolveLpSpp, AutoMuExceedsThreshold) {
  const auto r = solve_lp_spp(wedge(), dir({0, 1}), Vector{-1, -0.5});
  EXPECT_TRUE(r.mu_auto);
  EXPECT_NEAR(r.mu_used, r.mu_threshold * (1 + 1e-6), 1e-12);
  EXPECT_EQ(r.u, r.v - r.mu_used * r.x_star.vec());
  EXPECT_TRUE(r.certified);
}

TEST(SolveLpSpp, Errors) {
  EXPECT_THROW(solve_lp_spp(wedge(), dir({0, -1}), Vector{0, 0}), Error);
  EXPECT_THROW(solve_lp_spp(wedge(), dir({0, 1}), Vector{0, 3}), Error);
  SppOptions opts;
  opts.alpha = 1.5;
  EXPECT_THROW(solve_lp_spp(wedge(), dir({0, 1}), Vector{-1, -0.5}, opts), Error);
}

TEST(SolveLpSpp, UncertifiedWhenShiftTooSmall) {
  // mu = 0 leaves u = v, and (-1,-1/2) projects onto the ray y = -x.
  SppOptions opts;
  opts.mu = 0.0;
  const auto r = solve_lp_spp(wedge(), dir({0, 1}), Vector{-1, -0.5}, opts);
  EXPECT_FALSE(r.certified);
  EXPECT_GT(r.kkt_certificate, 0.1);
  EXPECT_FALSE(*r.oracle_match);
}

TEST(ConstructInfeasibleV, Examples) {
  EXPECT_LE(max_abs_diff(construct_infeasible_v(wedge(), dir({0, 1}), VMode::oracle),
                         Vector{0, -1}),
            1e-12);
  EXPECT_NEAR(theta(wedge(), dir({0, 1}), Vector{0, -1}), 1.0, 1e-12);
  const Vector v = construct_infeasible_v(wedge(), dir({0, 1}), VMode::doubling);
  EXPECT_GT(theta(wedge(), dir({0, 1}), v), -1e-12);
}

TEST(Doubling, WedgeFromFeasibleStart) {
  const auto r = solve_lp_spp_doubling(wedge(), dir({0, 1}), {}, Vector{0, 1});
  EXPECT_TRUE(r.certified);
  EXPECT_LE(r.doublings, 2);
  EXPECT_LE(max_abs_diff(r.solution, Vector{0, 0}), 1e-8);
}

TEST(Doubling, ThetaGrowsByTheStep) {
  const auto x_star = dir({0, 1});
  const Vector x_hat{0.3, 2.0};
  for (int k = 0; k < 6; ++k) {
    const double tau = std::ldexp(1.0, k);
    EXPECT_NEAR(theta(wedge(), x_star, x_hat - tau * x_star.vec()),
                theta(wedge(), x_star, x_hat) + tau, 1e-12);
  }
}

TEST(Doubling, MatchesOracleOnRandomLps) {
  Rng rng(41);
  for (int i = 0; i < 200; ++i) {
    const auto [p, x_star] = random_lp(rng);
    const auto r = solve_lp_spp_doubling(p, x_star);
    ASSERT_TRUE(r.certified) << "instance " << i;
    EXPECT_NEAR(r.value, oracle_value(p, x_star), 1e-7) << "instance " << i;
    EXPECT_TRUE(r.oracle_match.value_or(false));
  }
}

TEST(Doubling, ExhaustedCapReportsUncertified) {
  SppOptions opts;
  opts.max_doublings = 0;
  opts.alpha = 1.0;  // too optimistic for the wedge
  const auto r = solve_lp_spp_doubling(wedge(), dir({0, 1}), opts, Vector{-3, 5});
  EXPECT_FALSE(r.certified);
  EXPECT_EQ(r.doublings, 0);
}

// Sharpness-backed soundness: both conditions with alpha_0 imply the plain
// projection of v is optimal.
TEST(Properties, ConditionsImplyOptimalProjection) {
  Rng rng(42);
  int hits = 0;
  for (int i = 0; i < 150; ++i) {
    const auto [p, x_star] = random_lp(rng);
    const double a0 = sharpness_lower_bound(p, -x_star).alpha_lower;
    const Vector x_opt = *lp_solve_enumeration(p, x_star.vec()).x_opt;
    const std::size_t n = p.dim();
    const Vector v = x_opt - (0.5 + 5.0 * std::abs(gaussian(1, rng)[0])) * x_star.vec() +
                     gaussian(n, rng, 0.5);
    const auto c = check_conditions(p, x_star, v, a0);
    if (!(c.cond1 && c.cond2)) continue;
    ++hits;
    const Vector proj = project_polyhedron(p, v).proj;
    EXPECT_NEAR(x_star.vec().dot(proj), oracle_value(p, x_star), 1e-7) << "instance " << i;
  }
  EXPECT_GT(hits, 30);
}

TEST(Properties, ShiftThresholdRepairsConditionTwo) {
  Rng rng(43);
  int cases = 0;
  for (int i = 0; i < 300 && cases < 100; ++i) {
    const auto [p, x_star] = random_lp(rng);
    const double a0 = sharpness_lower_bound(p, -x_star).alpha_lower;
    const Vector x_opt = *lp_solve_enumeration(p, x_star.vec()).x_opt;
    const Vector v = x_opt - 0.05 * x_star.vec() + gaussian(p.dim(), rng, 2.0);
    const auto c = check_conditions(p, x_star, v, a0);
    if (!c.cond1 || c.cond2) continue;
    ++cases;
    const double mu0 = mu_threshold_lemma(c.theta, c.d_va, a0);
    EXPECT_GE(mu_threshold_prop(c.d_va, a0), mu0);
    for (double mu : {1.01 * mu0, mu0 + 1, 10 * mu0 + 10}) {
      const auto cu = check_conditions(p, x_star, v - mu * x_star.vec(), a0);
      EXPECT_TRUE(cu.cond1 && cu.cond2) << "instance " << i << " mu " << mu;
    }
  }
  EXPECT_GE(cases, 50);
}

TEST(Properties, ReflectionInvariance) {
  Rng rng(44);
  for (int i = 0; i < 50; ++i) {
    const auto [p, x_star] = random_lp(rng);
    Matrix neg(p.rows(), p.dim());
    for (std::size_t r = 0; r < p.rows(); ++r)
      for (std::size_t c = 0; c < p.dim(); ++c) neg(r, c) = -p.a()(r, c);
    const Polyhedron q(neg, p.b());
    const auto a = solve_lp_spp_doubling(p, x_star);
    const auto b = solve_lp_spp_doubling(q, -x_star);
    ASSERT_TRUE(a.certified && b.certified);
    EXPECT_NEAR(a.value, b.value, 1e-8);
    // -b.solution lies in P and attains the same value.
    EXPECT_TRUE(p.contains(-b.solution, 1e-8));
    EXPECT_NEAR(x_star.vec().dot(-b.solution), a.value, 1e-8);
  }
}

TEST(Properties, CertificateAgreesWithOracle) {
  Rng rng(45);
  for (int i = 0; i < 50; ++i) {
    const auto [p, x_star] = random_lp(rng);
    const double best = oracle_value(p, x_star);
    std::vector<Vector> points = enumerate_vertices(p);
    for (int k = 0; k < 10; ++k) points.push_back(project_polyhedron(p, gaussian(p.dim(), rng, 3)).proj);
    for (const Vector& x : points) {
      const bool kkt = kkt_certificate(p, x_star, x) <= 1e-9;
      const bool optimal = x_star.vec().dot(x) <= best + 1e-7;
      EXPECT_EQ(kkt, optimal) << "instance " << i;
    }
  }
}

TEST(SolveCpSpp, AbsoluteValue) {
  const auto r = solve_cp_spp(interval(), abs_value(), std::nullopt, std::nullopt);
  EXPECT_NEAR(r.w[0], 0.0, 1e-8);
  EXPECT_NEAR(r.fw, 0.0, 1e-8);
  EXPECT_LE(r.graph_gap, 1e-8);
  EXPECT_TRUE(r.spp.certified);
  EXPECT_EQ(r.lifted.poly.rows(), 4u);
}

TEST(SolveCpSpp, ExplicitPoint) {
  SppOptions opts;
  const auto r = solve_cp_spp(interval(), abs_value(), Vector{0.5}, -3.0, opts);
  EXPECT_EQ(r.point, (Vector{0.5, -3.0}));
  EXPECT_NEAR(r.fw, 0.0, 1e-8);
  EXPECT_LT(r.point[1], r.fw);
}

TEST(SolveCpSpp, WedgeBoxInstance) {
  const Polyhedron p = wedge().with_rows(box(2, -2, 2).a(), box(2, -2, 2).b());
  const MaxAffine f({{Vector{1, 1}, 0.0}, {Vector{-1, 0}, 0.0}});
  const auto r = solve_cp_spp(p, f, std::nullopt, std::nullopt);
  const auto lifted = lift_epigraph(p, f);
  const double want = *lp_solve_enumeration(lifted.poly, Vector::unit(3, 2)).value;
  EXPECT_NEAR(r.fw, want, 1e-7);
  EXPECT_NEAR(r.fw, f.value(r.w), 1e-8);
  EXPECT_TRUE(p.contains(r.w, 1e-8));
}

TEST(SolveCpSpp, RandomBoxInstances) {
  Rng rng(46);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + i % 3;
    const Polyhedron p = box(n, -1 - i % 2, 1 + i % 3);
    const MaxAffine f = random_max_affine(n, 1 + i % 4, rng);
    const auto r = solve_cp_spp(p, f, std::nullopt, std::nullopt);
    const double want =
        *lp_solve_enumeration(lift_epigraph(p, f).poly, Vector::unit(n + 1, n)).value;
    ASSERT_TRUE(r.spp.certified) << "instance " << i;
    EXPECT_NEAR(r.fw, want, 1e-7) << "instance " << i;
    EXPECT_LE(std::abs(r.fw - f.value(r.w)), 1e-8);
  }
}

TEST(SolutionSetCertificate, ShiftedAbsoluteValue) {
  // f = |x| - 1 on [1, 2]: min 0 at x = 1; v = 0.5 has f(v) = -0.5.
  const Polyhedron p(Matrix{{1.0}, {-1.0}}, Vector{2.0, -1.0});
  const MaxAffine f({{Vector{1.0}, -1.0}, {Vector{-1.0}, -1.0}});
  const auto c = verify_solution_set_certificate(p, f, Vector{0.5}, 1.0);
  EXPECT_TRUE(c.cond_i);
  EXPECT_TRUE(c.cond_a);
  EXPECT_TRUE(c.cond_b);
  EXPECT_NEAR(c.min_value, 0.0, 1e-12);
  EXPECT_NEAR(c.d_va, 0.5, 1e-12);
  EXPECT_NEAR(project_polyhedron(p, Vector{0.5}).proj[0], 1.0, 1e-12);

  EXPECT_FALSE(verify_solution_set_certificate(p, f, Vector{1.5}, 1.0).cond_a);
}

TEST(SolutionSetCertificate, AllTrueImpliesProjectionSolves) {
  Rng rng(47);
  int accepted = 0;
  for (int i = 0; i < 300 && accepted < 100; ++i) {
    const std::size_t n = 1 + i % 2;
    const Polyhedron p = random_bounded_polyhedron(n, n + 2, rng);
    const MaxAffine f = random_max_affine(n, 1 + i % 3, rng);
    const Vector v = gaussian(n, rng, 3.0);
    const auto c = verify_solution_set_certificate(p, f, v, 0.5);
    if (!c.all()) continue;
    ++accepted;
    const Vector x = project_polyhedron(p, v).proj;
    EXPECT_NEAR(f.value(x), c.min_value, 1e-7) << "instance " << i;
  }
  EXPECT_GT(accepted, 10);
}

}  // namespace
