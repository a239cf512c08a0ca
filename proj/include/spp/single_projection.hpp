// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Solving min <x*, x> over a polyhedron with a single projection.
//
// If P is alpha-sharp with respect to -x* and v satisfies
//   (1) theta(v) := inf_P <x*, x - v> > 0, and
//   (2) (1 - alpha^2/4) d(v, P) < theta(v),
// then the projection of v onto P is a minimizer. Any v satisfying (1) can be
// pushed into (2) by shifting it to u = v - mu x* with mu large enough.
//
// Condition (1) needs the optimal value, so the production path does not check
// it. It walks v_k = x_hat - 2^k x* from a feasible x_hat and certifies each
// single projection by the KKT test d(-x*, N_P(solution)) <= cert_tol.

#include <cstddef>
#include <optional>

#include "spp/linalg.hpp"
#include "spp/max_affine.hpp"
#include "spp/polyhedron.hpp"
#include "spp/projection.hpp"

namespace spp {

struct Conditions {
  bool cond1 = false;
  bool cond2 = false;
  double theta = 0.0;
  double d_va = 0.0;
};

struct SppOptions {
  std::optional<double> mu;     // nullopt: auto
  std::optional<double> alpha;  // nullopt: sharpness lower bound w.r.t. -x*
  double cert_tol = 1e-9;
  ProjectionOptions projection{};
  OracleCaps caps{};
  // Cross-check the value against the enumeration LP when within caps.
  bool oracle_check = true;
  // Reject v failing condition (1); needs the enumeration LP.
  bool require_condition1 = true;
  int max_doublings = 60;
};

struct SppReport {
  UnitDirection x_star;
  Vector v;
  std::optional<double> theta_v;
  double d_va = 0.0;
  double alpha_used = 1.0;
  bool alpha_auto = false;
  double mu_threshold = 0.0;  // Prop-style threshold (4 - a^2)/a^2 * d(v,P)
  double mu_used = 0.0;
  bool mu_auto = false;
  Vector u;
  Vector solution;
  double value = 0.0;
  double kkt_certificate = 0.0;
  double projection_residual = 0.0;
  std::optional<Conditions> conditions;    // at v
  std::optional<Conditions> conditions_u;  // at u
  int doublings = 0;
  bool certified = false;
  std::optional<double> oracle_value;
  std::optional<bool> oracle_match;
};

/// Absolute tolerance of the oracle value cross-check.
inline constexpr double kOracleValueTol = 1e-7;

/// inf_P <x*, x - v>; needs the enumeration LP.
double theta(const Polyhedron& p, const UnitDirection& x_star, const Vector& v,
             const OracleCaps& caps = {});

Conditions check_conditions(const Polyhedron& p, const UnitDirection& x_star, const Vector& v,
                            double alpha, const ProjectionOptions& popts = {},
                            const OracleCaps& caps = {});

/// ((1 - a^2/4) d - theta) / (a^2/4). Negative when (2) already holds.
double mu_threshold_lemma(double theta_v, double d_va, double alpha);

/// (4 - a^2)/a^2 * d.
double mu_threshold_prop(double d_va, double alpha);

/// KKT residual d(-x*, N_P(x)).
double kkt_certificate(const Polyhedron& p, const UnitDirection& x_star, const Vector& x,
                       double active_tol = kDefaultActiveTol);

/// One shift and one projection from a given v.
SppReport solve_lp_spp(const Polyhedron& p, const UnitDirection& x_star, const Vector& v,
                       const SppOptions& opts = {});

enum class VMode { oracle, doubling };

/// oracle: v = x_opt - (1 + ||x_opt||) x* from the enumeration optimum.
/// doubling: the accepted v_k of solve_lp_spp_doubling.
Vector construct_infeasible_v(const Polyhedron& p, const UnitDirection& x_star, VMode mode,
                              const SppOptions& opts = {});

/// Doubling driver from `start` (a feasible point from phase 1 when absent).
/// Returns the first certified report, or the last attempt with
/// certified = false once max_doublings is exhausted.
SppReport solve_lp_spp_doubling(const Polyhedron& p, const UnitDirection& x_star,
                                const SppOptions& opts = {},
                                const std::optional<Vector>& start = std::nullopt);

struct CpReport {
  LiftedEpigraph lifted;
  Vector point;  // (v, t)
  std::optional<double> m_est;
  Vector w;
  double fw = 0.0;
  double graph_gap = 0.0;  // |s - f(w)| at the projected point
  SppReport spp;
};

/// min_P f by one projection onto the lifted epigraph. With v and t both
/// given the point (v, t) is used as is; otherwise the doubling driver walks
/// down from (v or a feasible point, f(.)).
CpReport solve_cp_spp(const Polyhedron& p, const MaxAffine& f, const std::optional<Vector>& v,
                      const std::optional<double>& t, const SppOptions& opts = {});

struct SolutionSetCertificate {
  bool cond_i = false;
  bool cond_a = false;
  bool cond_b = false;
  double min_value = 0.0;     // inf_P f
  double cond_i_inf = 0.0;    // sampled infimum in condition (i), +inf when vacuous
  double d_va = 0.0;
  bool all() const { return cond_i && cond_a && cond_b; }
};

/// Checks the sharpness condition around the solution set S = argmin_P f
/// and conditions (a), (b) at v. Subgradients are taken at the hull vertices
/// of the active-gradient sets along S.
SolutionSetCertificate verify_solution_set_certificate(const Polyhedron& p, const MaxAffine& f,
                                                       const Vector& v, double alpha,
                                                       const OracleCaps& caps = {});

}  // namespace spp
