// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#include "spp/single_projection.hpp"

#include <cmath>
#include <limits>

#include "dense.hpp"
#include "lp_engine.hpp"
#include "spp/sharpness.hpp"

namespace spp {

namespace {

using detail::Mat;
using detail::Vec;

constexpr double kInf = std::numeric_limits<double>::infinity();

bool within_caps(const Polyhedron& p, const OracleCaps& caps) {
  return p.rows() <= caps.max_rows && p.dim() <= caps.max_dim;
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    fail(ErrorCode::invalid_argument, "alpha must lie in (0,1]");
  }
}

double optimal_value(const Polyhedron& p, const UnitDirection& x_star, const OracleCaps& caps) {
  const LpResult lp = lp_solve_enumeration(p, x_star.vec(), caps);
  if (lp.status == LpStatus::unbounded) fail(ErrorCode::unbounded, "linear objective is unbounded below on P");
  if (lp.status == LpStatus::infeasible) fail(ErrorCode::infeasible, "polyhedron is empty");
  return *lp.value;
}

// min <c, x> over {x in P : rows `eq` tight}.
detail::RawLpSolution lp_on_face(const Polyhedron& p, const std::vector<std::size_t>& eq,
                                 const Vector& c) {
  detail::RawLp lp;
  lp.a = detail::to_eigen(p.a());
  lp.b = detail::to_eigen(p.b());
  lp.eq_a = detail::select_rows(lp.a, eq);
  lp.eq_b = Vec(static_cast<Eigen::Index>(eq.size()));
  for (std::size_t k = 0; k < eq.size(); ++k) lp.eq_b(static_cast<Eigen::Index>(k)) = p.b()[eq[k]];
  lp.c = detail::to_eigen(c);
  return detail::solve_enumerated(lp);
}

}  // namespace

double theta(const Polyhedron& p, const UnitDirection& x_star, const Vector& v,
             const OracleCaps& caps) {
  require_same_dim(p.dim(), x_star.dim(), "theta");
  require_same_dim(p.dim(), v.dim(), "theta");
  return optimal_value(p, x_star, caps) - x_star.vec().dot(v);
}

Conditions check_conditions(const Polyhedron& p, const UnitDirection& x_star, const Vector& v,
                            double alpha, const ProjectionOptions& popts,
                            const OracleCaps& caps) {
  check_alpha(alpha);
  Conditions c;
  c.theta = theta(p, x_star, v, caps);
  c.d_va = distance(v, project_polyhedron(p, v, popts).proj);
  c.cond1 = c.theta > 0.0;
  c.cond2 = (1.0 - alpha * alpha / 4.0) * c.d_va < c.theta;
  return c;
}

double mu_threshold_lemma(double theta_v, double d_va, double alpha) {
  check_alpha(alpha);
  if (!(theta_v > 0.0)) fail(ErrorCode::condition_violated, "mu_threshold_lemma: theta(v) must be positive");
  const double q = alpha * alpha / 4.0;
  return ((1.0 - q) * d_va - theta_v) / q;
}

double mu_threshold_prop(double d_va, double alpha) {
  check_alpha(alpha);
  if (!(d_va >= 0.0)) fail(ErrorCode::invalid_argument, "mu_threshold_prop: distance must be nonnegative");
  return (4.0 - alpha * alpha) / (alpha * alpha) * d_va;
}

double kkt_certificate(const Polyhedron& p, const UnitDirection& x_star, const Vector& x,
                       double active_tol) {
  return distance_to_cone((-x_star).vec(), normal_cone_at(p, x, active_tol)).distance;
}

SppReport solve_lp_spp(const Polyhedron& p, const UnitDirection& x_star, const Vector& v,
                       const SppOptions& opts) {
  require_same_dim(p.dim(), x_star.dim(), "solve_lp_spp");
  require_same_dim(p.dim(), v.dim(), "solve_lp_spp");
  if (find_descent_ray(p, x_star.vec())) {
    fail(ErrorCode::unbounded, "solve_lp_spp: objective unbounded below, no minimizer to find");
  }

  SppReport r{x_star, v, std::nullopt, 0.0, 1.0, false, 0.0, 0.0, false, v, v, 0.0, 0.0, 0.0,
              std::nullopt, std::nullopt, 0, false, std::nullopt, std::nullopt};

  if (opts.alpha) {
    check_alpha(*opts.alpha);
    r.alpha_used = *opts.alpha;
  } else {
    r.alpha_used = sharpness_lower_bound(p, -x_star, opts.caps).alpha_lower;
    r.alpha_auto = true;
  }

  const bool oracle = within_caps(p, opts.caps) && (opts.oracle_check || opts.require_condition1);
  std::optional<double> best;
  if (oracle) {
    best = optimal_value(p, x_star, opts.caps);
    r.theta_v = *best - x_star.vec().dot(v);
    if (opts.require_condition1 && !(*r.theta_v > 0.0)) {
      fail(ErrorCode::condition_violated,
           "solve_lp_spp: v does not lie strictly below the optimal level (theta = " +
               std::to_string(*r.theta_v) + ")");
    }
  }

  r.d_va = distance(v, project_polyhedron(p, v, opts.projection).proj);
  r.mu_threshold = mu_threshold_prop(r.d_va, r.alpha_used);
  if (opts.mu) {
    if (!(*opts.mu >= 0.0) || !std::isfinite(*opts.mu)) fail(ErrorCode::invalid_argument, "mu must be a finite nonnegative number");
    r.mu_used = *opts.mu;
  } else {
    r.mu_used = r.mu_threshold * (1.0 + 1e-6);
    r.mu_auto = true;
  }

  r.u = v;
  r.u.add_scaled(-r.mu_used, x_star.vec());
  const ProjectionResult pr = project_polyhedron(p, r.u, opts.projection);
  r.solution = pr.proj;
  r.projection_residual = pr.residual_normal;
  r.value = x_star.vec().dot(r.solution);
  r.kkt_certificate = kkt_certificate(p, x_star, r.solution, opts.projection.active_tol);
  r.certified = r.kkt_certificate <= opts.cert_tol;

  if (best) {
    const double a2 = r.alpha_used * r.alpha_used / 4.0;
    r.conditions = Conditions{*r.theta_v > 0.0, (1.0 - a2) * r.d_va < *r.theta_v, *r.theta_v, r.d_va};
    const double theta_u = *best - x_star.vec().dot(r.u);
    const double d_u = distance(r.u, r.solution);
    r.conditions_u = Conditions{theta_u > 0.0, (1.0 - a2) * d_u < theta_u, theta_u, d_u};
    if (opts.oracle_check) {
      r.oracle_value = *best;
      r.oracle_match = std::abs(r.value - *best) <= kOracleValueTol;
    }
  }
  return r;
}

SppReport solve_lp_spp_doubling(const Polyhedron& p, const UnitDirection& x_star,
                                const SppOptions& opts, const std::optional<Vector>& start) {
  require_same_dim(p.dim(), x_star.dim(), "solve_lp_spp_doubling");
  if (opts.max_doublings < 0) fail(ErrorCode::invalid_argument, "max_doublings must be nonnegative");
  if (find_descent_ray(p, x_star.vec())) {
    fail(ErrorCode::unbounded, "solve_lp_spp: objective unbounded below, no minimizer to find");
  }
  Vector x_hat;
  if (start) {
    require_same_dim(p.dim(), start->dim(), "solve_lp_spp_doubling");
    x_hat = *start;
  } else {
    auto feasible = find_feasible_point(p);
    if (!feasible) fail(ErrorCode::infeasible, "solve_lp_spp: polyhedron is empty");
    x_hat = std::move(*feasible);
  }

  SppOptions inner = opts;
  inner.require_condition1 = false;
  inner.oracle_check = false;
  bool alpha_auto = false;
  if (!inner.alpha) {
    inner.alpha = sharpness_lower_bound(p, -x_star, opts.caps).alpha_lower;
    alpha_auto = true;
  }

  std::optional<SppReport> last;
  for (int k = 0; k <= opts.max_doublings; ++k) {
    Vector v = x_hat;
    v.add_scaled(-std::ldexp(1.0, k), x_star.vec());
    SppReport r = solve_lp_spp(p, x_star, v, inner);
    r.doublings = k;
    r.alpha_auto = alpha_auto;
    const bool done = r.certified;
    last = std::move(r);
    if (done) break;
  }

  SppReport& r = *last;
  if (opts.oracle_check && within_caps(p, opts.caps)) {
    const double best = optimal_value(p, x_star, opts.caps);
    const double a2 = r.alpha_used * r.alpha_used / 4.0;
    r.theta_v = best - x_star.vec().dot(r.v);
    r.conditions = Conditions{*r.theta_v > 0.0, (1.0 - a2) * r.d_va < *r.theta_v, *r.theta_v, r.d_va};
    const double theta_u = best - x_star.vec().dot(r.u);
    const double d_u = distance(r.u, r.solution);
    r.conditions_u = Conditions{theta_u > 0.0, (1.0 - a2) * d_u < theta_u, theta_u, d_u};
    r.oracle_value = best;
    r.oracle_match = std::abs(r.value - best) <= kOracleValueTol;
  }
  return r;
}

Vector construct_infeasible_v(const Polyhedron& p, const UnitDirection& x_star, VMode mode,
                              const SppOptions& opts) {
  if (mode == VMode::doubling) return solve_lp_spp_doubling(p, x_star, opts).v;
  const LpResult lp = lp_solve_enumeration(p, x_star.vec(), opts.caps);
  if (lp.status == LpStatus::unbounded) fail(ErrorCode::unbounded, "construct_infeasible_v: objective unbounded below");
  if (lp.status == LpStatus::infeasible) fail(ErrorCode::infeasible, "construct_infeasible_v: polyhedron is empty");
  Vector v = *lp.x_opt;
  v.add_scaled(-(1.0 + lp.x_opt->norm()), x_star.vec());
  return v;
}

CpReport solve_cp_spp(const Polyhedron& p, const MaxAffine& f, const std::optional<Vector>& v,
                      const std::optional<double>& t, const SppOptions& opts) {
  require_same_dim(p.dim(), f.dim(), "solve_cp_spp");
  if (v) require_same_dim(p.dim(), v->dim(), "solve_cp_spp");
  LiftedEpigraph lifted = lift_epigraph(p, f);
  const std::size_t n = p.dim();
  const UnitDirection e(Vector::unit(n + 1, n));
  if (find_descent_ray(lifted.poly, e.vec())) {
    fail(ErrorCode::unbounded, "solve_cp_spp: f is unbounded below on P");
  }

  auto base = [&]() {
    if (v) return *v;
    auto feasible = find_feasible_point(p);
    if (!feasible) fail(ErrorCode::infeasible, "solve_cp_spp: polyhedron is empty");
    return *feasible;
  };

  SppReport spp = [&]() {
    if (t) return solve_lp_spp(lifted.poly, e, base().extended(*t), opts);
    const Vector x0 = base();
    return solve_lp_spp_doubling(lifted.poly, e, opts, x0.extended(f.value(x0)));
  }();

  CpReport out{std::move(lifted), spp.v, spp.oracle_value, spp.solution.head(n), 0.0, 0.0, spp};
  out.fw = f.value(out.w);
  out.graph_gap = std::abs(spp.solution[n] - out.fw);
  return out;
}

SolutionSetCertificate verify_solution_set_certificate(const Polyhedron& p, const MaxAffine& f,
                                                       const Vector& v, double alpha,
                                                       const OracleCaps& caps) {
  require_same_dim(p.dim(), f.dim(), "verify_solution_set_certificate");
  require_same_dim(p.dim(), v.dim(), "verify_solution_set_certificate");
  check_alpha(alpha);
  const std::size_t n = p.dim();
  const LiftedEpigraph lifted = lift_epigraph(p, f);
  const UnitDirection e(Vector::unit(n + 1, n));

  SolutionSetCertificate out;
  out.min_value = optimal_value(lifted.poly, e, caps);
  const double m = out.min_value;
  const double level_tol = 1e-8 * std::max(1.0, std::abs(m));

  // Solution set S = {x in P : g_j x + c_j <= M for all j}.
  std::vector<Vector> extra_rows;
  std::vector<double> extra_b;
  for (const auto& piece : f.pieces()) {
    if (piece.gradient.norm() == 0.0) continue;
    extra_rows.push_back(piece.gradient);
    extra_b.push_back(m - piece.intercept + level_tol);
  }
  const Polyhedron s = extra_rows.empty()
                           ? p
                           : p.with_rows(Matrix::from_rows(extra_rows, n), Vector(extra_b));

  // Subgradient candidates: gradients of pieces attaining M somewhere on S.
  std::vector<UnitDirection> candidates;
  bool zero_subgradient = false;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const auto& piece = f.piece(j);
    const auto sol = lp_on_face(s, {}, -piece.gradient);
    if (sol.status != LpStatus::optimal) continue;
    const double top = -sol.value + piece.intercept;
    if (top < m - level_tol) continue;
    if (piece.gradient.norm() == 0.0) {
      zero_subgradient = true;
      continue;
    }
    candidates.push_back(-UnitDirection::normalize(piece.gradient));
  }

  double inf = kInf;
  if (zero_subgradient) inf = 0.0;
  for (const auto& rows : exact_active_sets(p, caps)) {
    // Skip faces lying inside S: no point of A \ S carries this active set.
    bool inside = true;
    for (const auto& piece : f.pieces()) {
      const auto sol = lp_on_face(p, rows, -piece.gradient);
      if (sol.status != LpStatus::optimal || -sol.value + piece.intercept > m + level_tol) {
        inside = false;
        break;
      }
    }
    if (inside) continue;
    const Cone cone = row_cone(p, rows);
    for (const auto& w : candidates) inf = std::min(inf, distance_to_cone(w.vec(), cone).distance);
  }
  out.cond_i_inf = inf;
  out.cond_i = inf >= alpha;

  const double fv = f.value(v);
  out.cond_a = fv < m;
  out.d_va = distance(v, project_polyhedron(p, v).proj);
  out.cond_b = (1.0 - alpha * alpha / 4.0) * out.d_va < m - fv;
  return out;
}

}  // namespace spp
