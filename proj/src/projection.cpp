// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#include "spp/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dense.hpp"

namespace spp {

namespace {

using detail::Mat;
using detail::Vec;

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class GiStatus { solved, infeasible, iteration_cap };

struct GiOutcome {
  GiStatus status = GiStatus::solved;
  Vec x;
  std::vector<double> multipliers;
  int iterations = 0;
};

// Dual active-set method with identity Hessian. Invariant: z - x equals
// sum_j u_j a_j over the working set, with u >= 0 and working rows tight.
GiOutcome goldfarb_idnani(const Mat& a, const Vec& b, const Vec& z, int max_iter) {
  const Eigen::Index m = a.rows();
  GiOutcome out;
  out.x = z;
  std::vector<Eigen::Index> work;
  std::vector<double> u;
  const double feas_tol =
      1e-12 * std::max({1.0, b.cwiseAbs().maxCoeff(), z.cwiseAbs().maxCoeff()});

  while (true) {
    const Vec viol = a * out.x - b;
    Eigen::Index p = -1;
    double worst = feas_tol;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (viol(i) > worst) {
        worst = viol(i);
        p = i;
      }
    }
    if (p < 0) break;

    double up = 0.0;
    const Vec ap = a.row(p).transpose();
    while (true) {
      if (++out.iterations > max_iter) {
        out.status = GiStatus::iteration_cap;
        return out;
      }
      Vec r(static_cast<Eigen::Index>(work.size()));
      Vec hz = ap;
      if (!work.empty()) {
        Mat n(a.cols(), static_cast<Eigen::Index>(work.size()));
        for (std::size_t k = 0; k < work.size(); ++k) n.col(static_cast<Eigen::Index>(k)) = a.row(work[k]).transpose();
        r = n.colPivHouseholderQr().solve(ap);
        hz = ap - n * r;
      }
      // Dual step: the smallest ratio u_j / r_j, smallest row index on ties.
      double t1 = kInf;
      std::size_t drop = work.size();
      for (std::size_t k = 0; k < work.size(); ++k) {
        const double rk = r(static_cast<Eigen::Index>(k));
        if (rk <= 1e-14) continue;
        const double ratio = u[k] / rk;
        if (ratio < t1 - 1e-15 ||
            (ratio <= t1 + 1e-15 && drop < work.size() && work[k] < work[drop])) {
          t1 = std::min(t1, ratio);
          drop = k;
        }
      }
      const double hz2 = hz.squaredNorm();
      const double t2 = hz2 > 1e-24 ? (ap.dot(out.x) - b(p)) / hz2 : kInf;
      const double t = std::min(t1, t2);
      if (t == kInf) {
        out.status = GiStatus::infeasible;
        return out;
      }
      for (std::size_t k = 0; k < work.size(); ++k) u[k] -= t * r(static_cast<Eigen::Index>(k));
      up += t;
      if (t2 < kInf) out.x -= t * hz;
      if (t2 <= t1) {
        work.push_back(p);
        u.push_back(up);
        break;
      }
      work.erase(work.begin() + static_cast<std::ptrdiff_t>(drop));
      u.erase(u.begin() + static_cast<std::ptrdiff_t>(drop));
    }
  }

  out.multipliers.assign(static_cast<std::size_t>(m), 0.0);
  for (std::size_t k = 0; k < work.size(); ++k)
    out.multipliers[static_cast<std::size_t>(work[k])] = std::max(0.0, u[k]);
  return out;
}

double scale_of(const Vector& z) {
  double s = 1.0;
  for (double v : z) s = std::max(s, std::abs(v));
  return s;
}

bool within_caps(const Polyhedron& p, const OracleCaps& caps) {
  return p.rows() <= caps.max_rows && p.dim() <= caps.max_dim;
}

ProjectionResult from_brute(const Polyhedron& p, const Vector& z, const ProjectionOptions& opts,
                            int iterations) {
  BruteProjection b = project_brute(p, z, opts.caps);
  ProjectionResult out{b.proj, 0.0, b.active, b.multipliers, iterations, true};
  const double tol = std::max(opts.active_tol, feas_tol_at_scale(scale_of(z)));
  out.residual_normal = projection_residual(p, z, out.proj, tol);
  out.active = active_set(p, out.proj, tol);
  return out;
}

}  // namespace

Vector project_halfspace(const Vector& z, const Vector& normal, double offset) {
  require_same_dim(z.dim(), normal.dim(), "project_halfspace");
  const double nn = normal.squared_norm();
  if (nn == 0.0) fail(ErrorCode::invalid_argument, "project_halfspace: zero normal");
  const double excess = normal.dot(z) - offset;
  if (excess <= 0.0) return z;
  Vector out = z;
  out.add_scaled(-excess / nn, normal);
  return out;
}

double projection_residual(const Polyhedron& p, const Vector& z, const Vector& proj,
                           double active_tol) {
  Vector diff = z - proj;
  const double len = diff.norm();
  if (len <= 1e-10 * std::max(1.0, z.norm())) return 0.0;
  diff *= 1.0 / len;
  return distance_to_cone(diff, normal_cone_at(p, proj, active_tol)).distance;
}

ProjectionResult project_polyhedron(const Polyhedron& p, const Vector& z,
                                    const ProjectionOptions& opts) {
  require_same_dim(p.dim(), z.dim(), "project_polyhedron");
  if (!(opts.kkt_tol > 0.0)) fail(ErrorCode::invalid_argument, "project_polyhedron: kkt_tol must be positive");
  const int max_iter = opts.max_iterations > 0
                           ? opts.max_iterations
                           : 50 * static_cast<int>(p.rows() + p.dim()) + 100;
  const bool can_fallback = opts.allow_fallback && within_caps(p, opts.caps);

  const GiOutcome gi = goldfarb_idnani(detail::to_eigen(p.a()), detail::to_eigen(p.b()),
                                       detail::to_eigen(z), max_iter);
  if (gi.status == GiStatus::infeasible) {
    if (can_fallback) return from_brute(p, z, opts, gi.iterations);
    fail(ErrorCode::infeasible, "project_polyhedron: polyhedron is empty");
  }
  if (gi.status == GiStatus::iteration_cap) {
    if (can_fallback) return from_brute(p, z, opts, gi.iterations);
    fail(ErrorCode::non_convergence, "project_polyhedron: iteration cap reached");
  }

  ProjectionResult out;
  out.proj = detail::from_eigen(gi.x);
  out.multipliers = gi.multipliers;
  out.iterations = gi.iterations;
  const double feas = feas_tol_at_scale(scale_of(z));
  const double tol = std::max(opts.active_tol, feas);
  const bool feasible = p.max_violation(out.proj) <= feas;
  if (feasible) out.residual_normal = projection_residual(p, z, out.proj, tol);
  if (!feasible || out.residual_normal > opts.kkt_tol) {
    if (can_fallback) return from_brute(p, z, opts, gi.iterations);
    fail(ErrorCode::non_convergence, "project_polyhedron: result failed its KKT certificate");
  }
  out.active = active_set(p, out.proj, tol);
  return out;
}

LiftedEpigraph lift_epigraph(const Polyhedron& p, const MaxAffine& f) {
  require_same_dim(p.dim(), f.dim(), "lift_epigraph");
  const std::size_t n = p.dim();
  const std::size_t m = p.rows();
  Matrix a(m + f.size(), n + 1);
  Vector b(m + f.size());
  // Original (unnormalized) rows; the Polyhedron constructor renormalizes.
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = p.a()(i, j);
    b[i] = p.b()[i];
  }
  for (std::size_t k = 0; k < f.size(); ++k) {
    const auto& piece = f.piece(k);
    for (std::size_t j = 0; j < n; ++j) a(m + k, j) = piece.gradient[j];
    a(m + k, n) = -1.0;
    b[m + k] = -piece.intercept;
  }
  return LiftedEpigraph{Polyhedron(std::move(a), std::move(b)), m, f.size()};
}

ProjectionResult project_epigraph(const Polyhedron& p, const MaxAffine& f, const Vector& point,
                                  const ProjectionOptions& opts) {
  require_same_dim(p.dim() + 1, point.dim(), "project_epigraph");
  return project_polyhedron(lift_epigraph(p, f).poly, point, opts);
}

}  // namespace spp
