// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#include "spp/sharpness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dense.hpp"
#include "lp_engine.hpp"
#include "spp/sampling.hpp"
#include "subsets.hpp"

namespace spp {

namespace {

using detail::Mat;
using detail::Vec;

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_subset_caps(std::size_t count, std::size_t dim, const OracleCaps& caps,
                       const char* where) {
  if (count > caps.max_subset_rows || dim > caps.max_dim) {
    fail(ErrorCode::caps_exceeded, std::string(where) + ": too large for subset enumeration");
  }
}

// Distance from x* to cone_J when x* is outside it, nullopt otherwise.
std::optional<double> outside_distance(const Polyhedron& p, const UnitDirection& x_star,
                                       const std::vector<std::size_t>& rows) {
  const double d = distance_to_cone(x_star.vec(), row_cone(p, rows)).distance;
  if (d <= kMembershipTol) return std::nullopt;
  return d;
}

}  // namespace

SharpnessReport sharpness_lower_bound(const Polyhedron& p, const UnitDirection& x_star,
                                      const OracleCaps& caps) {
  require_same_dim(p.dim(), x_star.dim(), "sharpness_lower_bound");
  check_subset_caps(p.rows(), p.dim(), caps, "sharpness_lower_bound");
  SharpnessReport out{x_star, 1.0, std::nullopt, 0, false, std::nullopt, 0, {}};
  const std::size_t m = p.rows();
  double best = 1.0;
  bool any = false;
  std::vector<std::size_t> rows;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    rows.clear();
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1U) rows.push_back(i);
    ++out.subsets_examined;
    const auto d = outside_distance(p, x_star, rows);
    if (!d) continue;
    any = true;
    if (*d < best) {
      best = *d;
      out.minimizing_rows = rows;
    }
  }
  out.vacuous = !any;
  out.alpha_lower = best;
  return out;
}

SharpnessReport sharpness_exact(const Polyhedron& p, const UnitDirection& x_star,
                                const OracleCaps& caps) {
  SharpnessReport out = sharpness_lower_bound(p, x_star, caps);
  out.minimizing_rows.clear();
  double best = 1.0;
  bool any = false;
  for (const auto& rows : exact_active_sets(p, caps)) {
    const auto d = outside_distance(p, x_star, rows);
    if (!d) continue;
    if (!any || *d < best) out.minimizing_rows = rows;
    any = true;
    best = std::min(best, *d);
  }
  out.vacuous = !any;
  out.alpha_exact = best;
  return out;
}

double sharpness_dual_estimate(const Polyhedron& p, const UnitDirection& x_star,
                               std::size_t num_samples, std::uint64_t seed,
                               const OracleCaps& caps) {
  require_same_dim(p.dim(), x_star.dim(), "sharpness_dual_estimate");
  if (num_samples == 0) fail(ErrorCode::invalid_argument, "sharpness_dual_estimate: need at least one sample");
  if (!is_bounded(p)) fail(ErrorCode::unbounded, "sharpness_dual_estimate: polyhedron must be bounded");
  const auto home = face_of(p, x_star, caps);
  if (!home) fail(ErrorCode::unbounded, "sharpness_dual_estimate: face of x* is empty");

  auto disjoint = [&](const Vector& w) {
    const double len = w.norm();
    if (len <= 1e-14) return false;
    const auto face = face_of(p, UnitDirection::normalize(w), caps);
    return face && !faces_intersect(*face, *home);
  };

  SphereSampler sphere(p.dim(), seed);
  Halton radius(1, seed ^ 0x9e3779b97f4a7c15ULL);
  double best = kInf;
  for (std::size_t i = 0; i < num_samples; ++i) {
    const Vector u = sphere.next().vec();
    // Alternate global directions with perturbations of x* at log-uniform
    // radii in [1e-4, 1], where the infimum usually sits.
    Vector w = u;
    if (i % 2 == 1) {
      const double rho = std::pow(10.0, -4.0 * radius.next()[0]);
      w = x_star.vec() + rho * u;
    }
    if (w.norm() <= 1e-14) continue;
    const UnitDirection wd = UnitDirection::normalize(w);
    const double d = distance_to_ray(x_star, wd);
    if (d >= best || !disjoint(wd.vec())) continue;
    best = d;
    // Pull the accepted direction back toward x* while it stays disjoint.
    double lo = 0.0;
    double hi = 1.0;
    for (int k = 0; k < 30; ++k) {
      const double mid = 0.5 * (lo + hi);
      const Vector wm = x_star.vec() + mid * (wd.vec() - x_star.vec());
      if (disjoint(wm)) {
        hi = mid;
        best = std::min(best, distance_to_ray(x_star, UnitDirection::normalize(wm)));
      } else {
        lo = mid;
      }
    }
  }
  return best;
}

double kl_beta_from_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorCode::invalid_argument, "kl_beta_from_alpha: alpha must lie in (0,1)");
  return alpha / std::sqrt((1.0 - alpha) * (1.0 + alpha));
}

double kl_alpha_from_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) fail(ErrorCode::invalid_argument, "kl_alpha_from_beta: beta must be positive");
  return beta / std::sqrt(1.0 + beta * beta);
}

std::vector<std::vector<std::size_t>> realizable_argmax_patterns(const MaxAffine& f,
                                                                 const OracleCaps& caps) {
  const std::size_t k = f.size();
  const std::size_t n = f.dim();
  check_subset_caps(k, n, caps, "realizable_argmax_patterns");
  // Variables (x, s). Pieces in I satisfy <g_i,x> + c_i = s, the rest
  // <g_j,x> + c_j + t <= s; returns the largest such t.
  auto slack = [&](const std::vector<std::size_t>& in) {
    std::vector<std::size_t> rest;
    for (std::size_t j = 0, q = 0; j < k; ++j) {
      if (q < in.size() && in[q] == j) {
        ++q;
        continue;
      }
      rest.push_back(j);
    }
    auto fill = [&](const std::vector<std::size_t>& idx, Mat& a, Vec& b) {
      a.resize(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(n + 1));
      b.resize(static_cast<Eigen::Index>(idx.size()));
      for (std::size_t r = 0; r < idx.size(); ++r) {
        const auto& piece = f.piece(idx[r]);
        for (std::size_t c = 0; c < n; ++c) a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = piece.gradient[c];
        a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(n)) = -1.0;
        b(static_cast<Eigen::Index>(r)) = -piece.intercept;
      }
    };
    Mat a, eq;
    Vec b, eb;
    fill(rest, a, b);
    fill(in, eq, eb);
    return detail::max_uniform_slack(a, b, eq, eb);
  };

  const auto weak = detail::downward_closed_family(k, [&](const std::vector<std::size_t>& in) {
    const auto t = slack(in);
    return t && *t >= -kFeasTol;
  });
  std::vector<std::vector<std::size_t>> out;
  for (const auto& in : weak) {
    if (in.empty()) continue;
    if (in.size() == k) {
      out.push_back(in);
      continue;
    }
    const auto t = slack(in);
    if (t && *t > kDefaultActiveTol) out.push_back(in);
  }
  return out;
}

std::optional<double> pwl_kl_constant(const MaxAffine& f, const OracleCaps& caps) {
  std::optional<double> best;
  for (const auto& in : realizable_argmax_patterns(f, caps)) {
    std::vector<Vector> grads;
    for (std::size_t i : in) grads.push_back(f.piece(i).gradient);
    const double d = distance_to_convex_hull(Vector(f.dim()), grads).distance;
    if (d <= kMembershipTol) continue;
    if (!best || d < *best) best = d;
  }
  return best;
}

IndicatorLinearKl indicator_linear_kl(const Polyhedron& p, const UnitDirection& x_star,
                                      const OracleCaps& caps) {
  IndicatorLinearKl out;
  out.alpha = *sharpness_exact(p, x_star, caps).alpha_exact;
  if (out.alpha < 1.0) out.epi_alpha = out.alpha / std::sqrt(1.0 + out.alpha * out.alpha);
  return out;
}

}  // namespace spp
