// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#include "spp/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dense.hpp"

namespace spp {

Cone::Cone(std::size_t dim, std::vector<Vector> generators) : dim_(dim) {
  for (auto& g : generators) add(std::move(g));
}

void Cone::add(Vector g) {
  require_same_dim(dim_, g.dim(), "Cone::add");
  generators_.push_back(std::move(g));
}

Cone operator+(const Cone& a, const Cone& b) {
  require_same_dim(a.dim(), b.dim(), "Cone sum");
  Cone out = a;
  for (const auto& g : b.generators()) out.add(g);
  return out;
}

double distance_to_ray(const UnitDirection& u, const UnitDirection& v) {
  require_same_dim(u.dim(), v.dim(), "distance_to_ray");
  const double ip = u.vec().dot(v.vec());
  if (ip <= 0.0) return 1.0;
  // ||u - <u,v> v|| equals sqrt(1 - <u,v>^2) for unit vectors and avoids the
  // cancellation in 1 - ip^2 when u and v are nearly parallel.
  Vector r = u.vec();
  r.add_scaled(-ip, v.vec());
  return r.norm();
}

namespace {

using detail::Mat;
using detail::Vec;

Vec solve_passive(const Mat& g, const std::vector<char>& passive, const Vec& x) {
  std::vector<Eigen::Index> cols;
  for (std::size_t j = 0; j < passive.size(); ++j)
    if (passive[j]) cols.push_back(static_cast<Eigen::Index>(j));
  Mat sub(g.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = g.col(cols[k]);
  const Vec zs = sub.colPivHouseholderQr().solve(x);
  Vec z = Vec::Zero(g.cols());
  for (std::size_t k = 0; k < cols.size(); ++k) z(cols[k]) = zs(static_cast<Eigen::Index>(k));
  return z;
}

}  // namespace

ConeDistance distance_to_cone(const Vector& x, const Cone& cone, const NnlsOptions& opts) {
  require_same_dim(x.dim(), cone.dim(), "distance_to_cone");
  ConeDistance out;
  const std::size_t k = cone.size();
  if (k == 0) {
    out.distance = x.norm();
    return out;
  }

  const auto n = static_cast<Eigen::Index>(x.dim());
  Mat g(n, static_cast<Eigen::Index>(k));
  double max_col = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    g.col(static_cast<Eigen::Index>(j)) = detail::to_eigen(cone.generators()[j]);
    max_col = std::max(max_col, cone.generators()[j].norm());
  }
  const Vec xe = detail::to_eigen(x);
  if (max_col == 0.0) {
    out.distance = x.norm();
    out.coeffs.assign(k, 0.0);
    return out;
  }

  const double tol = opts.rel_tol * std::max(1.0, x.norm()) * max_col;
  const int max_iter = opts.iteration_factor * static_cast<int>(k);

  Vec t = Vec::Zero(static_cast<Eigen::Index>(k));
  std::vector<char> passive(k, 0);
  std::vector<char> blocked(k, 0);
  int iter = 0;

  while (true) {
    const Vec w = g.transpose() * (xe - g * t);
    Eigen::Index pick = -1;
    double best = tol;
    for (std::size_t j = 0; j < k; ++j) {
      if (passive[j] || blocked[j]) continue;
      if (w(static_cast<Eigen::Index>(j)) > best) {
        best = w(static_cast<Eigen::Index>(j));
        pick = static_cast<Eigen::Index>(j);
      }
    }
    if (pick < 0) break;
    if (++iter > max_iter) {
      fail(ErrorCode::non_convergence,
           "distance_to_cone: NNLS iteration cap reached (ill-conditioned generators)");
    }
    passive[static_cast<std::size_t>(pick)] = 1;

    bool first = true;
    while (true) {
      const Vec z = solve_passive(g, passive, xe);
      if (first && z(pick) <= 0.0) {
        // Numerically dependent column: the gradient said it helps but the
        // subproblem disagrees. Skip it until the iterate moves.
        passive[static_cast<std::size_t>(pick)] = 0;
        blocked[static_cast<std::size_t>(pick)] = 1;
        break;
      }
      first = false;
      bool all_positive = true;
      double step = 1.0;
      for (std::size_t j = 0; j < k; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        if (passive[j] && z(jj) <= 0.0) {
          all_positive = false;
          const double denom = t(jj) - z(jj);
          if (denom > 0.0) step = std::min(step, t(jj) / denom);
        }
      }
      if (all_positive) {
        t = z;
        std::fill(blocked.begin(), blocked.end(), 0);
        break;
      }
      t += step * (z - t);
      for (std::size_t j = 0; j < k; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        if (passive[j] && t(jj) <= 1e-15 * std::max(1.0, t.cwiseAbs().maxCoeff())) {
          passive[j] = 0;
          t(jj) = 0.0;
        }
      }
      if (++iter > max_iter) {
        fail(ErrorCode::non_convergence,
             "distance_to_cone: NNLS iteration cap reached (ill-conditioned generators)");
      }
    }
  }

  out.coeffs.assign(t.data(), t.data() + t.size());
  for (double& c : out.coeffs) c = std::max(c, 0.0);
  Vector residual = x;
  for (std::size_t j = 0; j < k; ++j) residual.add_scaled(-out.coeffs[j], cone.generators()[j]);
  out.distance = residual.norm();
  out.iterations = iter;
  return out;
}

bool cone_contains(const Cone& cone, const Vector& x, double tol) {
  return distance_to_cone(x, cone).distance <= tol;
}

HullDistance distance_to_convex_hull(const Vector& x, const std::vector<Vector>& points,
                                     double tol) {
  if (points.empty()) fail(ErrorCode::invalid_argument, "distance_to_convex_hull: no points");
  for (const auto& p : points) require_same_dim(x.dim(), p.dim(), "distance_to_convex_hull");

  const std::size_t k = points.size();
  const auto n = static_cast<Eigen::Index>(x.dim());
  Mat q(n, static_cast<Eigen::Index>(k));
  double max_sq = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    q.col(static_cast<Eigen::Index>(j)) = detail::to_eigen(points[j] - x);
    max_sq = std::max(max_sq, q.col(static_cast<Eigen::Index>(j)).squaredNorm());
  }

  HullDistance out;
  out.weights.assign(k, 0.0);

  // Start from the closest point.
  std::size_t start = 0;
  for (std::size_t j = 1; j < k; ++j) {
    if (q.col(static_cast<Eigen::Index>(j)).squaredNorm() <
        q.col(static_cast<Eigen::Index>(start)).squaredNorm())
      start = j;
  }
  std::vector<std::size_t> support{start};
  std::vector<double> lambda{1.0};
  Vec y = q.col(static_cast<Eigen::Index>(start));

  const int max_iter = 100 * static_cast<int>(k + 1);
  int iter = 0;
  const double stop_tol = tol * std::max(1.0, max_sq);

  auto affine_min = [&](const std::vector<std::size_t>& s) {
    const auto ks = static_cast<Eigen::Index>(s.size());
    Mat kkt = Mat::Zero(ks + 1, ks + 1);
    for (Eigen::Index a = 0; a < ks; ++a) {
      for (Eigen::Index b = 0; b < ks; ++b)
        kkt(a, b) = q.col(static_cast<Eigen::Index>(s[a])).dot(q.col(static_cast<Eigen::Index>(s[b])));
      kkt(a, ks) = 1.0;
      kkt(ks, a) = 1.0;
    }
    Vec rhs = Vec::Zero(ks + 1);
    rhs(ks) = 1.0;
    return Vec(kkt.completeOrthogonalDecomposition().solve(rhs).head(ks));
  };

  while (true) {
    if (++iter > max_iter) {
      fail(ErrorCode::non_convergence, "distance_to_convex_hull: iteration cap reached");
    }
    std::size_t j = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k; ++i) {
      const double v = y.dot(q.col(static_cast<Eigen::Index>(i)));
      if (v < best) {
        best = v;
        j = i;
      }
    }
    if (best >= y.squaredNorm() - stop_tol) break;
    if (std::find(support.begin(), support.end(), j) != support.end()) break;
    support.push_back(j);
    lambda.push_back(0.0);

    while (true) {
      const Vec alpha = affine_min(support);
      bool interior = true;
      for (Eigen::Index i = 0; i < alpha.size(); ++i)
        if (alpha(i) <= 1e-14) interior = false;
      if (interior) {
        for (std::size_t i = 0; i < support.size(); ++i) lambda[i] = alpha(static_cast<Eigen::Index>(i));
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < support.size(); ++i) {
        const double a = alpha(static_cast<Eigen::Index>(i));
        if (a <= 1e-14 && lambda[i] - a > 0.0) theta = std::min(theta, lambda[i] / (lambda[i] - a));
      }
      for (std::size_t i = 0; i < support.size(); ++i)
        lambda[i] += theta * (alpha(static_cast<Eigen::Index>(i)) - lambda[i]);
      std::vector<std::size_t> s2;
      std::vector<double> l2;
      for (std::size_t i = 0; i < support.size(); ++i) {
        if (lambda[i] > 1e-14) {
          s2.push_back(support[i]);
          l2.push_back(lambda[i]);
        }
      }
      if (s2.empty()) {
        // Cannot happen in exact arithmetic; keep the newest point.
        s2.push_back(support.back());
        l2.push_back(1.0);
      }
      double total = 0.0;
      for (double l : l2) total += l;
      for (double& l : l2) l /= total;
      support = std::move(s2);
      lambda = std::move(l2);
      if (++iter > max_iter) {
        fail(ErrorCode::non_convergence, "distance_to_convex_hull: iteration cap reached");
      }
    }
    y = Vec::Zero(n);
    for (std::size_t i = 0; i < support.size(); ++i)
      y += lambda[i] * q.col(static_cast<Eigen::Index>(support[i]));
  }

  for (std::size_t i = 0; i < support.size(); ++i) out.weights[support[i]] = lambda[i];
  out.distance = y.norm();
  out.iterations = iter;
  return out;
}

}  // namespace spp
