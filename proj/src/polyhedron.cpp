// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#include "spp/polyhedron.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dense.hpp"
#include "lp_engine.hpp"
#include "subsets.hpp"

namespace spp {

namespace {

using detail::Mat;
using detail::Vec;

void check_caps(const Polyhedron& p, const OracleCaps& caps, const char* where) {
  if (p.rows() > caps.max_rows || p.dim() > caps.max_dim) {
    fail(ErrorCode::caps_exceeded,
         std::string(where) + ": instance too large for enumeration (m=" +
             std::to_string(p.rows()) + ", n=" + std::to_string(p.dim()) + ")");
  }
}

Mat rows_of(const Polyhedron& p, const std::vector<std::size_t>& idx) {
  Mat out(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(p.dim()));
  for (std::size_t k = 0; k < idx.size(); ++k)
    for (std::size_t c = 0; c < p.dim(); ++c) out(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(c)) = p.a()(idx[k], c);
  return out;
}

Vec rhs_of(const Polyhedron& p, const std::vector<std::size_t>& idx) {
  Vec out(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out(static_cast<Eigen::Index>(k)) = p.b()[idx[k]];
  return out;
}

std::vector<std::size_t> complement(std::size_t m, const std::vector<std::size_t>& j) {
  std::vector<std::size_t> out;
  std::size_t k = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (k < j.size() && j[k] == i) {
      ++k;
      continue;
    }
    out.push_back(i);
  }
  return out;
}

// Uniform slack of the rows outside j with the rows of j held at equality.
std::optional<double> slack_with_equalities(const Polyhedron& p, const std::vector<std::size_t>& j) {
  const auto rest = complement(p.rows(), j);
  return detail::max_uniform_slack(rows_of(p, rest), rhs_of(p, rest), rows_of(p, j), rhs_of(p, j));
}

}  // namespace

Polyhedron::Polyhedron(Matrix a, Vector b) {
  if (a.rows() == 0 || a.cols() == 0) {
    fail(ErrorCode::invalid_argument, "Polyhedron: need at least one row and one column");
  }
  require_same_dim(a.rows(), b.dim(), "Polyhedron");
  scale_.resize(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double sq = 0.0;
    for (double v : a.row(i)) {
      if (!std::isfinite(v)) fail(ErrorCode::non_finite, "Polyhedron: non-finite entry");
      sq += v * v;
    }
    const double norm = std::sqrt(sq);
    if (norm == 0.0) {
      fail(ErrorCode::invalid_argument, "Polyhedron: row " + std::to_string(i) + " is zero");
    }
    scale_[i] = norm;
    for (double& v : a.row(i)) v /= norm;
    b[i] /= norm;
  }
  a_ = std::move(a);
  b_ = std::move(b);
}

Vector Polyhedron::slacks(const Vector& x) const {
  require_same_dim(dim(), x.dim(), "Polyhedron::slacks");
  Vector out = a_.apply(x);
  out -= b_;
  return out;
}

double Polyhedron::max_violation(const Vector& x) const {
  require_same_dim(dim(), x.dim(), "Polyhedron::max_violation");
  std::vector<double> scratch(rows());
  return kernels::active().residuals(a_.data(), a_.rows(), a_.cols(), x.data(), b_.data(),
                                     scratch.data());
}

Polyhedron Polyhedron::with_rows(const Matrix& extra_a, const Vector& extra_b) const {
  require_same_dim(dim(), extra_a.cols(), "Polyhedron::with_rows");
  require_same_dim(extra_a.rows(), extra_b.dim(), "Polyhedron::with_rows");
  const Polyhedron extra(extra_a, extra_b);
  Matrix a = a_;
  std::vector<double> b = b_.values();
  std::vector<double> scale = scale_;
  for (std::size_t i = 0; i < extra.rows(); ++i) {
    a.append_row(extra.a().row(i));
    b.push_back(extra.b()[i]);
    scale.push_back(extra.row_scale()[i]);
  }
  return Polyhedron(std::move(a), Vector(std::move(b)), std::move(scale));
}

Polyhedron Polyhedron::with_equality(const Vector& c, double value) const {
  require_same_dim(dim(), c.dim(), "Polyhedron::with_equality");
  Matrix extra(2, dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    extra(0, j) = c[j];
    extra(1, j) = -c[j];
  }
  return with_rows(extra, Vector{value, -value});
}

bool ActiveSet::contains(std::size_t i) const {
  return std::binary_search(indices.begin(), indices.end(), i);
}

ActiveSet active_set(const Polyhedron& p, const Vector& x, double tol) {
  if (!(tol > 0.0)) fail(ErrorCode::invalid_argument, "active_set: tol must be positive");
  const Vector s = p.slacks(x);
  ActiveSet out;
  out.at = x;
  out.tol = tol;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if (s[i] > tol) {
      fail(ErrorCode::infeasible, "active_set: point violates row " + std::to_string(i) +
                                      " by " + std::to_string(s[i]));
    }
    if (s[i] >= -tol) out.indices.push_back(i);
  }
  return out;
}

Cone normal_cone_at(const Polyhedron& p, const Vector& x, double tol) {
  return row_cone(p, active_set(p, x, tol).indices);
}

Cone row_cone(const Polyhedron& p, const std::vector<std::size_t>& rows) {
  Cone out(p.dim());
  for (std::size_t i : rows) {
    if (i >= p.rows()) fail(ErrorCode::invalid_argument, "row_cone: row index out of range");
    out.add(p.normal(i));
  }
  return out;
}

LpResult lp_solve_enumeration(const Polyhedron& p, const Vector& c, const OracleCaps& caps) {
  require_same_dim(p.dim(), c.dim(), "lp_solve_enumeration");
  check_caps(p, caps, "lp_solve_enumeration");
  detail::RawLp lp;
  lp.a = detail::to_eigen(p.a());
  lp.b = detail::to_eigen(p.b());
  lp.eq_a = Mat(0, static_cast<Eigen::Index>(p.dim()));
  lp.eq_b = Vec(0);
  lp.c = detail::to_eigen(c);
  const auto sol = detail::solve_enumerated(lp);

  LpResult out;
  out.status = sol.status;
  if (sol.status == LpStatus::optimal) {
    Vector x = detail::from_eigen(sol.x);
    out.value = c.dot(x);
    out.vertex_active_set = active_set(p, x, kDefaultActiveTol);
    out.x_opt = std::move(x);
  } else if (sol.status == LpStatus::unbounded) {
    out.ray = detail::from_eigen(sol.ray);
  }
  return out;
}

std::optional<Vector> find_descent_ray(const Polyhedron& p, const Vector& c) {
  require_same_dim(p.dim(), c.dim(), "find_descent_ray");
  detail::RawLp lp;
  lp.a = detail::to_eigen(p.a());
  lp.b = Vec::Zero(static_cast<Eigen::Index>(p.rows()));
  lp.eq_a = Mat(0, static_cast<Eigen::Index>(p.dim()));
  lp.eq_b = Vec(0);
  const double cn = c.norm();
  if (cn == 0.0) return std::nullopt;
  lp.c = detail::to_eigen(c) / cn;
  const auto sol = detail::solve_enumerated(lp);
  if (sol.status != LpStatus::unbounded) return std::nullopt;
  return detail::from_eigen(sol.ray);
}

std::optional<Vector> find_feasible_point(const Polyhedron& p) {
  Vec point;
  const auto t = detail::max_uniform_slack(detail::to_eigen(p.a()), detail::to_eigen(p.b()),
                                           Mat(0, static_cast<Eigen::Index>(p.dim())), Vec(0),
                                           1.0, &point);
  if (!t || *t < -kFeasTol) return std::nullopt;
  return detail::from_eigen(point);
}

bool is_feasible(const Polyhedron& p) { return find_feasible_point(p).has_value(); }

bool is_bounded(const Polyhedron& p) {
  for (std::size_t i = 0; i < p.dim(); ++i) {
    const Vector e = Vector::unit(p.dim(), i);
    if (find_descent_ray(p, e) || find_descent_ray(p, -e)) return false;
  }
  return true;
}

BruteProjection project_brute(const Polyhedron& p, const Vector& z, const OracleCaps& caps) {
  require_same_dim(p.dim(), z.dim(), "project_brute");
  check_caps(p, caps, "project_brute");
  const Mat a = detail::to_eigen(p.a());
  const Vec b = detail::to_eigen(p.b());
  const Vec ze = detail::to_eigen(z);
  const std::size_t m = p.rows();
  const std::size_t n = p.dim();

  bool found = false;
  double best = std::numeric_limits<double>::infinity();
  Vec best_x;
  std::vector<double> best_lambda;

  const double scale = std::max(1.0, ze.cwiseAbs().maxCoeff());
  const double feas = feas_tol_at_scale(scale);
  auto consider = [&](const std::vector<std::size_t>& s, const Vec& x, const Vec& lambda) {
    if ((a * x - b).maxCoeff() > feas) return;
    const double d = (x - ze).norm();
    if (!found || d < best - 1e-13) {
      found = true;
      best = d;
      best_x = x;
      best_lambda.assign(m, 0.0);
      for (std::size_t k = 0; k < s.size(); ++k) best_lambda[s[k]] = std::max(0.0, lambda(static_cast<Eigen::Index>(k)));
    }
  };

  consider({}, ze, Vec(0));
  for (std::size_t k = 1; k <= std::min(n, m); ++k) {
    detail::for_each_combination(m, k, [&](const std::vector<std::size_t>& s) {
      const Mat as = detail::select_rows(a, s);
      const auto ki = static_cast<Eigen::Index>(k);
      Vec bs(ki);
      for (std::size_t r = 0; r < k; ++r) bs(static_cast<Eigen::Index>(r)) = b(static_cast<Eigen::Index>(s[r]));
      // Skip near-dependent row sets, then project through A_s^T = QR. Going
      // through the Gram matrix squares the conditioning and can leave the
      // active rows violated by more than the feasibility gate.
      if (!detail::solve_square(as * as.transpose(), bs)) return true;
      const Eigen::HouseholderQR<Mat> qr(as.transpose());
      const Mat q = qr.householderQ() * Mat::Identity(static_cast<Eigen::Index>(n), ki);
      const auto r_upper = qr.matrixQR().topLeftCorner(ki, ki).triangularView<Eigen::Upper>();
      const Vec c = r_upper.transpose().solve(bs);
      const Vec excess = q.transpose() * ze - c;
      const Vec lambda = r_upper.solve(excess);
      if (lambda.minCoeff() < -1e-10 * scale) return true;
      consider(s, ze - q * excess, lambda);
      return true;
    });
  }
  if (!found) fail(ErrorCode::infeasible, "project_brute: polyhedron is empty");

  BruteProjection out{detail::from_eigen(best_x), {}, best_lambda};
  out.active = active_set(p, out.proj, std::max(kDefaultActiveTol, feas));
  return out;
}

double support_function(const Polyhedron& p, const Vector& v, const OracleCaps& caps) {
  const LpResult r = lp_solve_enumeration(p, -v, caps);
  switch (r.status) {
    case LpStatus::optimal:
      return -*r.value;
    case LpStatus::unbounded:
      return std::numeric_limits<double>::infinity();
    case LpStatus::infeasible:
      break;
  }
  fail(ErrorCode::infeasible, "support_function: polyhedron is empty");
}

std::optional<FaceDescription> face_of(const Polyhedron& p, const UnitDirection& x_star,
                                       const OracleCaps& caps) {
  require_same_dim(p.dim(), x_star.dim(), "face_of");
  const LpResult r = lp_solve_enumeration(p, -x_star.vec(), caps);
  if (r.status == LpStatus::infeasible) fail(ErrorCode::infeasible, "face_of: polyhedron is empty");
  if (r.status == LpStatus::unbounded) return std::nullopt;

  FaceDescription face{p, x_star.vec(), -*r.value, {}, *r.x_opt};
  // A row is an implicit equality on the face when its minimum over the face
  // still reaches b_i.
  detail::RawLp lp;
  lp.a = detail::to_eigen(p.a());
  lp.b = detail::to_eigen(p.b());
  lp.eq_a = detail::to_eigen(x_star.vec()).transpose();
  lp.eq_b = Vec::Constant(1, face.optimal_value);
  for (std::size_t i = 0; i < p.rows(); ++i) {
    if (!r.vertex_active_set->contains(i)) continue;
    lp.c = detail::to_eigen(p.normal(i));
    const auto sol = detail::solve_enumerated(lp);
    if (sol.status == LpStatus::optimal && sol.value >= p.b()[i] - kDefaultActiveTol)
      face.equalities.push_back(i);
  }
  return face;
}

bool faces_intersect(const FaceDescription& f1, const FaceDescription& f2) {
  require_same_dim(f1.base.dim(), f2.base.dim(), "faces_intersect");
  Mat eq(2, static_cast<Eigen::Index>(f1.base.dim()));
  eq.row(0) = detail::to_eigen(f1.direction).transpose();
  eq.row(1) = detail::to_eigen(f2.direction).transpose();
  const Vec eb = Vec{{f1.optimal_value, f2.optimal_value}};
  const auto t = detail::max_uniform_slack(detail::to_eigen(f1.base.a()),
                                           detail::to_eigen(f1.base.b()), eq, eb);
  // Near-touching faces count as intersecting.
  return t && *t >= -1e-7;
}

std::vector<std::vector<std::size_t>> realizable_active_sets(const Polyhedron& p,
                                                             const OracleCaps& caps) {
  if (p.rows() > caps.max_subset_rows || p.dim() > caps.max_dim) {
    fail(ErrorCode::caps_exceeded, "realizable_active_sets: too many rows for subset enumeration");
  }
  return detail::downward_closed_family(p.rows(), [&](const std::vector<std::size_t>& j) {
    const auto t = slack_with_equalities(p, j);
    return t && *t >= -kFeasTol;
  });
}

std::vector<std::vector<std::size_t>> exact_active_sets(const Polyhedron& p,
                                                        const OracleCaps& caps) {
  std::vector<std::vector<std::size_t>> out;
  for (auto& j : realizable_active_sets(p, caps)) {
    if (j.size() == p.rows()) {
      out.push_back(std::move(j));
      continue;
    }
    const auto t = slack_with_equalities(p, j);
    if (t && *t > kDefaultActiveTol) out.push_back(std::move(j));
  }
  return out;
}

std::vector<Vector> enumerate_vertices(const Polyhedron& p, const OracleCaps& caps) {
  check_caps(p, caps, "enumerate_vertices");
  const Mat a = detail::to_eigen(p.a());
  const Vec b = detail::to_eigen(p.b());
  std::vector<Vector> out;
  if (detail::numerical_rank(a) < p.dim()) return out;
  std::vector<Vec> found;
  detail::for_each_combination(p.rows(), p.dim(), [&](const std::vector<std::size_t>& s) {
    const auto x = detail::solve_square(detail::select_rows(a, s), detail::select_rows(b, s));
    if (!x || (a * *x - b).maxCoeff() > kFeasTol) return true;
    for (const auto& f : found)
      if ((f - *x).cwiseAbs().maxCoeff() <= 1e-9) return true;
    found.push_back(*x);
    return true;
  });
  std::sort(found.begin(), found.end(), [](const Vec& l, const Vec& r) {
    return std::lexicographical_compare(l.data(), l.data() + l.size(), r.data(), r.data() + r.size());
  });
  for (const auto& f : found) out.push_back(detail::from_eigen(f));
  return out;
}

}  // namespace spp
