// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#include "lp_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spp::detail {

namespace {

bool lex_less(const Vec& a, const Vec& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                      b.data() + b.size());
}

}  // namespace

RawLpSolution solve_enumerated(const RawLp& lp, double feas_tol) {
  const auto n = lp.c.size();
  RawLpSolution out;

  // Equalities: x = x0 + N y.
  Vec x0 = Vec::Zero(n);
  Mat basis = Mat::Identity(n, n);
  if (lp.eq_a.rows() > 0) {
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(lp.eq_a);
    x0 = cod.solve(lp.eq_b);
    const double scale = std::max(1.0, lp.eq_b.cwiseAbs().maxCoeff());
    if ((lp.eq_a * x0 - lp.eq_b).cwiseAbs().maxCoeff() > feas_tol * scale) {
      out.status = LpStatus::infeasible;
      return out;
    }
    basis = null_space_basis(lp.eq_a, static_cast<std::size_t>(n));
  }

  const Mat ah = lp.a.rows() ? Mat(lp.a * basis) : Mat(0, basis.cols());
  const Vec h = lp.a.rows() ? Vec(lp.b - lp.a * x0) : Vec(0);
  const Vec cy = basis.transpose() * lp.c;

  // Project out the lineality space of the inequality system.
  const Mat q = row_space_basis(ah);
  const Vec c_perp = cy - q * (q.transpose() * cy);
  const Mat m = ah * q;
  const Vec g = q.transpose() * cy;
  const auto r = q.cols();
  const Mat lift = basis * q;  // w -> x offset
  const double c0 = lp.c.dot(x0);

  bool found = false;
  Vec best_x;
  double best_value = std::numeric_limits<double>::infinity();

  auto consider = [&](const Vec& w) {
    if (m.rows() > 0 && (m * w - h).maxCoeff() > feas_tol) return;
    const Vec x = x0 + lift * w;
    const double value = g.dot(w) + c0;
    const double tie = 1e-12 * std::max(1.0, std::abs(best_value));
    if (!found || value < best_value - tie ||
        (std::abs(value - best_value) <= tie && lex_less(x, best_x))) {
      found = true;
      best_value = value;
      best_x = x;
    }
  };

  if (r == 0) {
    consider(Vec(0));
  } else {
    std::vector<std::size_t> rows(static_cast<std::size_t>(m.rows()));
    for_each_combination(rows.size(), static_cast<std::size_t>(r),
                         [&](const std::vector<std::size_t>& s) {
                           const Mat ms = select_rows(m, s);
                           Vec hs(static_cast<Eigen::Index>(s.size()));
                           for (std::size_t k = 0; k < s.size(); ++k) hs(k) = h(s[k]);
                           if (auto w = solve_square(ms, hs)) consider(*w);
                           return true;
                         });
  }

  if (!found) {
    out.status = LpStatus::infeasible;
    return out;
  }

  const double cost_tol = 1e-10 * std::max(1.0, lp.c.norm());
  if (c_perp.norm() > 1e-12 * std::max(1.0, cy.norm())) {
    out.status = LpStatus::unbounded;
    out.ray = -(basis * c_perp).normalized();
    return out;
  }

  // Extreme rays of {d : M d <= 0}.
  if (r > 0) {
    bool unbounded = false;
    Vec ray;
    auto try_dir = [&](const Vec& d) {
      if (m.rows() > 0 && (m * d).maxCoeff() > feas_tol) return;
      if (g.dot(d) < -cost_tol) {
        unbounded = true;
        ray = (lift * d).normalized();
      }
    };
    if (r == 1) {
      try_dir(Vec::Constant(1, 1.0));
      if (!unbounded) try_dir(Vec::Constant(1, -1.0));
    } else {
      for_each_combination(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(r - 1),
                           [&](const std::vector<std::size_t>& s) {
                             const Mat ms = select_rows(m, s);
                             const Mat ns = null_space_basis(ms, static_cast<std::size_t>(r));
                             if (ns.cols() != 1) return true;
                             const Vec d = ns.col(0);
                             try_dir(d);
                             if (!unbounded) try_dir(-d);
                             return !unbounded;
                           });
    }
    if (unbounded) {
      out.status = LpStatus::unbounded;
      out.ray = ray;
      return out;
    }
  }

  out.status = LpStatus::optimal;
  out.x = best_x;
  out.value = lp.c.dot(best_x);
  return out;
}

std::optional<double> max_uniform_slack(const Mat& a, const Vec& b, const Mat& eq_a,
                                        const Vec& eq_b, double cap, Vec* point) {
  const auto n = std::max(a.cols(), eq_a.cols());
  RawLp lp;
  lp.a = Mat::Zero(a.rows() + 1, n + 1);
  lp.b = Vec(a.rows() + 1);
  if (a.rows() > 0) {
    lp.a.topLeftCorner(a.rows(), n) = a;
    lp.a.col(n).head(a.rows()).setOnes();
    lp.b.head(a.rows()) = b;
  }
  lp.a(a.rows(), n) = 1.0;
  lp.b(a.rows()) = cap;
  lp.eq_a = Mat::Zero(eq_a.rows(), n + 1);
  if (eq_a.rows() > 0) lp.eq_a.leftCols(n) = eq_a;
  lp.eq_b = eq_b;
  lp.c = Vec::Zero(n + 1);
  lp.c(n) = -1.0;
  const RawLpSolution sol = solve_enumerated(lp);
  if (sol.status != LpStatus::optimal) return std::nullopt;
  if (point) *point = sol.x.head(n);
  return sol.x(n);
}

}  // namespace spp::detail
