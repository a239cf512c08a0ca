// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#include "dense.hpp"

namespace spp::detail {

namespace {

struct Svd {
  Mat v;
  Vec sigma;
  std::size_t rank = 0;
};

Svd full_svd(const Mat& a, std::size_t cols, double rel_tol) {
  Svd out;
  if (a.rows() == 0 || a.cols() == 0) {
    out.v = Mat::Identity(static_cast<Eigen::Index>(cols), static_cast<Eigen::Index>(cols));
    return out;
  }
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  out.v = svd.matrixV();
  out.sigma = svd.singularValues();
  const double top = out.sigma.size() ? out.sigma(0) : 0.0;
  const double cutoff = std::max(rel_tol * top, 1e-14);
  for (Eigen::Index i = 0; i < out.sigma.size(); ++i) {
    if (out.sigma(i) > cutoff) ++out.rank;
  }
  return out;
}

}  // namespace

Mat row_space_basis(const Mat& a, double rel_tol) {
  const Svd s = full_svd(a, static_cast<std::size_t>(a.cols()), rel_tol);
  return s.v.leftCols(static_cast<Eigen::Index>(s.rank));
}

Mat null_space_basis(const Mat& a, std::size_t cols, double rel_tol) {
  const Svd s = full_svd(a, cols, rel_tol);
  return s.v.rightCols(static_cast<Eigen::Index>(cols - s.rank));
}

std::size_t numerical_rank(const Mat& a, double rel_tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  return full_svd(a, static_cast<std::size_t>(a.cols()), rel_tol).rank;
}

std::optional<Vec> solve_square(const Mat& a, const Vec& rhs, double min_rcond) {
  if (a.rows() == 0) return Vec(0);
  Eigen::FullPivLU<Mat> lu(a);
  if (!lu.isInvertible()) return std::nullopt;
  if (lu.rcond() < min_rcond) return std::nullopt;
  return Vec(lu.solve(rhs));
}

void for_each_combination(std::size_t n, std::size_t k,
                          const std::function<bool(const std::vector<std::size_t>&)>& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!fn(idx)) return;
    if (k == 0) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace spp::detail
