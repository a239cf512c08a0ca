// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Internal bridge to Eigen for the small dense factorizations the oracles
// need. Nothing here is part of the public surface.

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "spp/linalg.hpp"

namespace spp::detail {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

inline Vec to_eigen(const Vector& v) {
  return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.dim()));
}

inline Vector from_eigen(const Vec& v) {
  return Vector(std::vector<double>(v.data(), v.data() + v.size()));
}

inline Mat to_eigen(const Matrix& m) {
  Mat out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  return out;
}

inline Mat select_rows(const Mat& a, const std::vector<std::size_t>& idx) {
  Mat out(static_cast<Eigen::Index>(idx.size()), a.cols());
  for (std::size_t k = 0; k < idx.size(); ++k) out.row(k) = a.row(idx[k]);
  return out;
}

/// Orthonormal basis of the row space of `a` (columns of the result).
Mat row_space_basis(const Mat& a, double rel_tol = 1e-10);

/// Orthonormal basis of the null space of `a` (columns of the result).
Mat null_space_basis(const Mat& a, std::size_t cols, double rel_tol = 1e-10);

std::size_t numerical_rank(const Mat& a, double rel_tol = 1e-10);

/// Solves the square system when its reciprocal condition estimate is above
/// `min_rcond`.
std::optional<Vec> solve_square(const Mat& a, const Vec& rhs, double min_rcond = 1e-12);

/// Calls fn(indices) for every k-subset of {0..n-1} in lexicographic order;
/// stops early when fn returns false.
void for_each_combination(std::size_t n, std::size_t k,
                          const std::function<bool(const std::vector<std::size_t>&)>& fn);

}  // namespace spp::detail
