// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#include "spp/linalg.hpp"

#include <sstream>

namespace spp {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::non_finite: return "non_finite";
    case ErrorCode::infeasible: return "infeasible";
    case ErrorCode::unbounded: return "unbounded";
    case ErrorCode::caps_exceeded: return "caps_exceeded";
    case ErrorCode::non_convergence: return "non_convergence";
    case ErrorCode::condition_violated: return "condition_violated";
    case ErrorCode::certificate_failure: return "certificate_failure";
    case ErrorCode::empty_face: return "empty_face";
    case ErrorCode::degenerate_sampling: return "degenerate_sampling";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::io_error: return "io_error";
  }
  return "unknown";
}

std::string Vector::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < data_.size(); ++i) os << (i ? ", " : "") << data_[i];
  os << ')';
  return os.str();
}

UnitDirection::UnitDirection(Vector v) : v_(std::move(v)) {
  if (v_.empty()) fail(ErrorCode::invalid_argument, "UnitDirection: empty vector");
  if (std::abs(v_.norm() - 1.0) > kNormTol) {
    fail(ErrorCode::invalid_argument,
         "UnitDirection: vector is not unit length (norm " + std::to_string(v_.norm()) + ")");
  }
}

UnitDirection UnitDirection::normalize(const Vector& v) {
  const double n = v.norm();
  if (!(n > 0.0)) fail(ErrorCode::invalid_argument, "UnitDirection: zero vector");
  Vector u = v * (1.0 / n);
  // One refinement pass keeps |norm - 1| well inside kNormTol.
  u *= 1.0 / u.norm();
  return UnitDirection(std::move(u), Trusted{});
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) fail(ErrorCode::dimension_mismatch, "Matrix: ragged rows");
    for (double v : r) {
      if (!std::isfinite(v)) fail(ErrorCode::non_finite, "Matrix: non-finite entry");
      data_.push_back(v);
    }
  }
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(0, cols);
  for (const auto& r : rows) m.append_row(r.span());
  return m;
}

Vector Matrix::apply(const Vector& x) const {
  require_same_dim(cols_, x.dim(), "Matrix::apply");
  Vector y(rows_);
  kernels::active().gemv(data_.data(), rows_, cols_, x.data(), y.data());
  return y;
}

void Matrix::append_row(std::span<const double> r) {
  if (rows_ == 0 && cols_ == 0) cols_ = r.size();
  require_same_dim(cols_, r.size(), "Matrix::append_row");
  for (double v : r) {
    if (!std::isfinite(v)) fail(ErrorCode::non_finite, "Matrix: non-finite entry");
  }
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

Matrix Matrix::select_rows(std::span<const std::size_t> idx) const {
  Matrix out(0, cols_);
  for (std::size_t i : idx) out.append_row(row(i));
  return out;
}

}  // namespace spp
