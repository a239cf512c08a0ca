// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "spp/error.hpp"
#include "spp/kernels.hpp"

namespace spp {

/// Dense real vector with finite entries.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim, double fill = 0.0) : data_(dim, fill) {}
  Vector(std::initializer_list<double> values) : data_(values) { check_finite(); }
  explicit Vector(std::vector<double> values) : data_(std::move(values)) {
    check_finite();
  }

  static Vector unit(std::size_t dim, std::size_t axis) {
    Vector e(dim);
    e[axis] = 1.0;
    return e;
  }

  std::size_t dim() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator[](std::size_t i) noexcept { return data_[i]; }
  double operator[](std::size_t i) const noexcept { return data_[i]; }

  std::span<double> span() noexcept { return data_; }
  std::span<const double> span() const noexcept { return data_; }
  const std::vector<double>& values() const noexcept { return data_; }
  const double* data() const noexcept { return data_.data(); }
  double* data() noexcept { return data_.data(); }

  auto begin() const noexcept { return data_.begin(); }
  auto end() const noexcept { return data_.end(); }

  double dot(const Vector& other) const {
    require_same_dim(dim(), other.dim(), "Vector::dot");
    return kernels::dot(data_, other.data_);
  }
  double squared_norm() const { return kernels::squared_norm(data_); }
  double norm() const { return std::sqrt(squared_norm()); }

  /// this += a * x
  Vector& add_scaled(double a, const Vector& x) {
    require_same_dim(dim(), x.dim(), "Vector::add_scaled");
    kernels::axpy(a, x.data_, data_);
    return *this;
  }

  Vector& operator+=(const Vector& o) { return add_scaled(1.0, o); }
  Vector& operator-=(const Vector& o) { return add_scaled(-1.0, o); }
  Vector& operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
  }

  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(double s, Vector a) { return a *= s; }
  friend Vector operator*(Vector a, double s) { return a *= s; }
  friend Vector operator-(Vector a) { return a *= -1.0; }

  bool operator==(const Vector&) const = default;

  /// Appends one coordinate (used by the epigraph lift).
  Vector extended(double last) const {
    Vector out(dim() + 1);
    for (std::size_t i = 0; i < dim(); ++i) out[i] = data_[i];
    out[dim()] = last;
    return out;
  }
  Vector head(std::size_t k) const {
    return Vector(std::vector<double>(data_.begin(), data_.begin() + k));
  }

  std::string to_string() const;

 private:
  void check_finite() const {
    for (double v : data_) {
      if (!std::isfinite(v)) fail(ErrorCode::non_finite, "Vector: non-finite entry");
    }
  }

  std::vector<double> data_;
};

inline double distance(const Vector& a, const Vector& b) { return (a - b).norm(); }
inline double max_abs_diff(const Vector& a, const Vector& b) {
  require_same_dim(a.dim(), b.dim(), "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Unit-norm direction; |‖v‖ − 1| ≤ 1e−12 is enforced at construction.
class UnitDirection {
 public:
  static constexpr double kNormTol = 1e-12;

  /// Accepts an already-unit vector.
  explicit UnitDirection(Vector v);

  /// Scales a nonzero vector to unit length.
  static UnitDirection normalize(const Vector& v);

  const Vector& vec() const noexcept { return v_; }
  std::size_t dim() const noexcept { return v_.dim(); }
  double operator[](std::size_t i) const noexcept { return v_[i]; }
  UnitDirection operator-() const { return UnitDirection(-v_, Trusted{}); }

 private:
  struct Trusted {};
  UnitDirection(Vector v, Trusted) : v_(std::move(v)) {}
  Vector v_;
};

/// Row-major dense matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r * cols_ + c];
  }

  std::span<const double> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  Vector row_vector(std::size_t r) const {
    return Vector(std::vector<double>(row(r).begin(), row(r).end()));
  }

  const double* data() const noexcept { return data_.data(); }

  /// y = A x
  Vector apply(const Vector& x) const;

  /// Appends a row; cols must match (or the matrix be empty).
  void append_row(std::span<const double> r);

  /// Rows selected by index, in the given order.
  Matrix select_rows(std::span<const std::size_t> idx) const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace spp
