// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#include <limits>

#include "spp/kernels.hpp"

namespace spp::kernels::scalar {

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double squared_norm(const double* x, std::size_t n) { return dot(x, x, n); }

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void gemv(const double* a, std::size_t rows, std::size_t cols, const double* x,
          double* y) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot(a + r * cols, x, cols);
}

double residuals(const double* a, std::size_t rows, std::size_t cols, const double* x,
                 const double* rhs, double* out) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < rows; ++r) {
    out[r] = dot(a + r * cols, x, cols) - rhs[r];
    if (out[r] > worst) worst = out[r];
  }
  return worst;
}

}  // namespace spp::kernels::scalar
