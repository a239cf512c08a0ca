// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#include <limits>

#include "spp/kernels.hpp"

#if defined(__aarch64__) || defined(_M_ARM64)
#include <arm_neon.h>

namespace spp::kernels::neon {

double dot(const double* x, const double* y, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double squared_norm(const double* x, std::size_t n) { return dot(x, x, n); }

void axpy(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
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

}  // namespace spp::kernels::neon

#else

namespace spp::kernels::neon {
double dot(const double* x, const double* y, std::size_t n) { return scalar::dot(x, y, n); }
double squared_norm(const double* x, std::size_t n) { return scalar::squared_norm(x, n); }
void axpy(double a, const double* x, double* y, std::size_t n) { scalar::axpy(a, x, y, n); }
void gemv(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
  scalar::gemv(a, rows, cols, x, y);
}
double residuals(const double* a, std::size_t rows, std::size_t cols, const double* x,
                 const double* rhs, double* out) {
  return scalar::residuals(a, rows, cols, x, rhs, out);
}
}  // namespace spp::kernels::neon

#endif
