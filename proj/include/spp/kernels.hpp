// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Dense double-precision inner loops. Each kernel has a scalar reference
// implementation and vectorized variants (AVX2+FMA on x86-64, NEON on
// AArch64). The variant is chosen once per process from the CPU feature
// flags; setting SPP_ISA=scalar in the environment forces the reference path.

#include <cstddef>
#include <span>
#include <string_view>

namespace spp::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa) noexcept;

/// ISA the dispatcher picked for this process.
Isa active_isa() noexcept;

/// True when `isa` can run on this CPU and was compiled in.
bool isa_available(Isa isa) noexcept;

/// Function table for one instruction set.
struct KernelTable {
  double (*dot)(const double* x, const double* y, std::size_t n);
  double (*squared_norm)(const double* x, std::size_t n);
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // y = A x for row-major A (rows x cols)
  void (*gemv)(const double* a, std::size_t rows, std::size_t cols,
               const double* x, double* y);
  // out[i] = <row_i, x> - rhs[i]; returns max_i out[i] (or -inf when rows == 0)
  double (*residuals)(const double* a, std::size_t rows, std::size_t cols,
                      const double* x, const double* rhs, double* out);
};

/// Table for a specific ISA; falls back to scalar if unavailable.
const KernelTable& table(Isa isa) noexcept;
const KernelTable& active() noexcept;

inline double dot(std::span<const double> x, std::span<const double> y) {
  return active().dot(x.data(), y.data(), x.size());
}

inline double squared_norm(std::span<const double> x) {
  return active().squared_norm(x.data(), x.size());
}

inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  active().axpy(a, x.data(), y.data(), x.size());
}

namespace scalar {
double dot(const double* x, const double* y, std::size_t n);
double squared_norm(const double* x, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void gemv(const double* a, std::size_t rows, std::size_t cols, const double* x,
          double* y);
double residuals(const double* a, std::size_t rows, std::size_t cols,
                 const double* x, const double* rhs, double* out);
}  // namespace scalar

namespace avx2 {
double dot(const double* x, const double* y, std::size_t n);
double squared_norm(const double* x, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void gemv(const double* a, std::size_t rows, std::size_t cols, const double* x,
          double* y);
double residuals(const double* a, std::size_t rows, std::size_t cols,
                 const double* x, const double* rhs, double* out);
}  // namespace avx2

namespace neon {
double dot(const double* x, const double* y, std::size_t n);
double squared_norm(const double* x, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void gemv(const double* a, std::size_t rows, std::size_t cols, const double* x,
          double* y);
double residuals(const double* a, std::size_t rows, std::size_t cols,
                 const double* x, const double* rhs, double* out);
}  // namespace neon

}  // namespace spp::kernels
