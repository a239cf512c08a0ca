// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <cstring>

#include "spp/kernels.hpp"

namespace spp::kernels {

namespace {

constexpr KernelTable kScalar{scalar::dot, scalar::squared_norm, scalar::axpy, scalar::gemv,
                              scalar::residuals};
constexpr KernelTable kAvx2{avx2::dot, avx2::squared_norm, avx2::axpy, avx2::gemv,
                            avx2::residuals};
constexpr KernelTable kNeon{neon::dot, neon::squared_norm, neon::axpy, neon::gemv,
                            neon::residuals};

bool cpu_has_avx2() noexcept {
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() noexcept {
  if (const char* forced = std::getenv("SPP_ISA")) {
    if (std::strcmp(forced, "scalar") == 0) return Isa::scalar;
    if (std::strcmp(forced, "avx2") == 0 && isa_available(Isa::avx2)) return Isa::avx2;
    if (std::strcmp(forced, "neon") == 0 && isa_available(Isa::neon)) return Isa::neon;
  }
  if (isa_available(Isa::avx2)) return Isa::avx2;
  if (isa_available(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
    case Isa::scalar:
      break;
  }
  return "scalar";
}

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
      return cpu_has_avx2();
    case Isa::neon:
#if defined(__aarch64__) || defined(_M_ARM64)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Isa isa) noexcept {
  if (!isa_available(isa)) return kScalar;
  switch (isa) {
    case Isa::avx2:
      return kAvx2;
    case Isa::neon:
      return kNeon;
    case Isa::scalar:
      break;
  }
  return kScalar;
}

Isa active_isa() noexcept {
  static const Isa isa = detect();
  return isa;
}

const KernelTable& active() noexcept {
  static const KernelTable& t = table(active_isa());
  return t;
}

}  // namespace spp::kernels
