// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>

#include "spp/linalg.hpp"
#include "spp/polyhedron.hpp"

namespace spp::testing {

/// {x1 - x2 <= 0, -x1 - x2 <= 0}: the upward cone with apex at the origin.
inline Polyhedron wedge() {
  return Polyhedron(Matrix{{1.0, -1.0}, {-1.0, -1.0}}, Vector{0.0, 0.0});
}

/// Nonnegative orthant of R^n written as -I x <= 0.
inline Polyhedron orthant(std::size_t n) {
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = -1.0;
  return Polyhedron(std::move(a), Vector(n));
}

inline UnitDirection dir(std::initializer_list<double> v) {
  return UnitDirection::normalize(Vector(v));
}

inline double sqrt2() { return std::sqrt(2.0); }

}  // namespace spp::testing
