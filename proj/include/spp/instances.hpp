// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Seeded random instances for tests, benchmarks and the `gen` command.

#include <cstddef>
#include <cstdint>
#include <random>

#include "spp/linalg.hpp"
#include "spp/max_affine.hpp"
#include "spp/polyhedron.hpp"

namespace spp {

using Rng = std::mt19937_64;

UnitDirection random_direction(std::size_t n, Rng& rng);

/// Bounded polyhedron with m >= n + 1 random unit normals around a random
/// center in [-1,1]^n; offsets in [0.2, 1.2]. Rejection-samples until bounded.
Polyhedron random_bounded_polyhedron(std::size_t n, std::size_t m, Rng& rng);

/// Polyhedron with m random rows (possibly unbounded), center feasible.
Polyhedron random_polyhedron(std::size_t n, std::size_t m, Rng& rng);

/// Max-affine function with gradients in [-2,2]^n and intercepts in [-1,1].
MaxAffine random_max_affine(std::size_t n, std::size_t pieces, Rng& rng);

/// [lo, hi]^n.
Polyhedron box(std::size_t n, double lo, double hi);

/// Random convex combination of the vertices of P (exactly feasible up to
/// rounding); a phase-1 point when P has no vertices.
Vector random_feasible_point(const Polyhedron& p, Rng& rng);

}  // namespace spp
