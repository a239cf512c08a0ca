// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Euclidean projection onto polyhedra and onto lifted epigraphs of
// max-affine functions, with a normal-cone certificate on every result.

#include <cstddef>
#include <vector>

#include "spp/linalg.hpp"
#include "spp/max_affine.hpp"
#include "spp/polyhedron.hpp"

namespace spp {

struct ProjectionOptions {
  double kkt_tol = 1e-9;
  double active_tol = kDefaultActiveTol;
  // Fall back to the enumeration projector when the active-set solver fails
  // and the instance is within `caps`.
  bool allow_fallback = true;
  OracleCaps caps{};
  // 0 selects 50 * (m + n) + 100.
  int max_iterations = 0;
};

struct ProjectionResult {
  Vector proj;
  // d((z - proj)/||z - proj||, N_P(proj)); 0 when ||z - proj|| is below
  // 1e-10 * max(1, ||z||), where the direction is pure rounding noise.
  double residual_normal = 0.0;
  ActiveSet active;
  std::vector<double> multipliers;  // length m
  int iterations = 0;
  bool used_fallback = false;
};

/// Closed-form projection onto {x : <normal, x> <= offset}.
Vector project_halfspace(const Vector& z, const Vector& normal, double offset);

/// Goldfarb-Idnani dual active-set method for min ||x - z|| over P.
ProjectionResult project_polyhedron(const Polyhedron& p, const Vector& z,
                                    const ProjectionOptions& opts = {});

/// Residual certificate of a candidate projection.
double projection_residual(const Polyhedron& p, const Vector& z, const Vector& proj,
                           double active_tol = kDefaultActiveTol);

/// {(x, s) : x in P, f(x) <= s} as a polyhedron in dimension n + 1. The first
/// `base_rows` rows are P's rows with a zero s-coefficient; row base_rows + j
/// is <g_j, x> - s <= -c_j.
struct LiftedEpigraph {
  Polyhedron poly;
  std::size_t base_rows = 0;
  std::size_t pieces = 0;
};

LiftedEpigraph lift_epigraph(const Polyhedron& p, const MaxAffine& f);

/// Projection of (v, t) onto the lifted epigraph.
ProjectionResult project_epigraph(const Polyhedron& p, const MaxAffine& f, const Vector& point,
                                  const ProjectionOptions& opts = {});

}  // namespace spp
