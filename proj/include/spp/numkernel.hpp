// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Distances to rays, finitely generated cones and convex hulls. These are the
// primitives behind every normal-cone computation in the library.

#include <cstddef>
#include <vector>

#include "spp/linalg.hpp"

namespace spp {

/// Finitely generated convex cone cone[g_1, ..., g_k]. No generators means {0}.
class Cone {
 public:
  explicit Cone(std::size_t dim) : dim_(dim) {}
  Cone(std::size_t dim, std::vector<Vector> generators);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Vector>& generators() const noexcept { return generators_; }
  std::size_t size() const noexcept { return generators_.size(); }
  bool is_trivial() const noexcept { return generators_.empty(); }

  void add(Vector g);

  /// Minkowski sum of two cones (concatenated generators).
  friend Cone operator+(const Cone& a, const Cone& b);

 private:
  std::size_t dim_;
  std::vector<Vector> generators_;
};

/// d(u, cone[v]) for unit u, v: sqrt(1 - max(0, <u,v>)^2).
double distance_to_ray(const UnitDirection& u, const UnitDirection& v);

struct ConeDistance {
  double distance = 0.0;
  std::vector<double> coeffs;  // one nonnegative weight per generator
  int iterations = 0;
};

struct NnlsOptions {
  // Dual feasibility is tested against rel_tol * max(1, ||x||) * max ||g_i||.
  double rel_tol = 1e-12;
  // Outer iterations allowed per generator.
  int iteration_factor = 50;
};

/// min_{t >= 0} ||x - G t|| by Lawson-Hanson active-set NNLS.
ConeDistance distance_to_cone(const Vector& x, const Cone& cone,
                              const NnlsOptions& opts = {});

/// True when d(x, cone) <= tol.
bool cone_contains(const Cone& cone, const Vector& x, double tol);

struct HullDistance {
  double distance = 0.0;
  std::vector<double> weights;  // simplex weights, one per point
  int iterations = 0;
};

/// min over the simplex of ||x - sum_i w_i p_i||. Wolfe's nearest-point
/// method: the equality sum w = 1 is kept exact in every affine subproblem.
HullDistance distance_to_convex_hull(const Vector& x, const std::vector<Vector>& points,
                                     double tol = 1e-12);

}  // namespace spp
