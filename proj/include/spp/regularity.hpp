// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Metric side of sharpness: the error bound between P and its supporting
// hyperplane F = {<x*, x> = sigma_P(x*)},
//
//   alpha * d(x, F_P(x*)) <= d(x, P)   for x in F,
//
// and the distance upper bound d(b, P) <= ||a - b|| - delta * inf g(x) with
// g(x) = d((b - x)/||b - x||, N_P(x)) over x in P near a. Both infima are
// sampled, never certified.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "spp/linalg.hpp"
#include "spp/polyhedron.hpp"

namespace spp {

struct HyperplaneSample {
  Vector x;
  double d_face = 0.0;
  double d_set = 0.0;
};

/// Points of F within `radius` of the face witness (and of the other face
/// vertices when the face is small enough to enumerate), at log-uniform
/// distances in [1e-3 radius, radius], with both distances computed by
/// projection.
std::vector<HyperplaneSample> hyperplane_samples(const Polyhedron& p, const UnitDirection& x_star,
                                                 double radius, std::size_t count,
                                                 std::uint64_t seed);

struct SubtransReport {
  UnitDirection direction;
  double alpha_sub_est = 1.0;
  double gamma_implied = 0.0;
  double beta_required = 0.0;  // +inf when alpha_sub_est >= 1
  std::size_t samples = 0;     // samples off the face
  double box_radius = 0.0;
  bool vacuous = false;        // every sample landed on the face
};

/// Sampled infimum of d(x,P)/d(x,F_P(x*)) over F, refined by pattern search.
/// Default radius: 10 * max(1, face diameter estimate).
SubtransReport estimate_subtransversality(const Polyhedron& p, const UnitDirection& x_star,
                                          std::optional<double> box_radius,
                                          std::size_t num_samples, std::uint64_t seed);

struct DistBoundReport {
  Vector a;
  Vector b;
  double rho = 0.0;
  double delta = 0.0;
  double sampled_inf = 1.0;
  double epsilon = 0.0;
  double d_bp = 0.0;
  bool verified = false;
  std::size_t samples = 0;
  int resamples = 0;
};

DistBoundReport distance_upper_bound(const Polyhedron& p, const Vector& a, const Vector& b,
                                     double delta, std::size_t num_samples, std::uint64_t seed);

/// gamma = alpha sqrt(1 - alpha^2/4): sharpness implied by an error bound.
double sharpness_from_error_bound(double alpha);
/// beta = 2 alpha/(1 - alpha): sharpness that guarantees an error bound.
double sharpness_for_error_bound(double alpha);
/// alpha' = alpha/(2 + alpha), the error-bound constant recovered from
/// alpha-sharpness (2 alpha'/(1 - alpha') = alpha).
double error_bound_from_sharpness(double alpha);

}  // namespace spp
