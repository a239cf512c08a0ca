// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Seeded quasi-random sampling: a randomly shifted Halton sequence mapped to
// the unit sphere and ball. Reports built on these samples are reproducible
// from (seed, count).

#include <cstddef>
#include <cstdint>
#include <vector>

#include "spp/linalg.hpp"

namespace spp {

class Halton {
 public:
  /// dim <= 32. The seed draws a Cranley-Patterson shift; seed 0 is unshifted.
  Halton(std::size_t dim, std::uint64_t seed);

  /// Next point in (0,1)^dim.
  std::vector<double> next();
  std::size_t dim() const noexcept { return shift_.size(); }

 private:
  std::vector<double> shift_;
  std::uint64_t index_ = 1;
};

/// Quasi-uniform points on the unit sphere in R^n (Box-Muller on Halton pairs).
class SphereSampler {
 public:
  SphereSampler(std::size_t n, std::uint64_t seed);
  UnitDirection next();

 private:
  std::size_t n_;
  Halton halton_;
};

/// Quasi-uniform points in the closed ball B[radius, center].
class BallSampler {
 public:
  BallSampler(const Vector& center, double radius, std::uint64_t seed);
  Vector next();

 private:
  Vector center_;
  double radius_;
  Halton halton_;
};

}  // namespace spp
