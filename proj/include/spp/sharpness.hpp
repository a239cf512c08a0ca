// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Sharpness moduli of polyhedra and the KL constants they translate into.
//
//   sr[A, x*] = inf { d(x*, N_A(x)) : x in A, x* not in N_A(x) }
//
// sharpness_lower_bound enumerates every row subset and so ignores which
// active sets occur; sharpness_exact enumerates the active sets of the
// relative interiors of faces, which gives sr itself. Both are reported so
// the gap is visible.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "spp/linalg.hpp"
#include "spp/max_affine.hpp"
#include "spp/polyhedron.hpp"

namespace spp {

/// x* counts as inside cone_J when d(x*, cone_J) <= this (unit-normalized rows).
inline constexpr double kMembershipTol = 1e-9;

struct SharpnessReport {
  UnitDirection direction;
  double alpha_lower = 1.0;
  std::optional<double> alpha_exact;
  std::size_t subsets_examined = 0;
  // No admissible subset: the infimum is over the empty set and the modulus
  // is reported as 1.
  bool vacuous = false;
  std::optional<double> dual_estimate;
  std::size_t samples = 0;
  std::vector<std::size_t> minimizing_rows;  // subset attaining the reported minimum
};

/// min{1, min over all row subsets J with x* not in cone_J of d(x*, cone_J)}.
SharpnessReport sharpness_lower_bound(const Polyhedron& p, const UnitDirection& x_star,
                                      const OracleCaps& caps = {});

/// Exact modulus over the realized active sets; also fills alpha_lower.
SharpnessReport sharpness_exact(const Polyhedron& p, const UnitDirection& x_star,
                                const OracleCaps& caps = {});

/// Sampled upper estimate inf ||x* - y*|| over y* whose exposed face misses
/// F_P(x*). +inf when no sample qualifies. Requires P bounded.
double sharpness_dual_estimate(const Polyhedron& p, const UnitDirection& x_star,
                               std::size_t num_samples, std::uint64_t seed,
                               const OracleCaps& caps = {});

/// beta = alpha / sqrt(1 - alpha^2), alpha in (0,1).
double kl_beta_from_alpha(double alpha);
/// alpha = beta / sqrt(1 + beta^2), beta > 0.
double kl_alpha_from_beta(double beta);

/// KL constant of a max-affine function: the least distance from 0 to the
/// hull of active gradients over all non-minimizing points. Absent when every
/// point is a minimizer.
std::optional<double> pwl_kl_constant(const MaxAffine& f, const OracleCaps& caps = {});

/// Argmax index patterns I realized exactly (I = active pieces at some x).
std::vector<std::vector<std::size_t>> realizable_argmax_patterns(const MaxAffine& f,
                                                                 const OracleCaps& caps = {});

struct IndicatorLinearKl {
  double alpha = 1.0;
  // alpha / sqrt(1 + alpha^2) for the epigraph, only when alpha < 1.
  std::optional<double> epi_alpha;
};

/// KL data of f = indicator_P - <x*, .>.
IndicatorLinearKl indicator_linear_kl(const Polyhedron& p, const UnitDirection& x_star,
                                      const OracleCaps& caps = {});

}  // namespace spp
