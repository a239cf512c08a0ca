// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Exhaustive LP solver over raw dense data:
//   min c^T x  s.t.  A x <= b,  E x = e.
// Equalities are eliminated by a null-space parametrization, the lineality
// space of the inequality system is projected out, and the remaining pointed
// polyhedron is solved by enumerating vertices and extreme rays.

#include <optional>

#include "dense.hpp"
#include "spp/polyhedron.hpp"

namespace spp::detail {

struct RawLp {
  Mat a;  // m x n (m may be 0)
  Vec b;
  Mat eq_a;  // k x n (k may be 0)
  Vec eq_b;
  Vec c;  // n
};

struct RawLpSolution {
  LpStatus status = LpStatus::infeasible;
  Vec x;
  double value = 0.0;
  Vec ray;
};

RawLpSolution solve_enumerated(const RawLp& lp, double feas_tol = kFeasTol);

/// Largest t <= cap such that some x has E x = e and A x + t <= b.
/// Returns nullopt when even t = -inf is infeasible (equalities inconsistent).
std::optional<double> max_uniform_slack(const Mat& a, const Vec& b, const Mat& eq_a,
                                        const Vec& eq_b, double cap = 1.0,
                                        Vec* point = nullptr);

}  // namespace spp::detail
