// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Polyhedra {x : A x <= b}, their active sets and normal cones, and the
// exhaustive enumeration oracles (vertex-enumeration LP, face-enumeration
// projection) that serve as ground truth for the fast paths.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "spp/linalg.hpp"
#include "spp/numkernel.hpp"

namespace spp {

inline constexpr double kDefaultActiveTol = 1e-8;
inline constexpr double kFeasTol = 1e-9;

/// Feasibility slack for a point computed from data of magnitude `scale`;
/// rounding grows with the input, so the gate is relative past 1e4.
inline double feas_tol_at_scale(double scale) { return std::max(kFeasTol, 1e-13 * scale); }

/// Oracle size limits (enumeration is exponential).
struct OracleCaps {
  std::size_t max_rows = 24;
  std::size_t max_dim = 10;
  std::size_t max_subset_rows = 20;  // 2^m enumerations
};

/// {x : A x <= b}. Rows are scaled to unit norm at construction and b is
/// rescaled with them; the original row norms are kept in `row_scale()`.
class Polyhedron {
 public:
  Polyhedron(Matrix a, Vector b);

  std::size_t rows() const noexcept { return a_.rows(); }
  std::size_t dim() const noexcept { return a_.cols(); }
  const Matrix& a() const noexcept { return a_; }
  const Vector& b() const noexcept { return b_; }
  const std::vector<double>& row_scale() const noexcept { return scale_; }

  Vector normal(std::size_t i) const { return a_.row_vector(i); }

  /// <a_i, x> - b_i for every row.
  Vector slacks(const Vector& x) const;
  /// max_i (<a_i, x> - b_i); -inf for no rows.
  double max_violation(const Vector& x) const;
  bool contains(const Vector& x, double tol = kFeasTol) const {
    return max_violation(x) <= tol;
  }

  /// Copy with extra rows appended (also normalized).
  Polyhedron with_rows(const Matrix& extra_a, const Vector& extra_b) const;
  /// Copy with <c, x> = value appended as the pair <c,x> <= value, -<c,x> <= -value.
  Polyhedron with_equality(const Vector& c, double value) const;

 private:
  Polyhedron(Matrix a, Vector b, std::vector<double> scale)
      : a_(std::move(a)), b_(std::move(b)), scale_(std::move(scale)) {}

  Matrix a_;
  Vector b_;
  std::vector<double> scale_;
};

/// Rows of P within tol of equality at a witness point (the set I(x)).
struct ActiveSet {
  std::vector<std::size_t> indices;  // sorted
  Vector at;
  double tol = kDefaultActiveTol;

  bool contains(std::size_t i) const;
};

ActiveSet active_set(const Polyhedron& p, const Vector& x, double tol = kDefaultActiveTol);

/// N_P(x) = cone of active row normals; {0} at interior points.
Cone normal_cone_at(const Polyhedron& p, const Vector& x, double tol = kDefaultActiveTol);

/// Cone generated by a chosen subset of rows.
Cone row_cone(const Polyhedron& p, const std::vector<std::size_t>& rows);

enum class LpStatus { optimal, unbounded, infeasible };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  std::optional<Vector> x_opt;
  std::optional<double> value;
  std::optional<ActiveSet> vertex_active_set;
  std::optional<Vector> ray;  // descent ray when unbounded
};

/// min <c, x> over P by exhaustive vertex enumeration. Ties between equal
/// objective values are broken by the lexicographically smallest vertex.
LpResult lp_solve_enumeration(const Polyhedron& p, const Vector& c,
                              const OracleCaps& caps = {});

/// A ray r with A r <= 0 and <c, r> < 0, if one exists.
std::optional<Vector> find_descent_ray(const Polyhedron& p, const Vector& c);

/// Phase-1: a point of P, or nullopt when P is empty. Solves
/// min s s.t. A x - s <= b, s >= -1 by the same enumeration.
std::optional<Vector> find_feasible_point(const Polyhedron& p);
bool is_feasible(const Polyhedron& p);

/// True when every coordinate is bounded above and below over P.
bool is_bounded(const Polyhedron& p);

struct BruteProjection {
  Vector proj;
  ActiveSet active;
  std::vector<double> multipliers;  // length m, zero off the support
};

/// Exact projection by enumerating every linearly independent row subset of
/// size <= n and keeping the KKT-consistent candidate.
BruteProjection project_brute(const Polyhedron& p, const Vector& z,
                              const OracleCaps& caps = {});

/// sigma_P(v) = sup_{y in P} <v, y>; +inf when unbounded.
double support_function(const Polyhedron& p, const Vector& v, const OracleCaps& caps = {});

/// Exposed face F_P(x*) = argmax_P <x*, .>.
struct FaceDescription {
  Polyhedron base;
  Vector direction;
  double optimal_value = 0.0;
  std::vector<std::size_t> equalities;  // rows of base equal to b on the whole face
  Vector witness;

  /// base with <direction, x> = optimal_value appended.
  Polyhedron as_polyhedron() const { return base.with_equality(direction, optimal_value); }
};

std::optional<FaceDescription> face_of(const Polyhedron& p, const UnitDirection& x_star,
                                       const OracleCaps& caps = {});

/// True when two faces of the same polyhedron share a point.
bool faces_intersect(const FaceDescription& f1, const FaceDescription& f2);

/// Index sets J such that some x in P has all rows of J active
/// (I(x) contains J). Always contains the empty set when P is nonempty.
std::vector<std::vector<std::size_t>> realizable_active_sets(const Polyhedron& p,
                                                             const OracleCaps& caps = {});

/// Index sets J with I(x) == J for some x in P: the active sets of the
/// relative interiors of the nonempty faces.
std::vector<std::vector<std::size_t>> exact_active_sets(const Polyhedron& p,
                                                        const OracleCaps& caps = {});

/// Vertices of P (rows of a full-rank-column polyhedron only; empty when P
/// has a nontrivial lineality space).
std::vector<Vector> enumerate_vertices(const Polyhedron& p, const OracleCaps& caps = {});

}  // namespace spp
