// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#include "spp/instances.hpp"

namespace spp {

namespace {

Vector gaussian_vector(std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  while (true) {
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = normal(rng);
    if (v.norm() > 1e-3) return v;
  }
}

Polyhedron around_center(std::size_t n, std::size_t m, Rng& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> offset(0.2, 1.2);
  Vector center(n);
  for (std::size_t i = 0; i < n; ++i) center[i] = unit(rng);
  Matrix a(m, n);
  Vector b(m);
  for (std::size_t r = 0; r < m; ++r) {
    const Vector g = UnitDirection::normalize(gaussian_vector(n, rng)).vec();
    for (std::size_t c = 0; c < n; ++c) a(r, c) = g[c];
    b[r] = g.dot(center) + offset(rng);
  }
  return Polyhedron(std::move(a), std::move(b));
}

}  // namespace

UnitDirection random_direction(std::size_t n, Rng& rng) {
  return UnitDirection::normalize(gaussian_vector(n, rng));
}

Polyhedron random_bounded_polyhedron(std::size_t n, std::size_t m, Rng& rng) {
  if (m < n + 1) fail(ErrorCode::invalid_argument, "random_bounded_polyhedron: need m >= n + 1");
  for (int attempt = 0; attempt < 100000; ++attempt) {
    Polyhedron p = around_center(n, m, rng);
    if (is_bounded(p)) return p;
  }
  fail(ErrorCode::non_convergence, "random_bounded_polyhedron: no bounded draw");
}

Polyhedron random_polyhedron(std::size_t n, std::size_t m, Rng& rng) {
  if (m == 0 || n == 0) fail(ErrorCode::invalid_argument, "random_polyhedron: empty shape");
  return around_center(n, m, rng);
}

MaxAffine random_max_affine(std::size_t n, std::size_t pieces, Rng& rng) {
  std::uniform_real_distribution<double> grad(-2.0, 2.0);
  std::uniform_real_distribution<double> icpt(-1.0, 1.0);
  std::vector<MaxAffine::Piece> out;
  for (std::size_t k = 0; k < pieces; ++k) {
    Vector g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = grad(rng);
    out.push_back({std::move(g), icpt(rng)});
  }
  return MaxAffine(std::move(out));
}

Polyhedron box(std::size_t n, double lo, double hi) {
  if (!(lo <= hi)) fail(ErrorCode::invalid_argument, "box: lo > hi");
  Matrix a(2 * n, n);
  Vector b(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    a(2 * i, i) = 1.0;
    b[2 * i] = hi;
    a(2 * i + 1, i) = -1.0;
    b[2 * i + 1] = -lo;
  }
  return Polyhedron(std::move(a), std::move(b));
}

Vector random_feasible_point(const Polyhedron& p, Rng& rng) {
  const auto vertices = enumerate_vertices(p);
  if (vertices.empty()) {
    auto x = find_feasible_point(p);
    if (!x) fail(ErrorCode::infeasible, "random_feasible_point: polyhedron is empty");
    return *x;
  }
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(vertices.size());
  double total = 0.0;
  for (double& x : w) total += (x = expo(rng));
  Vector out(p.dim());
  for (std::size_t k = 0; k < vertices.size(); ++k) out.add_scaled(w[k] / total, vertices[k]);
  return out;
}

}  // namespace spp
