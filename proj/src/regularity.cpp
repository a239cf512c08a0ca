// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#include "spp/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dense.hpp"
#include "spp/projection.hpp"
#include "spp/sampling.hpp"

namespace spp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kOnFace = 1e-10;
// The search only accepts points at least this far (relative to the box)
// from the face; closer in, both distances are rounding noise.
constexpr double kSearchFloor = 1e-4;

struct HyperplaneFrame {
  FaceDescription face;
  Polyhedron face_poly;
  std::vector<Vector> basis;    // orthonormal basis of x*-perp
  std::vector<Vector> centers;  // witness first, then face vertices
};

HyperplaneFrame make_frame(const Polyhedron& p, const UnitDirection& x_star) {
  require_same_dim(p.dim(), x_star.dim(), "hyperplane sampling");
  auto face = face_of(p, x_star);
  if (!face) fail(ErrorCode::empty_face, "subtransversality: the exposed face is empty (sup is +inf)");
  Polyhedron fp = face->as_polyhedron();
  HyperplaneFrame frame{*face, fp, {}, {face->witness}};
  const detail::Mat row = detail::to_eigen(x_star.vec()).transpose();
  const detail::Mat ns = detail::null_space_basis(row, p.dim());
  for (Eigen::Index c = 0; c < ns.cols(); ++c) frame.basis.push_back(detail::from_eigen(ns.col(c)));
  try {
    for (auto& v : enumerate_vertices(fp)) {
      if (distance(v, face->witness) > 1e-9) frame.centers.push_back(std::move(v));
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::caps_exceeded) throw;
  }
  return frame;
}

HyperplaneSample measure(const Polyhedron& p, const HyperplaneFrame& frame, Vector x) {
  HyperplaneSample s{std::move(x), 0.0, 0.0};
  s.d_face = distance(s.x, project_polyhedron(frame.face_poly, s.x).proj);
  s.d_set = distance(s.x, project_polyhedron(p, s.x).proj);
  return s;
}

double ratio(const HyperplaneSample& s) {
  return s.d_face > kOnFace ? s.d_set / s.d_face : kInf;
}

std::vector<HyperplaneSample> sample_frame(const Polyhedron& p, const HyperplaneFrame& frame,
                                           double radius, std::size_t count, std::uint64_t seed) {
  std::vector<HyperplaneSample> out;
  out.reserve(count);
  if (frame.basis.empty()) {
    for (std::size_t i = 0; i < count; ++i) out.push_back(measure(p, frame, frame.face.witness));
    return out;
  }
  SphereSampler sphere(frame.basis.size(), seed);
  Halton scale(1, seed + 0x51ed2705ULL);
  for (std::size_t i = 0; i < count; ++i) {
    const UnitDirection dir = sphere.next();
    const double r = radius * std::pow(10.0, -3.0 * scale.next()[0]);
    Vector x = frame.centers[i % frame.centers.size()];
    for (std::size_t k = 0; k < frame.basis.size(); ++k) x.add_scaled(r * dir[k], frame.basis[k]);
    out.push_back(measure(p, frame, std::move(x)));
  }
  return out;
}

void check_unit_interval(double alpha, const char* where) {
  if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorCode::invalid_argument, std::string(where) + ": alpha must lie in (0,1)");
}

}  // namespace

std::vector<HyperplaneSample> hyperplane_samples(const Polyhedron& p, const UnitDirection& x_star,
                                                 double radius, std::size_t count,
                                                 std::uint64_t seed) {
  if (!(radius > 0.0)) fail(ErrorCode::invalid_argument, "hyperplane_samples: radius must be positive");
  return sample_frame(p, make_frame(p, x_star), radius, count, seed);
}

SubtransReport estimate_subtransversality(const Polyhedron& p, const UnitDirection& x_star,
                                          std::optional<double> box_radius,
                                          std::size_t num_samples, std::uint64_t seed) {
  if (num_samples < 10) fail(ErrorCode::invalid_argument, "estimate_subtransversality: need at least 10 samples");
  const HyperplaneFrame frame = make_frame(p, x_star);

  double radius = 0.0;
  if (box_radius) {
    if (!(*box_radius > 0.0)) fail(ErrorCode::invalid_argument, "estimate_subtransversality: radius must be positive");
    radius = *box_radius;
  } else {
    double diameter = 0.0;
    if (is_bounded(frame.face_poly)) {
      for (const auto& c1 : frame.centers)
        for (const auto& c2 : frame.centers) diameter = std::max(diameter, distance(c1, c2));
    } else {
      diameter = frame.face.witness.norm();
    }
    radius = 10.0 * std::max(1.0, diameter);
  }

  SubtransReport out{x_star, 1.0, 0.0, 0.0, 0, radius, false};
  auto samples = sample_frame(p, frame, radius, num_samples, seed);
  std::sort(samples.begin(), samples.end(),
            [](const HyperplaneSample& l, const HyperplaneSample& r) { return ratio(l) < ratio(r); });
  for (const auto& s : samples) {
    if (s.d_face > kOnFace) ++out.samples;
  }
  if (out.samples == 0) {
    out.vacuous = true;
  } else {
    double best = ratio(samples.front());
    // Pattern search along the hyperplane from the three best samples.
    for (std::size_t start = 0; start < std::min<std::size_t>(3, out.samples); ++start) {
      HyperplaneSample cur = samples[start];
      double step = 0.25 * cur.d_face;
      for (int it = 0; it < 60 && step > 1e-9 * radius; ++it) {
        bool improved = false;
        for (const auto& dir : frame.basis) {
          for (double sgn : {1.0, -1.0}) {
            Vector x = cur.x;
            x.add_scaled(sgn * step, dir);
            HyperplaneSample cand = measure(p, frame, std::move(x));
            if (cand.d_face >= kSearchFloor * radius && ratio(cand) < ratio(cur)) {
              cur = std::move(cand);
              improved = true;
            }
          }
        }
        if (!improved) step *= 0.5;
      }
      best = std::min(best, ratio(cur));
    }
    out.alpha_sub_est = std::min(1.0, best);
  }
  out.gamma_implied = out.alpha_sub_est * std::sqrt(1.0 - out.alpha_sub_est * out.alpha_sub_est / 4.0);
  out.beta_required = out.alpha_sub_est < 1.0 ? 2.0 * out.alpha_sub_est / (1.0 - out.alpha_sub_est) : kInf;
  return out;
}

DistBoundReport distance_upper_bound(const Polyhedron& p, const Vector& a, const Vector& b,
                                     double delta, std::size_t num_samples, std::uint64_t seed) {
  require_same_dim(p.dim(), a.dim(), "distance_upper_bound");
  require_same_dim(p.dim(), b.dim(), "distance_upper_bound");
  if (!(delta > 0.0)) fail(ErrorCode::invalid_argument, "distance_upper_bound: delta must be positive");
  if (num_samples == 0) fail(ErrorCode::invalid_argument, "distance_upper_bound: need at least one sample");
  if (!p.contains(a)) fail(ErrorCode::invalid_argument, "distance_upper_bound: a must lie in P");
  if (p.contains(b)) fail(ErrorCode::invalid_argument, "distance_upper_bound: b must lie outside P");

  DistBoundReport out{a, b, distance(a, b), delta, 1.0, 0.0, 0.0, false, 0, 0};
  out.d_bp = distance(b, project_polyhedron(p, b).proj);

  // g(x) for x in B[rho, b] ∩ B(delta, a) ∩ P; nullopt outside the region.
  auto g = [&](const Vector& x) -> std::optional<double> {
    if (p.max_violation(x) > kFeasTol) return std::nullopt;
    if (distance(x, a) >= delta || distance(x, b) > out.rho) return std::nullopt;
    Vector dir = b - x;
    dir *= 1.0 / dir.norm();
    return distance_to_cone(dir, normal_cone_at(p, x)).distance;
  };

  std::vector<std::vector<std::size_t>> faces;
  try {
    faces = exact_active_sets(p);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::caps_exceeded) throw;
  }
  std::vector<Polyhedron> face_polys;
  for (const auto& rows : faces) {
    if (rows.empty()) continue;
    Polyhedron fp = p;
    for (std::size_t i : rows) fp = fp.with_equality(p.normal(i), p.b()[i]);
    face_polys.push_back(std::move(fp));
  }

  auto project_onto = [&](const Polyhedron& q, const Vector& y) -> std::optional<Vector> {
    try {
      return project_polyhedron(q, y).proj;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::infeasible && e.code() != ErrorCode::non_convergence) throw;
      return std::nullopt;
    }
  };

  // Points of the segment from a toward `target`, kept inside the open ball
  // B(delta, a) and optionally pulled back onto a face.
  auto segment = [&](const Vector& target, const Polyhedron* face, std::vector<Vector>& out_pts) {
    const double len = distance(a, target);
    if (len == 0.0) return;
    const double t_max = std::min(1.0, (1.0 - 1e-9) * delta / len);
    for (int k = 1; k <= 16; ++k) {
      const double t = t_max * k / 16.0;
      Vector y = a + t * (target - a);
      if (face) {
        if (auto x = project_onto(*face, y)) out_pts.push_back(std::move(*x));
      } else {
        out_pts.push_back(std::move(y));
      }
    }
  };

  // Targets where g is small: P(b) itself (g = 0 there) and the nearest
  // point of b on every face.
  std::vector<Vector> structured;
  const Vector p_b = project_polyhedron(p, b).proj;
  structured.push_back(p_b);
  segment(p_b, nullptr, structured);
  for (const auto& fp : face_polys) {
    if (auto q = project_onto(fp, b)) {
      structured.push_back(*q);
      segment(*q, &fp, structured);
    }
  }

  // Pattern search inside the region; trial points are projected back onto
  // P and onto the face carrying the current point.
  auto local_search = [&](Vector x, double gx) {
    double step = 0.25 * delta;
    for (int it = 0; it < 200 && step > 1e-10 * delta && gx > 0.0; ++it) {
      const auto rows = active_set(p, x).indices;
      std::optional<Polyhedron> face;
      if (!rows.empty()) {
        face = p;
        for (std::size_t i : rows) face = face->with_equality(p.normal(i), p.b()[i]);
      }
      std::vector<Vector> dirs;
      for (std::size_t i = 0; i < p.dim(); ++i) {
        dirs.push_back(Vector::unit(p.dim(), i));
        dirs.push_back(-Vector::unit(p.dim(), i));
      }
      if (distance(p_b, x) > 0.0) dirs.push_back((p_b - x) * (1.0 / distance(p_b, x)));
      bool improved = false;
      for (const auto& d : dirs) {
        const Vector y = x + step * d;
        std::vector<Vector> cands;
        if (auto c = project_onto(p, y)) cands.push_back(std::move(*c));
        if (face) {
          if (auto c = project_onto(*face, y)) cands.push_back(std::move(*c));
        }
        for (auto& c : cands) {
          if (auto v = g(c); v && *v < gx) {
            x = std::move(c);
            gx = *v;
            improved = true;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    return gx;
  };

  auto run = [&](std::size_t count, std::uint64_t s) {
    std::vector<std::pair<double, Vector>> seen;
    auto consider = [&](const Vector& x) {
      if (auto v = g(x)) seen.emplace_back(*v, x);
    };
    consider(a);
    for (const auto& x : structured) consider(x);
    BallSampler ball(a, delta, s);
    for (std::size_t i = 0; i < count; ++i) {
      const Vector y = ball.next();
      consider(y);
      // Pull the same point onto one face so lower-dimensional pieces of the
      // boundary, where the infimum lives, are hit.
      if (!face_polys.empty()) {
        if (auto x = project_onto(face_polys[i % face_polys.size()], y)) consider(*x);
      }
    }
    out.samples += seen.size();
    std::sort(seen.begin(), seen.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    double best = seen.empty() ? 1.0 : seen.front().first;
    for (std::size_t k = 0; k < std::min<std::size_t>(3, seen.size()); ++k)
      best = std::min(best, local_search(seen[k].second, seen[k].first));
    return best;
  };

  out.sampled_inf = run(num_samples, seed);
  out.epsilon = delta * out.sampled_inf;
  out.verified = out.d_bp <= out.rho - out.epsilon + 1e-7;
  if (!out.verified) {
    // Refutation of the sample: resample once with four times the budget.
    out.resamples = 1;
    out.sampled_inf = std::min(out.sampled_inf, run(4 * num_samples, seed + 1));
    out.epsilon = delta * out.sampled_inf;
    out.verified = out.d_bp <= out.rho - out.epsilon + 1e-7;
  }
  return out;
}

double sharpness_from_error_bound(double alpha) {
  check_unit_interval(alpha, "sharpness_from_error_bound");
  return alpha * std::sqrt(1.0 - alpha * alpha / 4.0);
}

double sharpness_for_error_bound(double alpha) {
  check_unit_interval(alpha, "sharpness_for_error_bound");
  return 2.0 * alpha / (1.0 - alpha);
}

double error_bound_from_sharpness(double alpha) {
  check_unit_interval(alpha, "error_bound_from_sharpness");
  return alpha / (2.0 + alpha);
}

}  // namespace spp
