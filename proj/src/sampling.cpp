// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#include "spp/sampling.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>

namespace spp {

namespace {

constexpr std::array<std::uint32_t, 32> kPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23,  29,  31,
                                                   37, 41, 43, 47, 53, 59, 61, 67, 71,  73,  79,
                                                   83, 89, 97, 101, 103, 107, 109, 113, 127, 131};

double radical_inverse(std::uint64_t i, std::uint32_t base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

// Maps u in (0,1)^(2k) to 2k independent standard normals.
std::vector<double> gaussians(const std::vector<double>& u) {
  std::vector<double> g(u.size());
  for (std::size_t i = 0; i + 1 < u.size(); i += 2) {
    const double r = std::sqrt(-2.0 * std::log(u[i]));
    const double th = 2.0 * std::numbers::pi * u[i + 1];
    g[i] = r * std::cos(th);
    g[i + 1] = r * std::sin(th);
  }
  return g;
}

std::size_t even_dim(std::size_t n) { return n + (n % 2); }

}  // namespace

Halton::Halton(std::size_t dim, std::uint64_t seed) : shift_(dim, 0.0) {
  if (dim == 0 || dim > kPrimes.size()) fail(ErrorCode::invalid_argument, "Halton: dim must be in [1, 32]");
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (double& s : shift_) s = unif(rng);
  }
}

std::vector<double> Halton::next() {
  std::vector<double> out(shift_.size());
  for (std::size_t d = 0; d < out.size(); ++d) {
    double v = radical_inverse(index_, kPrimes[d]) + shift_[d];
    if (v >= 1.0) v -= 1.0;
    // Keep strictly inside (0,1) for the logarithm in Box-Muller.
    out[d] = std::min(std::max(v, 1e-300), 1.0 - 1e-16);
  }
  ++index_;
  return out;
}

SphereSampler::SphereSampler(std::size_t n, std::uint64_t seed)
    : n_(n), halton_(even_dim(n), seed) {}

UnitDirection SphereSampler::next() {
  while (true) {
    const auto g = gaussians(halton_.next());
    Vector v(std::vector<double>(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(n_)));
    if (v.norm() > 1e-12) return UnitDirection::normalize(v);
  }
}

BallSampler::BallSampler(const Vector& center, double radius, std::uint64_t seed)
    : center_(center), radius_(radius), halton_(even_dim(center.dim()) + 1, seed) {
  if (!(radius >= 0.0)) fail(ErrorCode::invalid_argument, "BallSampler: negative radius");
}

Vector BallSampler::next() {
  const std::size_t n = center_.dim();
  while (true) {
    auto u = halton_.next();
    const double radial = u.back();
    u.pop_back();
    const auto g = gaussians(u);
    Vector v(std::vector<double>(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(n)));
    const double len = v.norm();
    if (len <= 1e-12) continue;
    v *= radius_ * std::pow(radial, 1.0 / static_cast<double>(n)) / len;
    return center_ + v;
  }
}

}  // namespace spp
