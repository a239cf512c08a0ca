// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#include "spp/max_affine.hpp"

#include <cmath>
#include <limits>

namespace spp {

MaxAffine::MaxAffine(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) fail(ErrorCode::invalid_argument, "MaxAffine: empty piece list");
  const std::size_t n = pieces_.front().gradient.dim();
  if (n == 0) fail(ErrorCode::invalid_argument, "MaxAffine: zero-dimensional gradient");
  for (const auto& p : pieces_) {
    require_same_dim(n, p.gradient.dim(), "MaxAffine");
    if (!std::isfinite(p.intercept)) fail(ErrorCode::non_finite, "MaxAffine: non-finite intercept");
  }
}

double MaxAffine::piece_value(std::size_t i, const Vector& x) const {
  const Piece& p = piece(i);
  return p.gradient.dot(x) + p.intercept;
}

double MaxAffine::value(const Vector& x) const {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pieces_.size(); ++i) best = std::max(best, piece_value(i, x));
  return best;
}

std::vector<std::size_t> MaxAffine::active_pieces(const Vector& x, double tol) const {
  const double top = value(x);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    if (piece_value(i, x) >= top - tol) out.push_back(i);
  return out;
}

}  // namespace spp
