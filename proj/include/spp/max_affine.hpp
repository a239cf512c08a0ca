// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "spp/linalg.hpp"

namespace spp {

/// f(x) = max_i <g_i, x> + c_i over a finite, nonempty list of pieces.
class MaxAffine {
 public:
  struct Piece {
    Vector gradient;
    double intercept = 0.0;
  };

  explicit MaxAffine(std::vector<Piece> pieces);

  std::size_t dim() const noexcept { return pieces_.front().gradient.dim(); }
  std::size_t size() const noexcept { return pieces_.size(); }
  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  const Piece& piece(std::size_t i) const { return pieces_.at(i); }

  double value(const Vector& x) const;
  double piece_value(std::size_t i, const Vector& x) const;

  /// Pieces within tol of the maximum at x.
  std::vector<std::size_t> active_pieces(const Vector& x, double tol = 1e-9) const;

 private:
  std::vector<Piece> pieces_;
};

}  // namespace spp
