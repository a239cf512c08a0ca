// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <set>
#include <vector>

namespace spp::detail {

/// All subsets of {0..m-1} accepted by `pred`, assuming the accepted family is
/// closed under taking subsets. Breadth-first by size; a candidate is only
/// tested when all of its one-smaller subsets were accepted. The empty set is
/// tested first and nothing is returned if it is rejected.
inline std::vector<std::vector<std::size_t>> downward_closed_family(
    std::size_t m, const std::function<bool(const std::vector<std::size_t>&)>& pred) {
  std::vector<std::vector<std::size_t>> out;
  if (!pred({})) return out;
  out.push_back({});
  std::set<std::vector<std::size_t>> level{{}};
  while (!level.empty()) {
    std::set<std::vector<std::size_t>> next;
    for (const auto& j : level) {
      const std::size_t start = j.empty() ? 0 : j.back() + 1;
      for (std::size_t i = start; i < m; ++i) {
        std::vector<std::size_t> cand = j;
        cand.push_back(i);
        bool closed = true;
        for (std::size_t drop = 0; drop + 1 < cand.size() && closed; ++drop) {
          std::vector<std::size_t> sub;
          for (std::size_t k = 0; k < cand.size(); ++k)
            if (k != drop) sub.push_back(cand[k]);
          closed = level.count(sub) > 0;
        }
        if (closed && pred(cand)) next.insert(cand);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

}  // namespace spp::detail
