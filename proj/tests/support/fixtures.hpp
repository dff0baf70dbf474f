#pragma once

// Shared synthetic datasets for the test suites.

#include <cstdint>
#include <vector>

#include "adasvm/dataset.hpp"
#include "adasvm/rng.hpp"

namespace adasvm::testing {

// x = [0, 1], labels [-1, +1] (or flipped): one stump separates it.
inline Dataset separable_pair(bool flipped = false) {
  Dataset d;
  d.name = "pair";
  d.features = Matrix(2, 1);
  d.features(0, 0) = 0.0;
  d.features(1, 0) = 1.0;
  d.labels = flipped ? std::vector<int>{+1, -1} : std::vector<int>{-1, +1};
  return d;
}

// Four points on one informative axis with alternating labels. The best
// single stump errs on exactly one point (weighted error 0.25 under
// uniform weights) and boosting reaches zero training error within a few
// rounds. The second feature is constant noise.
inline Dataset four_point_interleaved() {
  Dataset d;
  d.name = "interleaved4";
  d.features = Matrix(4, 2);
  for (std::size_t i = 0; i < 4; ++i) {
    d.features(i, 0) = static_cast<double>(i);
    d.features(i, 1) = 0.0;
  }
  d.labels = {-1, +1, -1, +1};
  return d;
}

// Random dense dataset with both classes present. Feature values come from
// a small integer grid, so ties between stump candidates are common.
inline Dataset random_grid_dataset(SplitMix64& rng, std::size_t n, std::size_t m,
                                   int grid = 4) {
  Dataset d;
  d.name = "random";
  d.features = Matrix(n, m);
  d.labels.resize(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < m; ++c) {
        d.features(i, c) = static_cast<double>(rng.next_below(static_cast<std::uint64_t>(grid)));
      }
      d.labels[i] = rng.next_below(2) == 0 ? -1 : +1;
    }
    if (d.count_label(+1) > 0 && d.count_label(-1) > 0) break;
  }
  return d;
}

// Labels decided by a threshold on feature 0 (with all values distinct),
// so a single stump fits it exactly.
inline Dataset stump_separable_dataset(SplitMix64& rng, std::size_t n) {
  Dataset d;
  d.name = "stumpsep";
  d.features = Matrix(n, 2);
  d.labels.resize(n);
  const std::size_t cut = 1 + rng.next_below(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    d.features(i, 0) = static_cast<double>(i) + rng.next_double() * 0.5;
    d.features(i, 1) = rng.next_double();
    d.labels[i] = i < cut ? -1 : +1;
  }
  return d;
}

}  // namespace adasvm::testing
