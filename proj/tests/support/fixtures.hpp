#pragma once

// Shared hand-checkable colorings.

#include "tripal/core.hpp"

namespace fixtures {

// General (non-proper) coloring of K_4 over color ids {1,2,3} with k=4.
// Its four triangle multisets [1,1,1], [1,2,3], [1,1,2], [1,1,3] are
// pairwise distinct, so it distinguishes by multisets and by sets with
// only three colors in use.
inline tripal::EdgeColoring k4_general_witness() {
  return tripal::EdgeColoring(4, 4, {1, 1, 1, 2, 3, 1});
}

inline tripal::EdgeColoring monochromatic(int n) {
  return tripal::EdgeColoring(
      n, 1, std::vector<tripal::Color>(static_cast<std::size_t>(tripal::edge_count(n)), 0));
}

}  // namespace fixtures
