#pragma once

#include <cstdint>

namespace flowpoly {

// Enumeration caps. Exceeding one raises ResourceError naming the cap; no
// operation silently truncates.
struct Limits {
  // Orientation enumeration and Tutte recursion refuse graphs above this.
  int max_edges = 20;
  // Cap on the number of co-tree assignments a flow enumeration may visit.
  std::uint64_t max_enumeration = 10'000'000;
  // Cap on 2^|E| for subset sums and flat enumeration.
  std::uint64_t max_subsets = std::uint64_t{1} << 20;
  // Worker count for the parallel reductions. Results never depend on it.
  int jobs = 1;
};

}  // namespace flowpoly
