#pragma once

#include <cstdint>
#include <vector>

#include "flowpoly/limits.hpp"
#include "flowpoly/multigraph.hpp"
#include "flowpoly/polynomial.hpp"

namespace flowpoly {

// The intersection semilattice of the flow arrangement {F_e}. The flat
// F_X = {f : f|_X = 0} is the flow space of <E - X>, which is determined
// by the cyclic part of <E - X>; that edge set keys the flat. Inclusion of
// flats is inclusion of keys.
struct Flat {
  EdgeSubset key;
  int rank = 0;                  // n<key>, the rank of F_X as a group
  std::int64_t mobius_to_top = 0;  // mu(F_X, F)
};

class FlatPoset {
 public:
  // Enumerates all 2^|E| subsets; throws ResourceError above
  // limits.max_subsets.
  static FlatPoset build(const MultiGraph& g, const Limits& limits = {});

  // Sorted by key size descending, then by mask; flats()[0] is the top.
  const std::vector<Flat>& flats() const noexcept { return flats_; }
  const Flat& top() const { return flats_.front(); }

  // sum_x mu(x, top) t^rank(x); zero when the graph has a bridge.
  RationalPoly characteristic_polynomial() const;

  // sum over x <= z <= top of mu(z, top); zero for every x below the top.
  std::int64_t mobius_interval_sum(std::size_t x) const;

 private:
  std::vector<Flat> flats_;
  bool bridgeless_ = true;
};

}  // namespace flowpoly
