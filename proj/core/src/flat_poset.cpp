#include "flowpoly/flat_poset.hpp"

#include <algorithm>
#include <set>

#include "flowpoly/errors.hpp"
#include "parallel.hpp"

namespace flowpoly {

FlatPoset FlatPoset::build(const MultiGraph& g, const Limits& limits) {
  const int m = g.edge_count();
  if (m >= 63 || (std::uint64_t{1} << m) > limits.max_subsets) {
    throw ResourceError("flat enumeration needs 2^|E| <= max_subsets (" +
                        std::to_string(limits.max_subsets) + "), graph has " +
                        std::to_string(m) + " edges");
  }
  const std::uint64_t total = std::uint64_t{1} << m;
  const EdgeSubset all = g.all_edges();
  auto chunks = detail::parallel_chunks<std::set<std::uint64_t>>(
      total, limits.jobs, [&](std::uint64_t begin, std::uint64_t end) {
        std::set<std::uint64_t> keys;
        for (std::uint64_t x = begin; x < end; ++x) {
          keys.insert(cyclic_part(g, all - EdgeSubset(m, x)).mask());
        }
        return keys;
      });
  std::set<std::uint64_t> keys;
  for (auto& c : chunks) keys.merge(c);

  FlatPoset poset;
  poset.bridgeless_ = cyclic_part(g) == all;
  for (std::uint64_t k : keys) {
    const EdgeSubset key(m, k);
    poset.flats_.push_back({key, cycle_rank_of(g, key), 0});
  }
  std::sort(poset.flats_.begin(), poset.flats_.end(), [](const Flat& a, const Flat& b) {
    if (a.key.size() != b.key.size()) return a.key.size() > b.key.size();
    return a.key.mask() < b.key.mask();
  });
  if (!(poset.flats_.front().key == cyclic_part(g))) {
    throw InvariantViolation("largest flat is not keyed by the cyclic part of G");
  }

  // mu(top, top) = 1; mu(x, top) = -sum_{x < z <= top} mu(z, top). Every
  // strict upper bound of x has a larger key, so it precedes x.
  auto& flats = poset.flats_;
  flats[0].mobius_to_top = 1;
  for (std::size_t i = 1; i < flats.size(); ++i) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < i; ++j) {
      if (flats[i].key.is_subset_of(flats[j].key)) s += flats[j].mobius_to_top;
    }
    flats[i].mobius_to_top = -s;
  }
  return poset;
}

RationalPoly FlatPoset::characteristic_polynomial() const {
  RationalPoly chi;
  // A bridge lies in every flow, so its hyperplane is the whole space.
  if (!bridgeless_) return chi;
  for (const Flat& f : flats_) {
    chi += RationalPoly::monomial(Rational(f.mobius_to_top), f.rank);
  }
  return chi;
}

std::int64_t FlatPoset::mobius_interval_sum(std::size_t x) const {
  std::int64_t s = 0;
  for (const Flat& z : flats_) {
    if (flats_.at(x).key.is_subset_of(z.key)) s += z.mobius_to_top;
  }
  return s;
}

}  // namespace flowpoly
