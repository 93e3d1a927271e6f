#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flowpoly/limits.hpp"
#include "flowpoly/multigraph.hpp"

namespace flowpoly {

// One direction bit per edge. Bit 0 sends the edge from its first listed
// endpoint to its second; bit 1 reverses it. Loops carry a bit too, so a
// graph has exactly 2^|E| orientations.
class Orientation {
 public:
  Orientation() = default;
  explicit Orientation(int edge_count, std::uint64_t reversed_mask = 0);

  // From the wire format: a string over {0,1}, character i = edge i.
  static Orientation parse(std::string_view bits);
  // The k-th orientation in lexicographic bitstring order.
  static Orientation from_lex_rank(int edge_count, std::uint64_t rank);

  int edge_count() const noexcept { return edge_count_; }
  std::uint64_t mask() const noexcept { return mask_; }
  bool reversed(int e) const noexcept { return (mask_ >> e) & 1U; }

  int source(const MultiGraph& g, int e) const;
  int target(const MultiGraph& g, int e) const;
  // Incidence sign: +1 if e leaves v, -1 if it enters v, 0 otherwise.
  // Loops contribute 0.
  int sign_at(const MultiGraph& g, int v, int e) const;

  Orientation flipped(const EdgeSubset& x) const;
  Orientation reversal() const;

  std::uint64_t lex_rank() const noexcept;
  std::string to_string() const;

  friend bool operator==(const Orientation&, const Orientation&) = default;
  // Lexicographic order of the bitstrings.
  friend bool operator<(const Orientation& a, const Orientation& b) {
    return a.lex_rank() < b.lex_rank();
  }

 private:
  int edge_count_ = 0;
  std::uint64_t mask_ = 0;
};

using CouplingVector = std::vector<int>;

// All 2^|E| orientations in lexicographic order. Throws ResourceError when
// |E| exceeds limits.max_edges.
std::vector<Orientation> enumerate_orientations(const MultiGraph& g,
                                                const Limits& limits = {});
void for_each_orientation(const MultiGraph& g, const Limits& limits,
                          const std::function<void(const Orientation&)>& fn);

// [rho, sigma]: +1 where the bits agree, -1 where they differ.
CouplingVector coupling(const Orientation& rho, const Orientation& sigma);

// P_{rho,sigma} f = [rho, sigma] * f entrywise.
std::vector<std::int64_t> apply_P(const Orientation& rho,
                                  const Orientation& sigma,
                                  std::span<const std::int64_t> f);

// Q_{rho,sigma} g: g(e) where the bits agree, q - g(e) where they differ.
// Entries must lie in [0, q].
std::vector<std::int64_t> apply_Q(const Orientation& rho,
                                  const Orientation& sigma,
                                  std::span<const std::int64_t> g,
                                  std::int64_t q);

// rho_f: keeps rho's direction where f > 0 and reverses it where f <= 0.
Orientation induced_orientation(const Orientation& rho,
                                std::span<const std::int64_t> f);

// I_{rho,sigma}: 1 exactly where the bits differ.
std::vector<int> symmetric_difference(const Orientation& rho,
                                      const Orientation& sigma);
EdgeSubset difference_set(const Orientation& rho, const Orientation& sigma);

bool is_directed_eulerian(const MultiGraph& g, const Orientation& rho,
                          const EdgeSubset& x);

struct DirectedCut {
  std::vector<int> side;  // S, ascending; every cut edge points out of S
  EdgeSubset edges;       // [S, S^c]
};

bool is_totally_cyclic(const MultiGraph& g, const Orientation& rho);
std::optional<DirectedCut> find_directed_cut(const MultiGraph& g,
                                             const Orientation& rho);

bool eulerian_equivalent(const MultiGraph& g, const Orientation& rho,
                         const Orientation& sigma);

struct OrientationClass {
  Orientation representative;  // lexicographically least member
  std::vector<Orientation> members;  // lexicographic order
  bool totally_cyclic = false;
};

// The Eulerian class of eps, built from the 0-1 flows of (g, eps).
OrientationClass eulerian_class(const MultiGraph& g, const Orientation& eps,
                                const Limits& limits = {});

// Partition of all orientations (or only the totally cyclic ones) into
// Eulerian classes, ordered by representative.
std::vector<OrientationClass> eulerian_classes(const MultiGraph& g,
                                               bool only_totally_cyclic,
                                               const Limits& limits = {});

std::vector<Orientation> totally_cyclic_orientations(const MultiGraph& g,
                                                     const Limits& limits = {});
std::uint64_t count_totally_cyclic(const MultiGraph& g,
                                   const Limits& limits = {});

}  // namespace flowpoly
