#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace flowpoly {

// Bitsets over edge indices are single machine words.
inline constexpr int kMaxEdges = 64;

struct Edge {
  int tail = 0;
  int head = 0;

  bool is_loop() const noexcept { return tail == head; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

// A subset of the edge indices {0, ..., universe - 1}.
class EdgeSubset {
 public:
  EdgeSubset() = default;
  explicit EdgeSubset(int universe, std::uint64_t mask = 0);

  static EdgeSubset full(int universe);
  static EdgeSubset of(int universe, std::initializer_list<int> edges);

  int universe() const noexcept { return universe_; }
  std::uint64_t mask() const noexcept { return mask_; }
  int size() const noexcept { return std::popcount(mask_); }
  bool empty() const noexcept { return mask_ == 0; }

  bool contains(int e) const noexcept { return (mask_ >> e) & 1U; }
  void insert(int e) noexcept { mask_ |= std::uint64_t{1} << e; }
  void erase(int e) noexcept { mask_ &= ~(std::uint64_t{1} << e); }

  bool is_subset_of(const EdgeSubset& other) const noexcept {
    return (mask_ & ~other.mask_) == 0;
  }
  EdgeSubset complement() const;
  std::vector<int> indices() const;

  friend EdgeSubset operator|(EdgeSubset a, const EdgeSubset& b);
  friend EdgeSubset operator&(EdgeSubset a, const EdgeSubset& b);
  friend EdgeSubset operator-(EdgeSubset a, const EdgeSubset& b);
  friend bool operator==(const EdgeSubset&, const EdgeSubset&) = default;

 private:
  int universe_ = 0;
  std::uint64_t mask_ = 0;
};

// Vertices plus an ordered edge list. Loops and parallel edges are allowed;
// an edge is identified by its position in the list.
class MultiGraph {
 public:
  MultiGraph() = default;
  // Throws DomainError on duplicate labels or dangling endpoints, and
  // ResourceError above kMaxEdges edges.
  MultiGraph(std::vector<std::string> labels, std::vector<Edge> edges);

  // Vertices labelled "0", "1", ...
  static MultiGraph unlabeled(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const noexcept { return static_cast<int>(labels_.size()); }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(int v) const { return labels_.at(v); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(int e) const { return edges_.at(e); }

  EdgeSubset all_edges() const { return EdgeSubset::full(edge_count()); }
  EdgeSubset no_edges() const { return EdgeSubset(edge_count()); }
  EdgeSubset loops() const;

  friend bool operator==(const MultiGraph&, const MultiGraph&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
};

struct Components {
  std::vector<int> block_of;  // vertex -> component id, ids in order of first vertex
  int count = 0;

  std::vector<std::vector<int>> blocks() const;
};

Components components(const MultiGraph& g);

// c(G), r(G) = |V| - c(G), n(G) = |E| - r(G).
int component_count(const MultiGraph& g);
int rank(const MultiGraph& g);
int cycle_rank(const MultiGraph& g);

// Rank and cycle rank of the spanning subgraph (V, X).
int rank_of(const MultiGraph& g, const EdgeSubset& x);
int cycle_rank_of(const MultiGraph& g, const EdgeSubset& x);

EdgeSubset bridges(const MultiGraph& g);
bool is_bridgeless(const MultiGraph& g);

// Edges of (V, X) lying on a circuit of (V, X).
EdgeSubset cyclic_part(const MultiGraph& g, const EdgeSubset& x);
EdgeSubset cyclic_part(const MultiGraph& g);

struct SpanningForest {
  EdgeSubset tree;
  EdgeSubset cotree;
  std::vector<int> tree_edges;    // ascending
  std::vector<int> cotree_edges;  // ascending
};

// Greedy in ascending edge order: keep an edge iff it joins two components.
SpanningForest maximal_spanning_forest(const MultiGraph& g);

class Orientation;

// Signed indicator of the fundamental circuit of a co-tree edge e,
// directed so that it agrees with `ref` on e. The result is a flow of
// (g, ref). Throws DomainError if e is not a co-tree edge.
std::vector<int> fundamental_circuit(const MultiGraph& g,
                                     const SpanningForest& forest, int e,
                                     const Orientation& ref);

// Minors and subgraphs. Vertex sets and relative edge order are preserved;
// contraction keeps the loops and parallel edges it creates.
MultiGraph delete_edges(const MultiGraph& g, const EdgeSubset& x);
MultiGraph contract_edges(const MultiGraph& g, const EdgeSubset& x);
MultiGraph induced(const MultiGraph& g, const EdgeSubset& x);

}  // namespace flowpoly
