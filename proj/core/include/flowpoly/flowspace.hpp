#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "flowpoly/limits.hpp"
#include "flowpoly/multigraph.hpp"
#include "flowpoly/orientation.hpp"

namespace flowpoly {

// Integer value per edge. A modulus tag marks residues in {0, ..., q-1}.
struct FlowVector {
  std::vector<std::int64_t> values;
  std::optional<std::int64_t> modulus;

  std::size_t size() const noexcept { return values.size(); }
  std::int64_t operator[](std::size_t e) const { return values[e]; }
  friend bool operator==(const FlowVector&, const FlowVector&) = default;
};

// Net outflow sum_e rho(v,e) f(e) at every vertex; loops contribute 0.
std::vector<std::int64_t> vertex_excess(const MultiGraph& g,
                                        const Orientation& rho,
                                        std::span<const std::int64_t> f);

// Conservation Law at every vertex, exactly or modulo `modulus`.
bool is_flow(const MultiGraph& g, const Orientation& eps,
             std::span<const std::int64_t> f,
             std::optional<std::int64_t> modulus = std::nullopt);

// The fundamental circuits of a maximal spanning forest, oriented against a
// reference orientation. Every flow of (g, ref) is determined by its co-tree
// values: f(x) = sum_{e in cotree} f(e) * circuit_e(x).
class CircuitBasis {
 public:
  CircuitBasis(const MultiGraph& g, const Orientation& ref);

  const SpanningForest& forest() const noexcept { return forest_; }
  int edge_count() const noexcept { return edge_count_; }
  int dimension() const noexcept {
    return static_cast<int>(forest_.cotree_edges.size());
  }
  // Signed circuit coefficients of tree edge forest().tree_edges[i], as
  // (co-tree position, sign) pairs.
  std::span<const std::pair<int, int>> tree_row(std::size_t i) const {
    return rows_[i];
  }

  FlowVector flow_from_cotree(std::span<const std::int64_t> cotree_values) const;

 private:
  int edge_count_ = 0;
  SpanningForest forest_;
  std::vector<std::vector<std::pair<int, int>>> rows_;
};

FlowVector flow_from_cotree(const MultiGraph& g, const SpanningForest& forest,
                            const Orientation& eps,
                            std::span<const std::int64_t> cotree_values);

// Allowed values [lo, hi], optionally without 0.
struct ValueRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  bool exclude_zero = false;

  bool contains(std::int64_t v) const noexcept {
    return v >= lo && v <= hi && !(exclude_zero && v == 0);
  }
  std::uint64_t size() const noexcept;
};

// Integer flows of (g, basis ref) with every entry in `range`. Co-tree
// coordinates are enumerated; tree coordinates are derived and checked.
std::uint64_t count_flows_in_range(const CircuitBasis& basis,
                                   const ValueRange& range,
                                   const Limits& limits = {});
void for_each_flow_in_range(const CircuitBasis& basis, const ValueRange& range,
                            const Limits& limits,
                            const std::function<void(std::span<const std::int64_t>)>& fn);

// Flows modulo q, residues in {0, ..., q-1}, co-tree assignments in
// lexicographic order.
std::vector<FlowVector> enumerate_modular_flows(const MultiGraph& g,
                                                const Orientation& eps,
                                                std::int64_t q,
                                                bool nowhere_zero,
                                                const Limits& limits = {});
void for_each_modular_flow(const MultiGraph& g, const Orientation& eps,
                           std::int64_t q, bool nowhere_zero,
                           const Limits& limits,
                           const std::function<void(std::span<const std::int64_t>)>& fn);
std::uint64_t count_modular_flows(const MultiGraph& g, const Orientation& eps,
                                  std::int64_t q, bool nowhere_zero,
                                  const Limits& limits = {});

// Lattice points of q*Delta+ (open: 0 < f < q) and of its closure
// (closed: 0 <= f <= q) for the digraph (g, rho).
std::uint64_t count_integer_flows_open(const MultiGraph& g,
                                       const Orientation& rho, std::int64_t q,
                                       const Limits& limits = {});
std::uint64_t count_integer_flows_closed(const MultiGraph& g,
                                         const Orientation& rho, std::int64_t q,
                                         const Limits& limits = {});

// Integer flows with 0 < |f(e)| < q everywhere.
std::uint64_t count_nowhere_zero_integer(const MultiGraph& g,
                                         const Orientation& eps, std::int64_t q,
                                         const Limits& limits = {});
void for_each_nowhere_zero_integer_flow(
    const MultiGraph& g, const Orientation& eps, std::int64_t q,
    const Limits& limits,
    const std::function<void(std::span<const std::int64_t>)>& fn);

// 0-1 flows of (g, eps); these are the indicators of directed Eulerian
// subgraphs.
std::vector<FlowVector> zero_one_flows(const MultiGraph& g,
                                       const Orientation& eps,
                                       const Limits& limits = {});

// sum_v | sum_e rho(v,e) g(e) |.
std::int64_t eta(const MultiGraph& g, const Orientation& rho,
                 std::span<const std::int64_t> values);

struct LiftResult {
  FlowVector flow;          // integer q-flow of (g, eps), congruent to the input
  Orientation orientation;  // final rho; the lift is P_{eps,rho} Q_{rho,eps} input
  int iterations = 0;
  std::int64_t final_eta = 0;
};

// Lifts a nowhere-zero flow modulo q to a nowhere-zero integer q-flow by
// reversing directed paths from a surplus vertex to a deficit vertex until
// the potential eta vanishes. Throws DomainError on input that is not a
// nowhere-zero modular flow and InvariantViolation if no path is found.
LiftResult lift_modular_flow(const MultiGraph& g, const Orientation& eps,
                             std::span<const std::int64_t> residues,
                             std::int64_t q);

}  // namespace flowpoly
