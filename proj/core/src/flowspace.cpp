#include "flowpoly/flowspace.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>

#include "flowpoly/errors.hpp"

namespace flowpoly {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

std::uint64_t checked_pow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > kSaturated / base) {
      throw ResourceError("flow count overflows 64 bits");
    }
    r *= base;
  }
  return r;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t q) {
  const std::int64_t r = a % q;
  return r < 0 ? r + q : r;
}

void require_matches(const MultiGraph& g, const Orientation& rho) {
  if (rho.edge_count() != g.edge_count()) {
    throw DomainError("orientation has " + std::to_string(rho.edge_count()) +
                      " bits but the graph has " +
                      std::to_string(g.edge_count()) + " edges");
  }
}

// Depth-first enumeration of co-tree assignments. Co-tree coordinates that
// feed some tree equation come first; once every tree value is fixed the
// remaining coordinates are free and, when only counting, are multiplied in
// rather than visited. Interval bounds on the unassigned part of each tree
// equation prune the integer cases.
class FlowSearch {
 public:
  FlowSearch(const CircuitBasis& basis, const ValueRange& cotree_range,
             const ValueRange& tree_range, std::optional<std::int64_t> modulus)
      : basis_(basis),
        tree_range_(tree_range),
        modulus_(modulus),
        k_(basis.dimension()) {
    for (std::int64_t v = cotree_range.lo; v <= cotree_range.hi; ++v) {
      if (cotree_range.contains(v)) candidates_.push_back(v);
    }
    const auto& tree_edges = basis.forest().tree_edges;
    std::vector<bool> constrained(k_, false);
    for (std::size_t i = 0; i < tree_edges.size(); ++i) {
      for (auto [j, sign] : basis.tree_row(i)) constrained[j] = true;
    }
    for (int j = 0; j < k_; ++j) {
      if (constrained[j]) order_.push_back(j);
    }
    free_from_ = static_cast<int>(order_.size());
    for (int j = 0; j < k_; ++j) {
      if (!constrained[j]) order_.push_back(j);
    }
    std::vector<int> depth_of(k_);
    for (int d = 0; d < k_; ++d) depth_of[order_[d]] = d;

    const std::size_t rows = tree_edges.size();
    touched_.assign(k_, {});
    last_depth_.assign(rows, -1);
    for (std::size_t i = 0; i < rows; ++i) {
      for (auto [j, sign] : basis.tree_row(i)) {
        const int d = depth_of[j];
        touched_[d].emplace_back(static_cast<int>(i), sign);
        last_depth_[i] = std::max(last_depth_[i], d);
      }
    }
    if (!candidates_.empty()) {
      const std::int64_t cmin = candidates_.front();
      const std::int64_t cmax = candidates_.back();
      rem_min_.assign(rows, std::vector<std::int64_t>(k_ + 1, 0));
      rem_max_.assign(rows, std::vector<std::int64_t>(k_ + 1, 0));
      for (int d = k_ - 1; d >= 0; --d) {
        for (std::size_t i = 0; i < rows; ++i) {
          rem_min_[i][d] = rem_min_[i][d + 1];
          rem_max_[i][d] = rem_max_[i][d + 1];
        }
        for (auto [i, sign] : touched_[d]) {
          rem_min_[i][d] += std::min(sign * cmin, sign * cmax);
          rem_max_[i][d] += std::max(sign * cmin, sign * cmax);
        }
      }
    }
    partial_.assign(rows, 0);
    assigned_.assign(k_, 0);
  }

  // Number of co-tree assignments actually visited (before pruning).
  std::uint64_t visited_box(bool counting) const {
    const int upto = counting ? free_from_ : k_;
    std::uint64_t size = 1;
    for (int d = 0; d < upto; ++d) size = saturating_mul(size, candidates_.size());
    return size;
  }

  std::uint64_t count() {
    if (!fixed_rows_ok()) return 0;
    count_ = 0;
    counting_ = true;
    descend(0);
    return count_;
  }

  void visit(const std::function<void(std::span<const std::int64_t>)>& fn) {
    if (!fixed_rows_ok()) return;
    counting_ = false;
    emit_ = &fn;
    flow_.assign(basis_.edge_count(), 0);
    descend(0);
  }

 private:
  bool value_ok(std::int64_t v) const {
    if (modulus_) {
      return !tree_range_.exclude_zero || floor_mod(v, *modulus_) != 0;
    }
    return tree_range_.contains(v);
  }

  // Tree edges on no fundamental circuit always carry 0.
  bool fixed_rows_ok() const {
    for (std::size_t i = 0; i < last_depth_.size(); ++i) {
      if (last_depth_[i] < 0 && !value_ok(0)) return false;
    }
    return true;
  }

  void descend(int d) {
    if (counting_ && d == free_from_) {
      const std::uint64_t free_choices = checked_pow(candidates_.size(), k_ - d);
      if (count_ > kSaturated - free_choices) {
        throw ResourceError("flow count overflows 64 bits");
      }
      count_ += free_choices;
      return;
    }
    if (d == k_) {
      emit();
      return;
    }
    for (std::int64_t v : candidates_) {
      assigned_[d] = v;
      bool ok = true;
      for (auto [i, sign] : touched_[d]) partial_[i] += sign * v;
      for (auto [i, sign] : touched_[d]) {
        if (last_depth_[i] == d) {
          if (!value_ok(partial_[i])) ok = false;
        } else if (!modulus_) {
          if (partial_[i] + rem_min_[i][d + 1] > tree_range_.hi ||
              partial_[i] + rem_max_[i][d + 1] < tree_range_.lo) {
            ok = false;
          }
        }
      }
      if (ok) descend(d + 1);
      for (auto [i, sign] : touched_[d]) partial_[i] -= sign * v;
    }
  }

  void emit() {
    const auto& forest = basis_.forest();
    for (int d = 0; d < k_; ++d) {
      flow_[forest.cotree_edges[order_[d]]] = assigned_[d];
    }
    for (std::size_t i = 0; i < forest.tree_edges.size(); ++i) {
      const std::int64_t v = partial_[i];
      flow_[forest.tree_edges[i]] = modulus_ ? floor_mod(v, *modulus_) : v;
    }
    (*emit_)(flow_);
  }

  const CircuitBasis& basis_;
  ValueRange tree_range_;
  std::optional<std::int64_t> modulus_;
  int k_;
  int free_from_ = 0;
  std::vector<std::int64_t> candidates_;
  std::vector<int> order_;  // depth -> co-tree position
  std::vector<std::vector<std::pair<int, int>>> touched_;  // depth -> (row, sign)
  std::vector<int> last_depth_;
  std::vector<std::vector<std::int64_t>> rem_min_, rem_max_;
  std::vector<std::int64_t> partial_;
  std::vector<std::int64_t> assigned_;
  std::vector<std::int64_t> flow_;
  bool counting_ = true;
  std::uint64_t count_ = 0;
  const std::function<void(std::span<const std::int64_t>)>* emit_ = nullptr;
};

void check_cap(const FlowSearch& search, bool counting, const Limits& limits) {
  const std::uint64_t box = search.visited_box(counting);
  if (box > limits.max_enumeration) {
    throw ResourceError("flow enumeration would visit " +
                        (box == kSaturated ? std::string("more than 2^64")
                                           : std::to_string(box)) +
                        " co-tree assignments; max_enumeration is " +
                        std::to_string(limits.max_enumeration));
  }
}

}  // namespace

std::vector<std::int64_t> vertex_excess(const MultiGraph& g,
                                        const Orientation& rho,
                                        std::span<const std::int64_t> f) {
  require_matches(g, rho);
  if (f.size() != static_cast<std::size_t>(g.edge_count())) {
    throw DomainError("flow length does not match the edge count");
  }
  std::vector<std::int64_t> excess(g.vertex_count(), 0);
  for (int e = 0; e < g.edge_count(); ++e) {
    if (g.edge(e).is_loop()) continue;
    excess[rho.source(g, e)] += f[e];
    excess[rho.target(g, e)] -= f[e];
  }
  return excess;
}

bool is_flow(const MultiGraph& g, const Orientation& eps,
             std::span<const std::int64_t> f,
             std::optional<std::int64_t> modulus) {
  if (modulus && *modulus < 1) throw DomainError("modulus must be positive");
  for (std::int64_t x : vertex_excess(g, eps, f)) {
    if (modulus ? floor_mod(x, *modulus) != 0 : x != 0) return false;
  }
  return true;
}

CircuitBasis::CircuitBasis(const MultiGraph& g, const Orientation& ref)
    : edge_count_(g.edge_count()), forest_(maximal_spanning_forest(g)) {
  require_matches(g, ref);
  rows_.assign(forest_.tree_edges.size(), {});
  for (std::size_t j = 0; j < forest_.cotree_edges.size(); ++j) {
    const auto circuit = fundamental_circuit(g, forest_, forest_.cotree_edges[j], ref);
    for (std::size_t i = 0; i < forest_.tree_edges.size(); ++i) {
      const int c = circuit[forest_.tree_edges[i]];
      if (c != 0) rows_[i].emplace_back(static_cast<int>(j), c);
    }
  }
}

FlowVector CircuitBasis::flow_from_cotree(
    std::span<const std::int64_t> cotree_values) const {
  if (cotree_values.size() != forest_.cotree_edges.size()) {
    throw DomainError("co-tree assignment has " +
                      std::to_string(cotree_values.size()) +
                      " values; the cycle rank is " +
                      std::to_string(forest_.cotree_edges.size()));
  }
  FlowVector f{std::vector<std::int64_t>(edge_count_, 0), std::nullopt};
  for (std::size_t j = 0; j < cotree_values.size(); ++j) {
    f.values[forest_.cotree_edges[j]] = cotree_values[j];
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    std::int64_t v = 0;
    for (auto [j, sign] : rows_[i]) v += sign * cotree_values[j];
    f.values[forest_.tree_edges[i]] = v;
  }
  return f;
}

FlowVector flow_from_cotree(const MultiGraph& g, const SpanningForest& forest,
                            const Orientation& eps,
                            std::span<const std::int64_t> cotree_values) {
  if (cotree_values.size() != forest.cotree_edges.size()) {
    throw DomainError("co-tree assignment length does not match the forest");
  }
  FlowVector f{std::vector<std::int64_t>(g.edge_count(), 0), std::nullopt};
  for (std::size_t j = 0; j < forest.cotree_edges.size(); ++j) {
    const auto circuit = fundamental_circuit(g, forest, forest.cotree_edges[j], eps);
    for (int e = 0; e < g.edge_count(); ++e) {
      f.values[e] += cotree_values[j] * circuit[e];
    }
  }
  return f;
}

std::uint64_t ValueRange::size() const noexcept {
  if (lo > hi) return 0;
  std::uint64_t n = static_cast<std::uint64_t>(hi - lo) + 1;
  if (exclude_zero && lo <= 0 && hi >= 0) --n;
  return n;
}

std::uint64_t count_flows_in_range(const CircuitBasis& basis,
                                   const ValueRange& range,
                                   const Limits& limits) {
  FlowSearch search(basis, range, range, std::nullopt);
  check_cap(search, true, limits);
  return search.count();
}

void for_each_flow_in_range(
    const CircuitBasis& basis, const ValueRange& range, const Limits& limits,
    const std::function<void(std::span<const std::int64_t>)>& fn) {
  FlowSearch search(basis, range, range, std::nullopt);
  check_cap(search, false, limits);
  search.visit(fn);
}

void for_each_modular_flow(
    const MultiGraph& g, const Orientation& eps, std::int64_t q,
    bool nowhere_zero, const Limits& limits,
    const std::function<void(std::span<const std::int64_t>)>& fn) {
  if (q < 1) throw DomainError("modulus q must be at least 1");
  const CircuitBasis basis(g, eps);
  const ValueRange residues{0, q - 1, nowhere_zero};
  FlowSearch search(basis, residues, residues, q);
  check_cap(search, false, limits);
  search.visit(fn);
}

std::vector<FlowVector> enumerate_modular_flows(const MultiGraph& g,
                                                const Orientation& eps,
                                                std::int64_t q,
                                                bool nowhere_zero,
                                                const Limits& limits) {
  std::vector<FlowVector> out;
  for_each_modular_flow(g, eps, q, nowhere_zero, limits,
                        [&](std::span<const std::int64_t> f) {
                          out.push_back({{f.begin(), f.end()}, q});
                        });
  return out;
}

std::uint64_t count_modular_flows(const MultiGraph& g, const Orientation& eps,
                                  std::int64_t q, bool nowhere_zero,
                                  const Limits& limits) {
  if (q < 1) throw DomainError("modulus q must be at least 1");
  const CircuitBasis basis(g, eps);
  const ValueRange residues{0, q - 1, nowhere_zero};
  FlowSearch search(basis, residues, residues, q);
  check_cap(search, true, limits);
  return search.count();
}

std::uint64_t count_integer_flows_open(const MultiGraph& g,
                                       const Orientation& rho, std::int64_t q,
                                       const Limits& limits) {
  if (q < 1) throw DomainError("open counts need q >= 1");
  return count_flows_in_range(CircuitBasis(g, rho), {1, q - 1, false}, limits);
}

std::uint64_t count_integer_flows_closed(const MultiGraph& g,
                                         const Orientation& rho, std::int64_t q,
                                         const Limits& limits) {
  if (q < 0) throw DomainError("closed counts need q >= 0");
  return count_flows_in_range(CircuitBasis(g, rho), {0, q, false}, limits);
}

std::uint64_t count_nowhere_zero_integer(const MultiGraph& g,
                                         const Orientation& eps, std::int64_t q,
                                         const Limits& limits) {
  if (q < 1) throw DomainError("q must be at least 1");
  return count_flows_in_range(CircuitBasis(g, eps), {1 - q, q - 1, true}, limits);
}

void for_each_nowhere_zero_integer_flow(
    const MultiGraph& g, const Orientation& eps, std::int64_t q,
    const Limits& limits,
    const std::function<void(std::span<const std::int64_t>)>& fn) {
  if (q < 1) throw DomainError("q must be at least 1");
  for_each_flow_in_range(CircuitBasis(g, eps), {1 - q, q - 1, true}, limits, fn);
}

std::vector<FlowVector> zero_one_flows(const MultiGraph& g,
                                       const Orientation& eps,
                                       const Limits& limits) {
  std::vector<FlowVector> out;
  for_each_flow_in_range(CircuitBasis(g, eps), {0, 1, false}, limits,
                         [&](std::span<const std::int64_t> f) {
                           out.push_back({{f.begin(), f.end()}, std::nullopt});
                         });
  return out;
}

std::int64_t eta(const MultiGraph& g, const Orientation& rho,
                 std::span<const std::int64_t> values) {
  std::int64_t total = 0;
  for (std::int64_t x : vertex_excess(g, rho, values)) total += x < 0 ? -x : x;
  return total;
}

LiftResult lift_modular_flow(const MultiGraph& g, const Orientation& eps,
                             std::span<const std::int64_t> residues,
                             std::int64_t q) {
  require_matches(g, eps);
  if (q < 1) throw DomainError("modulus q must be at least 1");
  if (residues.size() != static_cast<std::size_t>(g.edge_count())) {
    throw DomainError("flow length does not match the edge count");
  }
  for (std::size_t e = 0; e < residues.size(); ++e) {
    if (residues[e] < 1 || residues[e] >= q) {
      throw DomainError("lifting needs nowhere-zero residues in {1, ..., q-1}; "
                        "edge " + std::to_string(e) + " has " +
                        std::to_string(residues[e]));
    }
  }
  if (!is_flow(g, eps, residues, q)) {
    throw DomainError("input is not a flow modulo " + std::to_string(q));
  }

  // f* = Q_{rho,eps} f~ is kept in step with rho.
  Orientation rho = eps;
  std::vector<std::int64_t> fstar(residues.begin(), residues.end());
  std::vector<std::int64_t> excess = vertex_excess(g, rho, fstar);
  auto potential = [&] {
    std::int64_t s = 0;
    for (std::int64_t x : excess) s += x < 0 ? -x : x;
    return s;
  };
  std::int64_t current = potential();
  int iterations = 0;

  while (current > 0) {
    const auto surplus = std::find_if(excess.begin(), excess.end(),
                                      [](std::int64_t x) { return x > 0; });
    const int u = static_cast<int>(surplus - excess.begin());

    // Out-edges per vertex: by head index, then larger f* first, then index.
    std::vector<std::vector<int>> out(g.vertex_count());
    for (int e = 0; e < g.edge_count(); ++e) {
      if (!g.edge(e).is_loop()) out[rho.source(g, e)].push_back(e);
    }
    for (auto& list : out) {
      std::sort(list.begin(), list.end(), [&](int a, int b) {
        const int ta = rho.target(g, a), tb = rho.target(g, b);
        if (ta != tb) return ta < tb;
        if (fstar[a] != fstar[b]) return fstar[a] > fstar[b];
        return a < b;
      });
    }

    std::vector<int> via(g.vertex_count(), -1);
    std::vector<bool> seen(g.vertex_count(), false);
    std::queue<int> bfs;
    bfs.push(u);
    seen[u] = true;
    int deficit = -1;
    while (!bfs.empty() && deficit < 0) {
      const int v = bfs.front();
      bfs.pop();
      for (int e : out[v]) {
        const int w = rho.target(g, e);
        if (seen[w]) continue;
        seen[w] = true;
        via[w] = e;
        if (excess[w] < 0) {
          deficit = w;
          break;
        }
        bfs.push(w);
      }
    }
    if (deficit < 0) {
      throw InvariantViolation("no directed path from surplus vertex " +
                               g.label(u) + " to a deficit vertex");
    }

    EdgeSubset path(g.edge_count());
    for (int w = deficit; w != u; w = rho.source(g, via[w])) path.insert(via[w]);
    for (int e : path.indices()) fstar[e] = q - fstar[e];
    rho = rho.flipped(path);
    excess = vertex_excess(g, rho, fstar);
    const std::int64_t next = potential();
    if (next != current - 2 * q) {
      throw InvariantViolation("path reversal changed eta by " +
                               std::to_string(current - next) +
                               " instead of 2q");
    }
    current = next;
    ++iterations;
  }

  LiftResult result;
  result.flow = {apply_P(eps, rho, fstar), std::nullopt};
  result.orientation = rho;
  result.iterations = iterations;
  result.final_eta = current;
  return result;
}

}  // namespace flowpoly
