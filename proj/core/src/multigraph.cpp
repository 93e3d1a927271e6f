#include "flowpoly/multigraph.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "flowpoly/errors.hpp"
#include "flowpoly/orientation.hpp"
#include "union_find.hpp"

namespace flowpoly {

namespace {

std::uint64_t low_bits(int n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

// Bridges of the spanning subgraph (V, mask) by DFS low-points. Parallel
// edges are told apart by edge index, so a doubled edge is never a bridge.
std::uint64_t bridge_mask(const MultiGraph& g, std::uint64_t mask) {
  const int n = g.vertex_count();
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbour, edge)
  for (int e = 0; e < g.edge_count(); ++e) {
    if (!((mask >> e) & 1U)) continue;
    const Edge& ed = g.edge(e);
    if (ed.is_loop()) continue;
    adj[ed.tail].emplace_back(ed.head, e);
    adj[ed.head].emplace_back(ed.tail, e);
  }
  std::vector<int> order(n, -1), low(n, 0);
  std::uint64_t result = 0;
  int clock = 0;

  struct Frame {
    int v;
    int parent_edge;
    std::size_t next;
  };
  std::vector<Frame> stack;
  for (int root = 0; root < n; ++root) {
    if (order[root] >= 0) continue;
    order[root] = low[root] = clock++;
    stack.push_back({root, -1, 0});
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next < adj[f.v].size()) {
        auto [w, e] = adj[f.v][f.next++];
        if (e == f.parent_edge) continue;
        if (order[w] < 0) {
          order[w] = low[w] = clock++;
          stack.push_back({w, e, 0});
        } else {
          low[f.v] = std::min(low[f.v], order[w]);
        }
      } else {
        const Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          Frame& up = stack.back();
          low[up.v] = std::min(low[up.v], low[done.v]);
          if (low[done.v] > order[up.v]) {
            result |= std::uint64_t{1} << done.parent_edge;
          }
        }
      }
    }
  }
  return result;
}

}  // namespace

EdgeSubset::EdgeSubset(int universe, std::uint64_t mask)
    : universe_(universe), mask_(mask & low_bits(universe)) {
  if (universe < 0 || universe > kMaxEdges) {
    throw DomainError("edge subset universe out of range");
  }
}

EdgeSubset EdgeSubset::full(int universe) {
  return EdgeSubset(universe, low_bits(universe));
}

EdgeSubset EdgeSubset::of(int universe, std::initializer_list<int> edges) {
  EdgeSubset s(universe);
  for (int e : edges) {
    if (e < 0 || e >= universe) throw DomainError("edge index out of range");
    s.insert(e);
  }
  return s;
}

EdgeSubset EdgeSubset::complement() const {
  return EdgeSubset(universe_, ~mask_);
}

std::vector<int> EdgeSubset::indices() const {
  std::vector<int> out;
  out.reserve(size());
  for (std::uint64_t m = mask_; m != 0; m &= m - 1) {
    out.push_back(std::countr_zero(m));
  }
  return out;
}

EdgeSubset operator|(EdgeSubset a, const EdgeSubset& b) {
  a.mask_ |= b.mask_;
  return a;
}

EdgeSubset operator&(EdgeSubset a, const EdgeSubset& b) {
  a.mask_ &= b.mask_;
  return a;
}

EdgeSubset operator-(EdgeSubset a, const EdgeSubset& b) {
  a.mask_ &= ~b.mask_;
  return a;
}

MultiGraph::MultiGraph(std::vector<std::string> labels, std::vector<Edge> edges)
    : labels_(std::move(labels)), edges_(std::move(edges)) {
  if (edges_.size() > static_cast<std::size_t>(kMaxEdges)) {
    throw ResourceError("graph has " + std::to_string(edges_.size()) +
                        " edges; at most " + std::to_string(kMaxEdges) +
                        " are supported");
  }
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) {
      throw DomainError("duplicate vertex label '" + l + "'");
    }
  }
  const int n = vertex_count();
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& ed = edges_[e];
    if (ed.tail < 0 || ed.tail >= n || ed.head < 0 || ed.head >= n) {
      throw DomainError("edge " + std::to_string(e) +
                        " references a missing vertex");
    }
  }
}

MultiGraph MultiGraph::unlabeled(int vertex_count, std::vector<Edge> edges) {
  std::vector<std::string> labels;
  labels.reserve(vertex_count);
  for (int v = 0; v < vertex_count; ++v) labels.push_back(std::to_string(v));
  return MultiGraph(std::move(labels), std::move(edges));
}

EdgeSubset MultiGraph::loops() const {
  EdgeSubset s(edge_count());
  for (int e = 0; e < edge_count(); ++e) {
    if (edges_[e].is_loop()) s.insert(e);
  }
  return s;
}

std::vector<std::vector<int>> Components::blocks() const {
  std::vector<std::vector<int>> out(count);
  for (std::size_t v = 0; v < block_of.size(); ++v) {
    out[block_of[v]].push_back(static_cast<int>(v));
  }
  return out;
}

Components components(const MultiGraph& g) {
  detail::UnionFind uf(g.vertex_count());
  for (const Edge& e : g.edges()) uf.unite(e.tail, e.head);
  Components c;
  c.block_of.assign(g.vertex_count(), -1);
  std::vector<int> id_of_root(g.vertex_count(), -1);
  for (int v = 0; v < g.vertex_count(); ++v) {
    const int r = uf.find(v);
    if (id_of_root[r] < 0) id_of_root[r] = c.count++;
    c.block_of[v] = id_of_root[r];
  }
  return c;
}

int component_count(const MultiGraph& g) { return components(g).count; }

int rank_of(const MultiGraph& g, const EdgeSubset& x) {
  detail::UnionFind uf(g.vertex_count());
  int r = 0;
  for (std::uint64_t m = x.mask(); m != 0; m &= m - 1) {
    const Edge& e = g.edge(std::countr_zero(m));
    if (uf.unite(e.tail, e.head)) ++r;
  }
  return r;
}

int cycle_rank_of(const MultiGraph& g, const EdgeSubset& x) {
  return x.size() - rank_of(g, x);
}

int rank(const MultiGraph& g) { return rank_of(g, g.all_edges()); }

int cycle_rank(const MultiGraph& g) { return cycle_rank_of(g, g.all_edges()); }

EdgeSubset bridges(const MultiGraph& g) {
  return EdgeSubset(g.edge_count(), bridge_mask(g, g.all_edges().mask()));
}

bool is_bridgeless(const MultiGraph& g) { return bridges(g).empty(); }

EdgeSubset cyclic_part(const MultiGraph& g, const EdgeSubset& x) {
  return EdgeSubset(g.edge_count(), x.mask() & ~bridge_mask(g, x.mask()));
}

EdgeSubset cyclic_part(const MultiGraph& g) {
  return cyclic_part(g, g.all_edges());
}

SpanningForest maximal_spanning_forest(const MultiGraph& g) {
  detail::UnionFind uf(g.vertex_count());
  SpanningForest f{EdgeSubset(g.edge_count()), EdgeSubset(g.edge_count()), {}, {}};
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (uf.unite(ed.tail, ed.head)) {
      f.tree.insert(e);
      f.tree_edges.push_back(e);
    } else {
      f.cotree.insert(e);
      f.cotree_edges.push_back(e);
    }
  }
  return f;
}

std::vector<int> fundamental_circuit(const MultiGraph& g,
                                     const SpanningForest& forest, int e,
                                     const Orientation& ref) {
  if (e < 0 || e >= g.edge_count() || !forest.cotree.contains(e)) {
    throw DomainError("edge " + std::to_string(e) + " is not a co-tree edge");
  }
  if (ref.edge_count() != g.edge_count()) {
    throw DomainError("orientation does not match the graph");
  }
  std::vector<int> circuit(g.edge_count(), 0);
  circuit[e] = 1;
  if (g.edge(e).is_loop()) return circuit;

  // Walk e along ref, then return through the tree from its head to its tail.
  const int start = ref.target(g, e);
  const int goal = ref.source(g, e);
  std::vector<int> via_edge(g.vertex_count(), -1);
  std::vector<int> prev(g.vertex_count(), -1);
  std::vector<bool> seen(g.vertex_count(), false);
  std::queue<int> bfs;
  bfs.push(start);
  seen[start] = true;
  while (!bfs.empty() && !seen[goal]) {
    const int v = bfs.front();
    bfs.pop();
    for (int t : forest.tree_edges) {
      const Edge& ed = g.edge(t);
      int w = -1;
      if (ed.tail == v) w = ed.head;
      else if (ed.head == v) w = ed.tail;
      if (w < 0 || seen[w]) continue;
      seen[w] = true;
      prev[w] = v;
      via_edge[w] = t;
      bfs.push(w);
    }
  }
  if (!seen[goal]) {
    throw InvariantViolation("co-tree edge endpoints not joined by the forest");
  }
  for (int w = goal; w != start; w = prev[w]) {
    const int t = via_edge[w];
    // Traversed from prev[w] to w.
    circuit[t] = ref.source(g, t) == prev[w] ? 1 : -1;
  }
  return circuit;
}

MultiGraph delete_edges(const MultiGraph& g, const EdgeSubset& x) {
  std::vector<Edge> kept;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (!x.contains(e)) kept.push_back(g.edge(e));
  }
  return MultiGraph(g.labels(), std::move(kept));
}

MultiGraph induced(const MultiGraph& g, const EdgeSubset& x) {
  return delete_edges(g, x.complement());
}

MultiGraph contract_edges(const MultiGraph& g, const EdgeSubset& x) {
  detail::UnionFind uf(g.vertex_count());
  for (int e : x.indices()) uf.unite(g.edge(e).tail, g.edge(e).head);

  // Each merged vertex takes the label of its least original member.
  std::vector<int> new_index(g.vertex_count(), -1);
  std::vector<int> root_index(g.vertex_count(), -1);
  std::vector<std::string> labels;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const int r = uf.find(v);
    if (root_index[r] < 0) {
      root_index[r] = static_cast<int>(labels.size());
      labels.push_back(g.label(v));
    }
    new_index[v] = root_index[r];
  }
  std::vector<Edge> kept;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (x.contains(e)) continue;
    kept.push_back({new_index[g.edge(e).tail], new_index[g.edge(e).head]});
  }
  return MultiGraph(std::move(labels), std::move(kept));
}

}  // namespace flowpoly
