#include "flowpoly/orientation.hpp"

#include <algorithm>

#include "flowpoly/errors.hpp"
#include "flowpoly/flowspace.hpp"

namespace flowpoly {

namespace {

std::uint64_t reverse_low_bits(std::uint64_t x, int width) {
  std::uint64_t out = 0;
  for (int i = 0; i < width; ++i) {
    out = (out << 1) | ((x >> i) & 1U);
  }
  return out;
}

void require_same_size(const Orientation& a, const Orientation& b) {
  if (a.edge_count() != b.edge_count()) {
    throw DomainError("orientations belong to different graphs");
  }
}

void require_matches(const MultiGraph& g, const Orientation& rho) {
  if (rho.edge_count() != g.edge_count()) {
    throw DomainError("orientation has " + std::to_string(rho.edge_count()) +
                      " bits but the graph has " +
                      std::to_string(g.edge_count()) + " edges");
  }
}

void require_enumerable(const MultiGraph& g, const Limits& limits) {
  if (g.edge_count() > limits.max_edges) {
    throw ResourceError("orientation enumeration needs |E| <= max_edges (" +
                        std::to_string(limits.max_edges) + "), graph has " +
                        std::to_string(g.edge_count()) + " edges");
  }
}

// Strongly connected components of the digraph (V, rho), loops ignored.
// Component ids are assigned in order of discovery by Kosaraju's algorithm.
std::vector<int> strong_components(const MultiGraph& g, const Orientation& rho) {
  const int n = g.vertex_count();
  std::vector<std::vector<int>> out(n), in(n);
  for (int e = 0; e < g.edge_count(); ++e) {
    if (g.edge(e).is_loop()) continue;
    const int s = rho.source(g, e);
    const int t = rho.target(g, e);
    out[s].push_back(t);
    in[t].push_back(s);
  }
  std::vector<int> finish;
  std::vector<bool> seen(n, false);
  for (int root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    seen[root] = true;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < out[v].size()) {
        const int w = out[v][next++];
        if (!seen[w]) {
          seen[w] = true;
          stack.emplace_back(w, 0);
        }
      } else {
        finish.push_back(v);
        stack.pop_back();
      }
    }
  }
  std::vector<int> comp(n, -1);
  int id = 0;
  for (auto it = finish.rbegin(); it != finish.rend(); ++it) {
    if (comp[*it] >= 0) continue;
    std::vector<int> stack{*it};
    comp[*it] = id;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : in[v]) {
        if (comp[w] < 0) {
          comp[w] = id;
          stack.push_back(w);
        }
      }
    }
    ++id;
  }
  return comp;
}

}  // namespace

Orientation::Orientation(int edge_count, std::uint64_t reversed_mask)
    : edge_count_(edge_count), mask_(EdgeSubset(edge_count, reversed_mask).mask()) {}

Orientation Orientation::parse(std::string_view bits) {
  if (bits.size() > static_cast<std::size_t>(kMaxEdges)) {
    throw DomainError("orientation bitstring too long");
  }
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      mask |= std::uint64_t{1} << i;
    } else if (bits[i] != '0') {
      throw DomainError("orientation bitstring may contain only '0' and '1'");
    }
  }
  return Orientation(static_cast<int>(bits.size()), mask);
}

Orientation Orientation::from_lex_rank(int edge_count, std::uint64_t rank) {
  return Orientation(edge_count, reverse_low_bits(rank, edge_count));
}

std::uint64_t Orientation::lex_rank() const noexcept {
  return reverse_low_bits(mask_, edge_count_);
}

int Orientation::source(const MultiGraph& g, int e) const {
  const Edge& ed = g.edge(e);
  return reversed(e) ? ed.head : ed.tail;
}

int Orientation::target(const MultiGraph& g, int e) const {
  const Edge& ed = g.edge(e);
  return reversed(e) ? ed.tail : ed.head;
}

int Orientation::sign_at(const MultiGraph& g, int v, int e) const {
  const Edge& ed = g.edge(e);
  if (ed.is_loop()) return 0;
  if (source(g, e) == v) return 1;
  if (target(g, e) == v) return -1;
  return 0;
}

Orientation Orientation::flipped(const EdgeSubset& x) const {
  return Orientation(edge_count_, mask_ ^ x.mask());
}

Orientation Orientation::reversal() const {
  return flipped(EdgeSubset::full(edge_count_));
}

std::string Orientation::to_string() const {
  std::string s(edge_count_, '0');
  for (int e = 0; e < edge_count_; ++e) {
    if (reversed(e)) s[e] = '1';
  }
  return s;
}

void for_each_orientation(const MultiGraph& g, const Limits& limits,
                          const std::function<void(const Orientation&)>& fn) {
  require_enumerable(g, limits);
  const std::uint64_t total = std::uint64_t{1} << g.edge_count();
  for (std::uint64_t r = 0; r < total; ++r) {
    fn(Orientation::from_lex_rank(g.edge_count(), r));
  }
}

std::vector<Orientation> enumerate_orientations(const MultiGraph& g,
                                                const Limits& limits) {
  std::vector<Orientation> out;
  for_each_orientation(g, limits, [&](const Orientation& o) { out.push_back(o); });
  return out;
}

CouplingVector coupling(const Orientation& rho, const Orientation& sigma) {
  require_same_size(rho, sigma);
  CouplingVector c(rho.edge_count());
  for (int e = 0; e < rho.edge_count(); ++e) {
    c[e] = rho.reversed(e) == sigma.reversed(e) ? 1 : -1;
  }
  return c;
}

std::vector<std::int64_t> apply_P(const Orientation& rho,
                                  const Orientation& sigma,
                                  std::span<const std::int64_t> f) {
  require_same_size(rho, sigma);
  if (f.size() != static_cast<std::size_t>(rho.edge_count())) {
    throw DomainError("vector length does not match the edge count");
  }
  std::vector<std::int64_t> out(f.begin(), f.end());
  for (int e = 0; e < rho.edge_count(); ++e) {
    if (rho.reversed(e) != sigma.reversed(e)) out[e] = -out[e];
  }
  return out;
}

std::vector<std::int64_t> apply_Q(const Orientation& rho,
                                  const Orientation& sigma,
                                  std::span<const std::int64_t> g,
                                  std::int64_t q) {
  require_same_size(rho, sigma);
  if (g.size() != static_cast<std::size_t>(rho.edge_count())) {
    throw DomainError("vector length does not match the edge count");
  }
  std::vector<std::int64_t> out(g.begin(), g.end());
  for (int e = 0; e < rho.edge_count(); ++e) {
    if (out[e] < 0 || out[e] > q) {
      throw DomainError("entry " + std::to_string(e) + " lies outside [0, q]");
    }
    if (rho.reversed(e) != sigma.reversed(e)) out[e] = q - out[e];
  }
  return out;
}

Orientation induced_orientation(const Orientation& rho,
                                std::span<const std::int64_t> f) {
  if (f.size() != static_cast<std::size_t>(rho.edge_count())) {
    throw DomainError("vector length does not match the edge count");
  }
  EdgeSubset flip(rho.edge_count());
  for (int e = 0; e < rho.edge_count(); ++e) {
    if (f[e] <= 0) flip.insert(e);
  }
  return rho.flipped(flip);
}

EdgeSubset difference_set(const Orientation& rho, const Orientation& sigma) {
  require_same_size(rho, sigma);
  return EdgeSubset(rho.edge_count(), rho.mask() ^ sigma.mask());
}

std::vector<int> symmetric_difference(const Orientation& rho,
                                      const Orientation& sigma) {
  const EdgeSubset d = difference_set(rho, sigma);
  std::vector<int> out(rho.edge_count(), 0);
  for (int e : d.indices()) out[e] = 1;
  return out;
}

bool is_directed_eulerian(const MultiGraph& g, const Orientation& rho,
                          const EdgeSubset& x) {
  require_matches(g, rho);
  std::vector<int> balance(g.vertex_count(), 0);
  for (int e : x.indices()) {
    if (g.edge(e).is_loop()) continue;
    ++balance[rho.source(g, e)];
    --balance[rho.target(g, e)];
  }
  return std::all_of(balance.begin(), balance.end(), [](int b) { return b == 0; });
}

std::optional<DirectedCut> find_directed_cut(const MultiGraph& g,
                                             const Orientation& rho) {
  require_matches(g, rho);
  const std::vector<int> scc = strong_components(g, rho);
  const Components comps = components(g);

  const int scc_count =
      scc.empty() ? 0 : *std::max_element(scc.begin(), scc.end()) + 1;
  std::vector<bool> has_incoming(scc_count, false);
  for (int e = 0; e < g.edge_count(); ++e) {
    const int s = scc[rho.source(g, e)];
    const int t = scc[rho.target(g, e)];
    if (s != t) has_incoming[t] = true;
  }
  // Per connected component: strongly connected iff exactly one SCC meets it.
  std::vector<int> first_scc(comps.count, -1);
  std::vector<bool> split(comps.count, false);
  for (int v = 0; v < g.vertex_count(); ++v) {
    const int c = comps.block_of[v];
    if (first_scc[c] < 0) first_scc[c] = scc[v];
    else if (first_scc[c] != scc[v]) split[c] = true;
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    // The source SCC holding the least vertex of the first split component.
    if (!split[comps.block_of[v]] || has_incoming[scc[v]]) continue;
    DirectedCut cut{{}, EdgeSubset(g.edge_count())};
    for (int w = 0; w < g.vertex_count(); ++w) {
      if (scc[w] == scc[v]) cut.side.push_back(w);
    }
    for (int e = 0; e < g.edge_count(); ++e) {
      const bool in_s = scc[g.edge(e).tail] == scc[v];
      const bool in_t = scc[g.edge(e).head] == scc[v];
      if (in_s != in_t) cut.edges.insert(e);
    }
    return cut;
  }
  return std::nullopt;
}

bool is_totally_cyclic(const MultiGraph& g, const Orientation& rho) {
  return !find_directed_cut(g, rho).has_value();
}

bool eulerian_equivalent(const MultiGraph& g, const Orientation& rho,
                         const Orientation& sigma) {
  require_matches(g, rho);
  require_matches(g, sigma);
  return is_directed_eulerian(g, rho, difference_set(rho, sigma));
}

OrientationClass eulerian_class(const MultiGraph& g, const Orientation& eps,
                                const Limits& limits) {
  require_enumerable(g, limits);
  require_matches(g, eps);
  OrientationClass cls;
  for (const FlowVector& f : zero_one_flows(g, eps, limits)) {
    EdgeSubset support(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) {
      if (f[e] != 0) support.insert(e);
    }
    cls.members.push_back(eps.flipped(support));
  }
  std::sort(cls.members.begin(), cls.members.end());
  cls.representative = cls.members.front();
  cls.totally_cyclic = is_totally_cyclic(g, cls.representative);
  return cls;
}

std::vector<OrientationClass> eulerian_classes(const MultiGraph& g,
                                               bool only_totally_cyclic,
                                               const Limits& limits) {
  require_enumerable(g, limits);
  const std::uint64_t total = std::uint64_t{1} << g.edge_count();
  std::vector<bool> assigned(total, false);
  std::vector<OrientationClass> out;
  for (std::uint64_t r = 0; r < total; ++r) {
    if (assigned[r]) continue;
    const Orientation rho = Orientation::from_lex_rank(g.edge_count(), r);
    if (only_totally_cyclic && !is_totally_cyclic(g, rho)) continue;
    OrientationClass cls = eulerian_class(g, rho, limits);
    if (!(cls.representative == rho)) {
      throw InvariantViolation("class of " + rho.to_string() +
                               " has a smaller unvisited member");
    }
    for (const Orientation& m : cls.members) {
      if (assigned[m.lex_rank()] || !eulerian_equivalent(g, rho, m)) {
        throw InvariantViolation("Eulerian class of " + rho.to_string() +
                                 " disagrees with the pairwise relation at " +
                                 m.to_string());
      }
      assigned[m.lex_rank()] = true;
    }
    out.push_back(std::move(cls));
  }
  return out;
}

std::vector<Orientation> totally_cyclic_orientations(const MultiGraph& g,
                                                     const Limits& limits) {
  std::vector<Orientation> out;
  for_each_orientation(g, limits, [&](const Orientation& o) {
    if (is_totally_cyclic(g, o)) out.push_back(o);
  });
  return out;
}

std::uint64_t count_totally_cyclic(const MultiGraph& g, const Limits& limits) {
  std::uint64_t n = 0;
  for_each_orientation(g, limits, [&](const Orientation& o) {
    if (is_totally_cyclic(g, o)) ++n;
  });
  return n;
}

}  // namespace flowpoly
