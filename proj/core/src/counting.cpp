#include "flowpoly/counting.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <unordered_map>

#include "flowpoly/errors.hpp"
#include "flowpoly/flat_poset.hpp"
#include "flowpoly/flowspace.hpp"
#include "parallel.hpp"

namespace flowpoly {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void require_subsets(const MultiGraph& g, const Limits& limits) {
  if (g.edge_count() >= 63 ||
      (std::uint64_t{1} << g.edge_count()) > limits.max_subsets) {
    throw ResourceError("subset enumeration needs 2^|E| <= max_subsets (" +
                        std::to_string(limits.max_subsets) + "), graph has " +
                        std::to_string(g.edge_count()) + " edges");
  }
}

Rational sign_power(int n) { return n % 2 == 0 ? Rational(1) : Rational(-1); }

// Vertices are ordered by degree and neighbour-degree profile before the
// edge list is written out. Equal keys mean identical relabelled graphs,
// so a hit is always sound; isomorphic graphs that order differently just
// miss the cache.
std::string memo_key(const MultiGraph& g) {
  const int n = g.vertex_count();
  std::vector<int> degree(n, 0);
  for (const Edge& e : g.edges()) {
    ++degree[e.tail];
    ++degree[e.head];
  }
  std::vector<std::vector<int>> profile(n);
  for (const Edge& e : g.edges()) {
    profile[e.tail].push_back(degree[e.head]);
    profile[e.head].push_back(degree[e.tail]);
  }
  for (auto& p : profile) std::sort(p.begin(), p.end());
  std::vector<int> order;
  for (int v = 0; v < n; ++v) {
    if (degree[v] > 0) order.push_back(v);
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (degree[a] != degree[b]) return degree[a] < degree[b];
    return profile[a] < profile[b];
  });
  std::vector<int> relabel(n, -1);
  for (std::size_t i = 0; i < order.size(); ++i) relabel[order[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> edges;
  for (const Edge& e : g.edges()) {
    const int a = relabel[e.tail], b = relabel[e.head];
    edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(edges.begin(), edges.end());
  std::string key;
  key.push_back(static_cast<char>(order.size()));
  for (auto [a, b] : edges) {
    key.push_back(static_cast<char>(a));
    key.push_back(static_cast<char>(b));
  }
  return key;
}

class TutteSolver {
 public:
  RationalBiPoly solve(const MultiGraph& g) {
    RationalBiPoly factor = RationalBiPoly::constant(1);
    const EdgeSubset loop_set = g.loops();
    for (int i = 0; i < loop_set.size(); ++i) factor *= RationalBiPoly::y();
    MultiGraph h = delete_edges(g, loop_set);

    const EdgeSubset bridge_set = bridges(h);
    if (!bridge_set.empty()) {
      for (int i = 0; i < bridge_set.size(); ++i) factor *= RationalBiPoly::x();
      // Contracting bridges creates no loops and no new bridges.
      h = contract_edges(h, bridge_set);
    }
    if (h.edge_count() == 0) return factor;

    const std::string key = memo_key(h);
    if (auto it = memo_.find(key); it != memo_.end()) return factor * it->second;

    const EdgeSubset first = EdgeSubset::of(h.edge_count(), {0});
    RationalBiPoly result = solve(delete_edges(h, first)) + solve(contract_edges(h, first));
    memo_.emplace(key, result);
    return factor * result;
  }

 private:
  std::unordered_map<std::string, RationalBiPoly> memo_;
};

RationalPoly interpolate_counts(const std::vector<Sample>& samples, int degree) {
  return lagrange_interpolate(samples, degree);
}

}  // namespace

RationalBiPoly tutte(const MultiGraph& g, const Limits& limits) {
  if (g.edge_count() > limits.max_edges) {
    throw ResourceError("Tutte recursion needs |E| <= max_edges (" +
                        std::to_string(limits.max_edges) + "), graph has " +
                        std::to_string(g.edge_count()) + " edges");
  }
  TutteSolver solver;
  return solver.solve(g);
}

ModularMethod parse_modular_method(std::string_view name) {
  if (name == "tutte") return ModularMethod::kTutte;
  if (name == "subset") return ModularMethod::kSubset;
  if (name == "interp") return ModularMethod::kInterp;
  if (name == "charpoly") return ModularMethod::kCharpoly;
  throw DomainError("unknown modular method '" + std::string(name) +
                    "' (expected tutte, subset, interp or charpoly)");
}

IntegralMethod parse_integral_method(std::string_view name) {
  if (name == "sum-orientations") return IntegralMethod::kSumOrientations;
  if (name == "interp") return IntegralMethod::kInterp;
  throw DomainError("unknown integral method '" + std::string(name) +
                    "' (expected sum-orientations or interp)");
}

std::string to_string(ModularMethod m) {
  switch (m) {
    case ModularMethod::kTutte: return "tutte";
    case ModularMethod::kSubset: return "subset";
    case ModularMethod::kInterp: return "interp";
    case ModularMethod::kCharpoly: return "charpoly";
  }
  return "?";
}

std::string to_string(IntegralMethod m) {
  switch (m) {
    case IntegralMethod::kSumOrientations: return "sum-orientations";
    case IntegralMethod::kInterp: return "interp";
  }
  return "?";
}

MethodReport modular_flow_poly(const MultiGraph& g, ModularMethod method,
                               const Limits& limits) {
  const auto start = Clock::now();
  MethodReport report{to_string(method), {}, {}, 0.0};
  const int n = cycle_rank(g);
  switch (method) {
    case ModularMethod::kTutte: {
      const RationalBiPoly t = tutte(g, limits);
      report.poly = t.substitute(RationalPoly(), RationalPoly::affine(1, -1)) * sign_power(n);
      break;
    }
    case ModularMethod::kSubset: {
      // sum over Y of (-1)^{|E - Y|} t^{n<Y>}
      require_subsets(g, limits);
      const int m = g.edge_count();
      auto partial = detail::parallel_chunks<std::vector<std::int64_t>>(
          std::uint64_t{1} << m, limits.jobs,
          [&](std::uint64_t begin, std::uint64_t end) {
            std::vector<std::int64_t> c(m + 1, 0);
            for (std::uint64_t y = begin; y < end; ++y) {
              const EdgeSubset sub(m, y);
              c[cycle_rank_of(g, sub)] += (m - sub.size()) % 2 == 0 ? 1 : -1;
            }
            return c;
          });
      std::vector<Rational> coeffs(m + 1, Rational(0));
      for (const auto& c : partial) {
        for (int k = 0; k <= m; ++k) coeffs[k] += Rational(c[k]);
      }
      report.poly = RationalPoly(std::move(coeffs));
      break;
    }
    case ModularMethod::kInterp: {
      const Orientation eps(g.edge_count());
      for (int q = 1; q <= n + 1; ++q) {
        report.samples.push_back({q, BigInt(count_modular_flows(g, eps, q, true, limits))});
      }
      report.poly = interpolate_counts(report.samples, n);
      break;
    }
    case ModularMethod::kCharpoly: {
      report.poly = FlatPoset::build(g, limits).characteristic_polynomial();
      break;
    }
  }
  report.wall_ms = elapsed_ms(start);
  return report;
}

LocalPolys local_flow_polys(const MultiGraph& g, const Orientation& rho,
                            const Limits& limits) {
  const int n = cycle_rank(g);
  LocalPolys out;
  out.totally_cyclic = is_totally_cyclic(g, rho);
  const CircuitBasis basis(g, rho);
  for (int q = 1; q <= n + 1; ++q) {
    out.open_samples.push_back(
        {q, BigInt(count_flows_in_range(basis, {1, q - 1, false}, limits))});
  }
  for (int q = 0; q <= n; ++q) {
    out.closed_samples.push_back(
        {q, BigInt(count_flows_in_range(basis, {0, q, false}, limits))});
  }
  out.open = interpolate_counts(out.open_samples, n);
  out.closed = interpolate_counts(out.closed_samples, n);
  return out;
}

std::vector<LocalPolys> local_flow_polys_for(const MultiGraph& g,
                                             std::span<const Orientation> rhos,
                                             const Limits& limits) {
  auto chunks = detail::parallel_chunks<std::vector<LocalPolys>>(
      rhos.size(), limits.jobs, [&](std::uint64_t begin, std::uint64_t end) {
        std::vector<LocalPolys> part;
        for (std::uint64_t i = begin; i < end; ++i) {
          part.push_back(local_flow_polys(g, rhos[i], limits));
        }
        return part;
      });
  std::vector<LocalPolys> out;
  out.reserve(rhos.size());
  for (auto& c : chunks) {
    for (auto& p : c) out.push_back(std::move(p));
  }
  return out;
}

MethodReport integral_flow_poly(const MultiGraph& g, IntegralMethod method,
                                const Limits& limits) {
  const auto start = Clock::now();
  MethodReport report{to_string(method), {}, {}, 0.0};
  const int n = cycle_rank(g);
  switch (method) {
    case IntegralMethod::kSumOrientations: {
      const auto tc = totally_cyclic_orientations(g, limits);
      for (const LocalPolys& p : local_flow_polys_for(g, tc, limits)) {
        report.poly += p.open;
      }
      break;
    }
    case IntegralMethod::kInterp: {
      const Orientation eps(g.edge_count());
      for (int q = 1; q <= n + 1; ++q) {
        report.samples.push_back({q, BigInt(count_nowhere_zero_integer(g, eps, q, limits))});
      }
      report.poly = interpolate_counts(report.samples, n);
      break;
    }
  }
  report.wall_ms = elapsed_ms(start);
  return report;
}

DualPolys dual_polys(const MultiGraph& g, const Limits& limits) {
  DualPolys out;
  const auto classes = eulerian_classes(g, true, limits);
  std::vector<Orientation> tc;
  for (const auto& cls : classes) {
    tc.insert(tc.end(), cls.members.begin(), cls.members.end());
  }
  const auto locals = local_flow_polys_for(g, tc, limits);
  std::size_t at = 0;
  for (const auto& cls : classes) {
    const std::size_t first = at;
    for (std::size_t k = 0; k < cls.members.size(); ++k, ++at) {
      out.integral_dual += locals[at].closed;
    }
    out.modular_dual += locals[first].closed;
    out.modular_dual_alternate += locals[at - 1].closed;
    out.classes.push_back({cls, locals[first].closed});
  }
  return out;
}

RationalPoly modular_dual_flow_poly_from_reciprocity(const MultiGraph& g,
                                                     const Limits& limits) {
  return reciprocity_transform(modular_flow_poly(g, ModularMethod::kTutte, limits).poly,
                               cycle_rank(g));
}

TutteSpecializations tutte_specializations(const MultiGraph& g,
                                           const Limits& limits) {
  const RationalBiPoly t = tutte(g, limits);
  TutteSpecializations s;
  s.t01 = t.evaluate(0, 1);
  s.t02 = t.evaluate(0, 2);
  s.modular = t.substitute(RationalPoly(), RationalPoly::affine(1, -1)) *
              sign_power(cycle_rank(g));
  s.modular_dual = t.substitute(RationalPoly(), RationalPoly::affine(1, 1));
  return s;
}

Bs1Result bs1_check(const MultiGraph& g, std::int64_t q, const Limits& limits) {
  if (q < 1) throw DomainError("BS1 needs q >= 1");
  require_subsets(g, limits);
  const int m = g.edge_count();
  Bs1Result out;
  out.q = q;
  out.lhs = modular_flow_poly(g, ModularMethod::kSubset, limits).poly.evaluate(-q);

  auto chunks = detail::parallel_chunks<std::vector<Bs1Term>>(
      std::uint64_t{1} << m, limits.jobs,
      [&](std::uint64_t begin, std::uint64_t end) {
        std::vector<Bs1Term> terms;
        for (std::uint64_t x = begin; x < end; ++x) {
          const EdgeSubset sub(m, x);
          const MultiGraph part = induced(g, sub);
          const std::uint64_t phi =
              count_modular_flows(part, Orientation(part.edge_count()), q, true, limits);
          if (phi == 0) continue;
          const std::uint64_t tc = count_totally_cyclic(contract_edges(g, sub), limits);
          if (tc == 0) continue;
          terms.push_back({sub, phi, tc});
        }
        return terms;
      });
  BigInt sum = 0;
  for (auto& c : chunks) {
    for (auto& t : c) {
      sum += BigInt(t.modular_count) * BigInt(t.totally_cyclic_contracted);
      out.terms.push_back(std::move(t));
    }
  }
  out.rhs = Rational(sum) * sign_power(cycle_rank(g));
  out.holds = out.lhs == out.rhs;
  return out;
}

BigInt s_n_closed_form(int n, std::int64_t q) {
  if (n < 0 || q < 1) throw DomainError("s_n needs n >= 0 and q >= 1");
  if (n == 0) return 1;
  BigInt s = binomial(n * q - 1, n - 1);
  const std::int64_t jmax = n * (q - 1) / (2 * q - 1);
  for (std::int64_t j = 1; j <= jmax; ++j) {
    // Shift j variables down by 2q-1 and count nonnegative solutions.
    const BigInt term = binomial(n, j) * binomial(n * (q - 1) - j * (2 * q - 1) + n - 1, n - 1);
    s += j % 2 == 0 ? term : BigInt(-term);
  }
  return s;
}

}  // namespace flowpoly
