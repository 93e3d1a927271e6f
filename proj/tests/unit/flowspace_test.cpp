#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "corpus.hpp"
#include "flowpoly/errors.hpp"
#include "flowpoly/flowspace.hpp"
#include "oracles.hpp"

namespace flowpoly {
namespace {

using testing::bond;
namespace oracle = testing::oracle;
using Values = std::vector<std::int64_t>;

TEST(Flowspace, IsFlow) {
  const MultiGraph b2 = bond(2);
  const Orientation eps(2);
  EXPECT_TRUE(is_flow(b2, eps, Values{0, 0}));
  EXPECT_TRUE(is_flow(b2, eps, Values{3, -3}));
  EXPECT_FALSE(is_flow(b2, eps, Values{1, 1}));
  EXPECT_TRUE(is_flow(b2, eps, Values{1, 1}, 2));
  EXPECT_TRUE(is_flow(testing::single_loop(), Orientation(1), Values{5}));
}

TEST(Flowspace, FlowFromCotree) {
  const MultiGraph b2 = bond(2);
  const CircuitBasis basis(b2, Orientation(2));
  EXPECT_EQ(basis.flow_from_cotree(Values{0}).values, (Values{0, 0}));
  EXPECT_EQ(basis.flow_from_cotree(Values{4}).values, (Values{-4, 4}));
  const MultiGraph tri = testing::triangle();
  EXPECT_EQ(CircuitBasis(tri, Orientation(3)).flow_from_cotree(Values{1}).values,
            (Values{1, 1, 1}));
}

TEST(Flowspace, ModularFlows) {
  const MultiGraph b4 = bond(4);
  const Orientation eps(4);
  EXPECT_EQ(enumerate_modular_flows(b4, eps, 1, false).size(), 1U);
  EXPECT_EQ(count_modular_flows(b4, eps, 1, true), 0U);
  EXPECT_EQ(enumerate_modular_flows(b4, eps, 2, false).size(), 8U);
  EXPECT_EQ(count_modular_flows(b4, eps, 2, true), 1U);
  EXPECT_EQ(count_modular_flows(b4, eps, 3, true), 6U);
  for (const FlowVector& f : enumerate_modular_flows(b4, eps, 3, false)) {
    EXPECT_EQ(f.modulus, std::optional<std::int64_t>(3));
    EXPECT_TRUE(is_flow(b4, eps, f.values, 3));
  }
}

TEST(Flowspace, OpenAndClosedCounts) {
  EXPECT_EQ(count_integer_flows_open(bond(2), Orientation::parse("01"), 5), 4U);
  EXPECT_EQ(count_integer_flows_closed(bond(2), Orientation::parse("01"), 0), 1U);
  EXPECT_EQ(count_integer_flows_closed(bond(4), Orientation::parse("0011"), 1), 6U);
  EXPECT_EQ(count_integer_flows_open(bond(4), Orientation::parse("0000"), 7), 0U);
}

TEST(Flowspace, NowhereZeroIntegerCounts) {
  EXPECT_EQ(count_nowhere_zero_integer(bond(4), Orientation(4), 2), 6U);
  for (std::int64_t q = 1; q <= 6; ++q) {
    EXPECT_EQ(count_nowhere_zero_integer(bond(2), Orientation(2), q),
              static_cast<std::uint64_t>(2 * (q - 1)));
  }
  EXPECT_EQ(count_nowhere_zero_integer(testing::k4(), Orientation(6), 1), 0U);
}

TEST(Flowspace, ZeroOneFlows) {
  const auto b4 = zero_one_flows(bond(4), Orientation::parse("0111"));
  EXPECT_EQ(b4.size(), 4U);
  EXPECT_EQ(b4.front().values, (Values{0, 0, 0, 0}));
  EXPECT_EQ(zero_one_flows(testing::single_loop(), Orientation(1)).size(), 2U);
}

TEST(Flowspace, Eta) {
  const MultiGraph b2 = bond(2);
  EXPECT_EQ(eta(b2, Orientation(2), Values{3, -3}), 0);
  EXPECT_EQ(eta(b2, Orientation(2), Values{1, 1}), 4);
}

TEST(Flowspace, LiftWithoutIterations) {
  const LiftResult r = lift_modular_flow(bond(2), Orientation::parse("01"), Values{2, 2}, 3);
  EXPECT_EQ(r.flow.values, (Values{2, 2}));
  EXPECT_EQ(r.iterations, 0);
  EXPECT_EQ(r.final_eta, 0);
}

TEST(Flowspace, LiftFlipsOnePath) {
  const LiftResult r = lift_modular_flow(bond(2), Orientation(2), Values{1, 2}, 3);
  EXPECT_EQ(r.flow.values, (Values{1, -1}));
  EXPECT_EQ(r.iterations, 1);
  EXPECT_EQ(r.orientation.to_string(), "01");
}

TEST(Flowspace, LiftRejectsBadInput) {
  EXPECT_THROW(lift_modular_flow(bond(2), Orientation(2), Values{1, 1}, 3), DomainError);
  EXPECT_THROW(lift_modular_flow(bond(2), Orientation(2), Values{0, 0}, 3), DomainError);
  EXPECT_THROW(lift_modular_flow(bond(2), Orientation(2), Values{1}, 3), DomainError);
  EXPECT_THROW(lift_modular_flow(bond(2), Orientation(3), Values{1, 2}, 3), DomainError);
}

TEST(Flowspace, EnumerationCapIsEnforced) {
  Limits tight;
  tight.max_enumeration = 10;
  EXPECT_THROW(count_modular_flows(bond(4), Orientation(4), 5, true, tight), ResourceError);
  EXPECT_THROW(count_nowhere_zero_integer(testing::k4(), Orientation(6), 4, tight),
               ResourceError);
}

TEST(FlowspaceProperty, CountsAgainstBruteForce) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 150; ++trial) {
    const MultiGraph g = testing::random_multigraph(rng, 4, 6);
    const Orientation rho(g.edge_count(), rng() & oracle::all_mask(g));
    for (std::int64_t q = 1; q <= 3; ++q) {
      ASSERT_EQ(count_integer_flows_open(g, rho, q), oracle::count_flows(g, rho.mask(), 1, q - 1, false));
      ASSERT_EQ(count_integer_flows_closed(g, rho, q), oracle::count_flows(g, rho.mask(), 0, q, false));
      ASSERT_EQ(count_nowhere_zero_integer(g, rho, q),
                oracle::count_flows(g, rho.mask(), 1 - q, q - 1, true));
      ASSERT_EQ(count_modular_flows(g, Orientation(g.edge_count()), q, true),
                oracle::count_modular_nowhere_zero(g, q));
    }
    // 0-1 flows are the directed Eulerian edge sets.
    std::set<std::uint64_t> supports;
    for (const FlowVector& f : zero_one_flows(g, rho)) {
      std::uint64_t mask = 0;
      for (int e = 0; e < g.edge_count(); ++e) {
        if (f[e] == 1) mask |= std::uint64_t{1} << e;
      }
      supports.insert(mask);
    }
    std::set<std::uint64_t> eulerian;
    for (std::uint64_t x = 0; x <= oracle::all_mask(g); ++x) {
      if (oracle::balanced(g, rho.mask(), x)) eulerian.insert(x);
      if (x == oracle::all_mask(g)) break;
    }
    EXPECT_EQ(supports, eulerian);
  }
}

TEST(FlowspaceProperty, EtaIsAMultipleOfTwoQOnModularFlows) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const MultiGraph g = testing::random_multigraph(rng, 4, 6);
    const Orientation eps(g.edge_count());
    for (std::int64_t q = 2; q <= 4; ++q) {
      for_each_modular_flow(g, eps, q, false, Limits{}, [&](std::span<const std::int64_t> f) {
        EXPECT_EQ(eta(g, eps, f) % (2 * q), 0);
      });
    }
  }
}

TEST(FlowspaceProperty, LiftingAndFibersOnBridgelessGraphs) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const MultiGraph g = testing::random_bridgeless(rng, 4, 6);
    const Orientation eps(g.edge_count(), rng() & oracle::all_mask(g));
    for (std::int64_t q = 2; q <= 4; ++q) {
      std::set<Values> modular;
      for (const FlowVector& r : enumerate_modular_flows(g, eps, q, true)) {
        modular.insert(r.values);
        const LiftResult lift = lift_modular_flow(g, eps, r.values, q);
        ASSERT_TRUE(is_flow(g, eps, lift.flow.values));
        for (int e = 0; e < g.edge_count(); ++e) {
          const std::int64_t v = lift.flow[e];
          EXPECT_NE(v, 0);
          EXPECT_LT(v < 0 ? -v : v, q);
          EXPECT_EQ(((v % q) + q) % q, r[e]);
        }
      }
      // Reduction is onto; congruent lifts induce equivalent orientations
      // and split by induced orientation into open cones.
      std::map<Values, std::vector<Orientation>> fibers;
      std::map<std::uint64_t, std::uint64_t> cones;
      for_each_nowhere_zero_integer_flow(g, eps, q, Limits{}, [&](std::span<const std::int64_t> f) {
        Values r(f.size());
        for (std::size_t e = 0; e < f.size(); ++e) r[e] = ((f[e] % q) + q) % q;
        const Orientation induced = induced_orientation(eps, f);
        fibers[r].push_back(induced);
        ++cones[induced.mask()];
      });
      std::set<Values> image;
      for (const auto& [r, orientations] : fibers) {
        image.insert(r);
        for (const Orientation& o : orientations) {
          EXPECT_TRUE(oracle::equivalent(g, orientations.front().mask(), o.mask()));
        }
        EXPECT_EQ(orientations.size(), eulerian_class(g, orientations.front()).members.size());
      }
      EXPECT_EQ(image, modular);
      for (const auto& [mask, count] : cones) {
        const Orientation rho(g.edge_count(), mask);
        EXPECT_TRUE(is_totally_cyclic(g, rho));
        EXPECT_EQ(count, count_integer_flows_open(g, rho, q));
      }
    }
  }
}

TEST(FlowspaceProperty, InducedOrientationOfConeFlows) {
  // A flow whose P-image under rho is strictly positive induces rho.
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const MultiGraph g = testing::random_bridgeless(rng, 4, 6);
    const Orientation eps(g.edge_count());
    for (const Orientation& rho : totally_cyclic_orientations(g)) {
      for_each_flow_in_range(CircuitBasis(g, rho), {1, 2, false}, Limits{},
                             [&](std::span<const std::int64_t> f) {
                               EXPECT_EQ(induced_orientation(eps, apply_P(eps, rho, f)), rho);
                             });
    }
  }
}

}  // namespace
}  // namespace flowpoly
