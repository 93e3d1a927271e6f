#include <gtest/gtest.h>

#include <random>

#include "corpus.hpp"
#include "flowpoly/counting.hpp"
#include "flowpoly/errors.hpp"
#include "flowpoly/flat_poset.hpp"
#include "oracles.hpp"

namespace flowpoly {
namespace {

using testing::bond;
namespace oracle = testing::oracle;

RationalPoly poly(std::initializer_list<Rational> ascending) {
  return RationalPoly(std::vector<Rational>(ascending));
}

Rational frac(int n, int d) { return Rational(BigInt(n), BigInt(d)); }

const RationalPoly kB4Modular = poly({-3, 6, -4, 1});
const RationalPoly kB4Integral = poly({-14, frac(86, 3), -20, frac(16, 3)});

TEST(Tutte, BaseCasesAndTriangle) {
  EXPECT_EQ(tutte(testing::single_edge()), RationalBiPoly::x());
  EXPECT_EQ(tutte(testing::single_loop()), RationalBiPoly::y());
  EXPECT_EQ(tutte(testing::edgeless()), RationalBiPoly::constant(1));
  const RationalBiPoly tri = tutte(testing::triangle());
  EXPECT_EQ(tri, oracle::tutte_subset_sum(testing::triangle()));
  EXPECT_EQ(tri.to_string(), "x^2 + x + y");
}

TEST(Tutte, EdgeCap) {
  Limits tight;
  tight.max_edges = 3;
  EXPECT_THROW(tutte(bond(4), tight), ResourceError);
}

TEST(ModularFlowPoly, B4AllMethods) {
  for (ModularMethod m : {ModularMethod::kTutte, ModularMethod::kSubset, ModularMethod::kInterp,
                          ModularMethod::kCharpoly}) {
    const MethodReport r = modular_flow_poly(bond(4), m);
    EXPECT_EQ(r.poly, kB4Modular) << r.method;
    EXPECT_EQ(r.method, to_string(m));
  }
  EXPECT_EQ(modular_flow_poly(bond(4), ModularMethod::kInterp).samples.size(), 4U);
}

TEST(ModularFlowPoly, BridgeAndK4) {
  EXPECT_TRUE(modular_flow_poly(testing::single_edge(), ModularMethod::kTutte).poly.is_zero());
  const RationalPoly k4 = poly({-6, 11, -6, 1});
  for (ModularMethod m : {ModularMethod::kTutte, ModularMethod::kSubset, ModularMethod::kInterp,
                          ModularMethod::kCharpoly}) {
    EXPECT_EQ(modular_flow_poly(testing::k4(), m).poly, k4) << to_string(m);
  }
  // The subset-sum oracle, evaluated on its own.
  const RationalBiPoly t = oracle::tutte_subset_sum(testing::k4());
  EXPECT_EQ(t.substitute(RationalPoly(), RationalPoly::affine(1, -1)) * Rational(-1), k4);
}

TEST(ModularFlowPoly, MethodNames) {
  EXPECT_EQ(parse_modular_method("charpoly"), ModularMethod::kCharpoly);
  EXPECT_EQ(parse_integral_method("sum-orientations"), IntegralMethod::kSumOrientations);
  EXPECT_THROW(parse_modular_method("fft"), DomainError);
  EXPECT_THROW(parse_integral_method("tutte"), DomainError);
}

TEST(ModularFlowPoly, SubsetCap) {
  Limits tight;
  tight.max_subsets = 8;
  EXPECT_THROW(modular_flow_poly(bond(4), ModularMethod::kSubset, tight), ResourceError);
  EXPECT_THROW(modular_flow_poly(bond(4), ModularMethod::kCharpoly, tight), ResourceError);
}

TEST(IntegralFlowPoly, Examples) {
  for (IntegralMethod m : {IntegralMethod::kSumOrientations, IntegralMethod::kInterp}) {
    const RationalPoly b4 = integral_flow_poly(bond(4), m).poly;
    EXPECT_EQ(b4, kB4Integral) << to_string(m);
    EXPECT_EQ(b4.evaluate(2), Rational(6));
    EXPECT_EQ(b4.evaluate(3), Rational(36));
    EXPECT_EQ(integral_flow_poly(bond(2), m).poly, poly({-2, 2}));
    EXPECT_EQ(integral_flow_poly(testing::single_loop(), m).poly, poly({-2, 2}));
    EXPECT_EQ(integral_flow_poly(testing::edgeless(), m).poly, poly({1}));
  }
}

TEST(LocalFlowPolys, Examples) {
  const LocalPolys cycle = local_flow_polys(bond(2), Orientation::parse("01"));
  EXPECT_TRUE(cycle.totally_cyclic);
  EXPECT_EQ(cycle.open, poly({-1, 1}));
  EXPECT_EQ(cycle.closed, poly({1, 1}));
  const std::vector<std::string> eps_k = {"1111", "0111", "0011", "0001", "0000"};
  const std::vector<int> at_one = {1, 4, 6, 4, 1};
  for (std::size_t k = 0; k < eps_k.size(); ++k) {
    const LocalPolys p = local_flow_polys(bond(4), Orientation::parse(eps_k[k]));
    EXPECT_EQ(p.closed.evaluate(1), Rational(at_one[k])) << eps_k[k];
  }
  const LocalPolys cut = local_flow_polys(bond(4), Orientation::parse("0000"));
  EXPECT_FALSE(cut.totally_cyclic);
  EXPECT_TRUE(cut.open.is_zero());
}

TEST(DualPolys, Examples) {
  const DualPolys b4 = dual_polys(bond(4));
  EXPECT_EQ(b4.modular_dual.evaluate(0), Rational(3));
  EXPECT_EQ(b4.integral_dual.evaluate(0), Rational(14));
  EXPECT_EQ(b4.modular_dual, b4.modular_dual_alternate);
  EXPECT_EQ(b4.classes.size(), 3U);
  const DualPolys loop = dual_polys(testing::single_loop());
  EXPECT_EQ(loop.modular_dual, poly({1, 1}));
  EXPECT_EQ(loop.integral_dual, poly({2, 2}));
}

TEST(Reciprocity, ModularDualExamples) {
  EXPECT_EQ(modular_dual_flow_poly_from_reciprocity(bond(4)), poly({3, 6, 4, 1}));
  EXPECT_TRUE(modular_dual_flow_poly_from_reciprocity(testing::single_edge()).is_zero());
  EXPECT_EQ(modular_dual_flow_poly_from_reciprocity(testing::triangle()), poly({1, 1}));
  EXPECT_EQ(modular_dual_flow_poly_from_reciprocity(bond(4)), dual_polys(bond(4)).modular_dual);
}

TEST(TutteSpecializations, Examples) {
  const TutteSpecializations b4 = tutte_specializations(bond(4));
  EXPECT_EQ(b4.t01, Rational(3));
  EXPECT_EQ(b4.t02, Rational(14));
  EXPECT_EQ(b4.modular, kB4Modular);
  const TutteSpecializations tri = tutte_specializations(testing::triangle());
  EXPECT_EQ(tri.t01, Rational(1));
  EXPECT_EQ(tri.t02, Rational(2));
  const TutteSpecializations k4 = tutte_specializations(testing::k4());
  EXPECT_EQ(k4.t02, Rational(24));
  EXPECT_EQ(k4.t01, Rational(6));
}

TEST(Bs1, Examples) {
  const Bs1Result b4 = bs1_check(bond(4), 1);
  EXPECT_TRUE(b4.holds);
  EXPECT_EQ(b4.lhs, Rational(-14));
  EXPECT_EQ(b4.rhs, Rational(-14));
  const Bs1Result loop = bs1_check(testing::single_loop(), 2);
  EXPECT_TRUE(loop.holds);
  EXPECT_EQ(loop.lhs, Rational(-3));
  const Bs1Result b2 = bs1_check(bond(2), 3);
  EXPECT_TRUE(b2.holds);
  EXPECT_EQ(b2.lhs, Rational(-4));
  EXPECT_THROW(bs1_check(bond(2), 0), DomainError);
}

TEST(SnClosedForm, MatchesBruteForce) {
  for (int n = 0; n <= 5; ++n) {
    for (std::int64_t q = 1; q <= 5; ++q) {
      EXPECT_EQ(s_n_closed_form(n, q), oracle::s_n_brute(n, q)) << n << " " << q;
    }
  }
  EXPECT_EQ(s_n_closed_form(4, 2), 19);
}

TEST(FlatPoset, B4AndBridge) {
  const FlatPoset b4 = FlatPoset::build(bond(4));
  EXPECT_EQ(b4.top().key, bond(4).all_edges());
  EXPECT_EQ(b4.characteristic_polynomial(), kB4Modular);
  for (std::size_t x = 1; x < b4.flats().size(); ++x) EXPECT_EQ(b4.mobius_interval_sum(x), 0);
  // Keys are closed under taking cyclic parts.
  for (const Flat& f : b4.flats()) EXPECT_EQ(cyclic_part(bond(4), f.key), f.key);
  const FlatPoset br = FlatPoset::build(testing::bridge_graph());
  EXPECT_EQ(br.top().key.indices(), (std::vector<int>{0, 1, 2}));
  EXPECT_TRUE(br.characteristic_polynomial().is_zero());
}

TEST(CountingProperty, TutteMatchesSubsetSum) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 150; ++trial) {
    const MultiGraph g = testing::random_multigraph(rng, 5, 8);
    ASSERT_EQ(tutte(g), oracle::tutte_subset_sum(g));
  }
}

TEST(CountingProperty, FourMethodsAgreeWithCounts) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const MultiGraph g = testing::random_multigraph(rng, 5, 8);
    const RationalPoly phi = modular_flow_poly(g, ModularMethod::kTutte).poly;
    for (ModularMethod m : {ModularMethod::kSubset, ModularMethod::kInterp, ModularMethod::kCharpoly}) {
      ASSERT_EQ(modular_flow_poly(g, m).poly, phi) << to_string(m);
    }
    for (std::int64_t q = 1; q <= 3; ++q) {
      EXPECT_EQ(phi.evaluate(q), Rational(static_cast<std::int64_t>(oracle::count_modular_nowhere_zero(g, q))));
    }
  }
}

TEST(CountingProperty, ParallelResultsDoNotDependOnJobs) {
  std::mt19937_64 rng(47);
  Limits many;
  many.jobs = 4;
  for (int trial = 0; trial < 20; ++trial) {
    const MultiGraph g = testing::random_bridgeless(rng, 4, 7);
    EXPECT_EQ(modular_flow_poly(g, ModularMethod::kSubset, many).poly,
              modular_flow_poly(g, ModularMethod::kSubset).poly);
    EXPECT_EQ(integral_flow_poly(g, IntegralMethod::kSumOrientations, many).poly,
              integral_flow_poly(g, IntegralMethod::kSumOrientations).poly);
    EXPECT_EQ(bs1_check(g, 2, many).terms.size(), bs1_check(g, 2).terms.size());
  }
}

}  // namespace
}  // namespace flowpoly
