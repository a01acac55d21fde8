#include <gtest/gtest.h>

#include <random>

#include "aqubo/errors.hpp"
#include "aqubo/generators.hpp"
#include "aqubo/oracles.hpp"
#include "test_support.hpp"

using namespace aqubo;
using namespace aqubo::sat;

namespace {

Formula random_formula(std::uint32_t vars, std::uint32_t clauses, std::uint32_t k,
                       std::mt19937_64& rng) {
  Formula f{vars, {}};
  for (std::uint32_t c = 0; c < clauses; ++c) {
    Clause clause;
    for (std::uint32_t i = 0; i < k; ++i) {
      clause.push_back({static_cast<std::uint32_t>(rng() % vars), (rng() & 1U) != 0});
    }
    f.clauses.push_back(clause);
  }
  return f;
}

std::size_t naive_min_unsat(const Formula& f) {
  std::size_t best = f.clauses.size();
  for (const auto& x : test_support::all_vectors(f.variable_count)) {
    best = std::min(best, count_unsatisfied(f, x));
  }
  return best;
}

}  // namespace

TEST(MaxSat, ComplementaryUnits) {
  const Formula f{1, {{pos(0)}, {neg(0)}}};
  EXPECT_EQ(oracle::maxsat_min_unsat(f).min_unsat, 1u);
  EXPECT_EQ(oracle::maxsat_branch_and_bound(f).min_unsat, 1u);
}

TEST(MaxSat, SatisfiableIsZero) {
  const Formula f{3, {{pos(0), neg(1)}, {pos(1), pos(2)}, {neg(0), neg(2)}}};
  const auto r = oracle::maxsat_min_unsat(f);
  EXPECT_EQ(r.min_unsat, 0u);
  EXPECT_EQ(count_unsatisfied(f, r.witness), 0u);
}

TEST(MaxSat, EightVariableFourSatMatchesEnumeration) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_formula(8, 20 + rng() % 40, 4, rng);
    const auto expected = naive_min_unsat(f);
    EXPECT_EQ(oracle::maxsat_enumerate(f).min_unsat, expected);
    EXPECT_EQ(oracle::maxsat_branch_and_bound(f).min_unsat, expected);
  }
}

TEST(MaxSat, ModesAgreeOnOverlap) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 40; ++trial) {
    const std::uint32_t vars = 10 + rng() % 11;
    const auto f = random_formula(vars, 4 * vars + rng() % 30, 2 + rng() % 2, rng);
    const auto a = oracle::maxsat_enumerate(f);
    const auto b = oracle::maxsat_branch_and_bound(f);
    EXPECT_EQ(a.min_unsat, b.min_unsat);
    EXPECT_EQ(count_unsatisfied(f, b.witness), b.min_unsat);
  }
}

TEST(MaxSat, Capacity) {
  Formula big{27, {{pos(0)}}};
  EXPECT_THROW(oracle::maxsat_enumerate(big), CapacityError);
  EXPECT_NO_THROW(oracle::maxsat_min_unsat(big));
  Formula huge{41, {{pos(0)}}};
  EXPECT_THROW(oracle::maxsat_min_unsat(huge), CapacityError);
}

TEST(Dpll, EmptyClause) {
  EXPECT_FALSE(oracle::is_satisfiable(Formula{2, {{pos(0)}, {}}}).satisfiable);
}

TEST(Dpll, ModelSatisfiesFormula) {
  const Formula f{4, {{pos(0), pos(1)}, {neg(0)}, {neg(1), pos(2), neg(3)}, {pos(3)}}};
  const auto r = oracle::is_satisfiable(f);
  ASSERT_TRUE(r.satisfiable);
  EXPECT_EQ(count_unsatisfied(f, r.model), 0u);
}

TEST(Dpll, AgreesWithMaxSatOnRandomInstances) {
  std::mt19937_64 rng(20);
  int sat = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint32_t vars = 3 + rng() % 10;
    const auto f = random_formula(vars, vars * (2 + rng() % 4), 3, rng);
    const auto r = oracle::is_satisfiable(f);
    EXPECT_EQ(r.satisfiable, oracle::maxsat_min_unsat(f).min_unsat == 0);
    if (r.satisfiable) {
      ++sat;
      EXPECT_EQ(count_unsatisfied(f, r.model), 0u);
    }
  }
  EXPECT_GT(sat, 20);
  EXPECT_LT(sat, 180);
}

TEST(CycleSearch, SmallCases) {
  const hc::Graph cycle(3, {{0, 1}, {1, 2}, {2, 0}});
  EXPECT_EQ(oracle::find_hamiltonian_cycle(cycle), (hc::Cycle{0, 1, 2}));
  const hc::Graph broken(3, {{0, 1}, {1, 2}});
  EXPECT_FALSE(oracle::find_hamiltonian_cycle(broken));
}

TEST(CycleSearch, PlantedGraphsAlwaysHaveCycle) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::uint32_t n = 3 + seed % 15;
    const bool directed = seed % 2 == 0;
    const std::uint32_t most = directed ? n * (n - 1) : n * (n - 1) / 2;
    const std::uint32_t m = std::min<std::uint32_t>(most, n + seed % 20);
    const auto g = gen::gen_graph({n, m, directed, seed, true});
    const auto c = oracle::find_hamiltonian_cycle(g);
    ASSERT_TRUE(c);
    EXPECT_FALSE(hc::check_cycle(g, *c));
  }
}

TEST(CycleSearch, Capacity) {
  EXPECT_THROW(oracle::find_hamiltonian_cycle(hc::complete_graph(21)), CapacityError);
}
