#include <gtest/gtest.h>

#include <set>

#include "aqubo/errors.hpp"
#include "aqubo/generators.hpp"
#include "aqubo/oracles.hpp"

using namespace aqubo;

TEST(GenSat, SatisfiableFourSat) {
  const auto f = gen::gen_sat({8, 4, 4, 1, true});
  ASSERT_EQ(f.clauses.size(), 4u);
  for (const auto& clause : f.clauses) {
    ASSERT_EQ(clause.size(), 4u);
    std::set<std::uint32_t> vars;
    for (const auto& l : clause) vars.insert(l.variable);
    EXPECT_EQ(vars.size(), 4u);
  }
  EXPECT_TRUE(oracle::is_satisfiable(f).satisfiable);
}

TEST(GenSat, Reproducible) {
  const gen::SatSpec spec{12, 30, 3, 77, false};
  EXPECT_EQ(gen::gen_sat(spec), gen::gen_sat(spec));
  auto other = spec;
  other.seed = 78;
  EXPECT_NE(gen::gen_sat(spec), gen::gen_sat(other));
}

TEST(GenSat, Errors) {
  EXPECT_THROW(gen::gen_sat({3, 2, 4, 0, false}), GenerationError);
  // 2 variables, 40 random 2-clauses: essentially never satisfiable.
  try {
    gen::gen_sat({2, 40, 2, 0, true, 5});
    FAIL();
  } catch (const GenerationError& e) {
    EXPECT_NE(std::string(e.what()).find("ratio 20"), std::string::npos);
  }
}

TEST(GenGraph, PlantedCycleFound) {
  const auto g = gen::gen_graph({6, 24, true, 3, true});
  EXPECT_EQ(g.edges().size(), 24u);
  EXPECT_TRUE(oracle::find_hamiltonian_cycle(g));
}

TEST(GenGraph, OnlyCycleEdges) {
  const auto g = gen::gen_graph({6, 6, true, 4, true});
  ASSERT_EQ(g.edges().size(), 6u);
  std::vector<int> out(6, 0), in(6, 0);
  for (const auto& e : g.edges()) {
    ++out[e.tail];
    ++in[e.head];
  }
  for (int v = 0; v < 6; ++v) {
    EXPECT_EQ(out[v], 1);
    EXPECT_EQ(in[v], 1);
  }
  EXPECT_TRUE(oracle::find_hamiltonian_cycle(g));
}

TEST(GenGraph, FullyConnected) {
  EXPECT_EQ(gen::gen_graph({7, 42, true, 0, true}).edges().size(), 42u);
  EXPECT_EQ(gen::gen_graph({7, 21, false, 0, true}).edges().size(), 42u);
}

TEST(GenGraph, Reproducible) {
  const gen::GraphSpec spec{9, 25, true, 5, true};
  EXPECT_EQ(gen::gen_graph(spec), gen::gen_graph(spec));
}

TEST(GenGraph, Infeasible) {
  EXPECT_THROW(gen::gen_graph({5, 21, true, 0, true}), GenerationError);
  EXPECT_THROW(gen::gen_graph({5, 11, false, 0, true}), GenerationError);
  EXPECT_THROW(gen::gen_graph({5, 4, true, 0, true}), GenerationError);
  EXPECT_THROW(gen::gen_graph({2, 2, true, 0, true}), GenerationError);
  EXPECT_NO_THROW(gen::gen_graph({5, 4, true, 0, false}));
}
