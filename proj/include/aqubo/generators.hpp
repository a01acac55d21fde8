#pragma once

// Seeded instance generators. Output depends only on (parameters, seed); no
// implementation-defined standard distributions are involved.

#include <cstdint>

#include "aqubo/formula.hpp"
#include "aqubo/graph.hpp"

namespace aqubo::gen {

struct SatSpec {
  std::uint32_t variables = 0;
  std::uint32_t clauses = 0;
  std::uint32_t k = 3;
  std::uint64_t seed = 0;
  bool require_satisfiable = false;
  std::uint32_t max_attempts = 1000;
};

/// Uniform random k-SAT: each clause draws k distinct variables with
/// independent polarities. With require_satisfiable, formulas are redrawn
/// until the DPLL oracle finds a model; GenerationError after max_attempts.
sat::Formula gen_sat(const SatSpec& spec);

struct GraphSpec {
  std::uint32_t vertices = 0;
  /// Directed edge count, or unordered pair count when undirected.
  std::uint32_t edges = 0;
  bool directed = true;
  std::uint64_t seed = 0;
  bool plant_cycle = true;
};

/// With plant_cycle, the cycle through a random vertex permutation is
/// included first; remaining edges are distinct uniform picks. Edge order is
/// shuffled. GenerationError when the edge count is infeasible.
hc::Graph gen_graph(const GraphSpec& spec);

}  // namespace aqubo::gen
