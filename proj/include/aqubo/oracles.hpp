#pragma once

// Classical ground truth used to judge the QUBO compilations. Every answer
// is checked against the instance before it is returned.

#include <cstddef>
#include <optional>

#include "aqubo/formula.hpp"
#include "aqubo/graph.hpp"
#include "aqubo/qubo.hpp"

namespace aqubo::oracle {

struct MaxSatResult {
  std::size_t min_unsat = 0;
  Bits witness;
};

constexpr std::size_t kEnumerationLimit = 26;
constexpr std::size_t kBranchAndBoundLimit = 40;

/// Visits all 2^|X| assignments. CapacityError above kEnumerationLimit.
MaxSatResult maxsat_enumerate(const sat::Formula& f);

/// Depth-first search pruned by the count of already falsified clauses.
/// CapacityError above kBranchAndBoundLimit.
MaxSatResult maxsat_branch_and_bound(const sat::Formula& f);

/// Enumeration up to 20 variables, branch and bound above.
MaxSatResult maxsat_min_unsat(const sat::Formula& f);

struct SatResult {
  bool satisfiable = false;
  Bits model;
};

/// DPLL with unit propagation.
SatResult is_satisfiable(const sat::Formula& f);

constexpr std::uint32_t kCycleSearchLimit = 20;

/// Backtracking from the start vertex. CapacityError above
/// kCycleSearchLimit vertices.
std::optional<hc::Cycle> find_hamiltonian_cycle(const hc::Graph& g);

}  // namespace aqubo::oracle
