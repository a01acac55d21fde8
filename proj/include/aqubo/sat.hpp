#pragma once

// Logarithmic-ancilla QUBO compilation of (Max) k-SAT.
//
// A clause with k >= 4 literals gets h = ceil(log2(k+1)) fresh ancillas that
// must binary-encode the number of satisfied literals (a squared equality
// penalty). "At least one literal holds" then becomes the all-positive clause
// over those ancillas, compiled recursively until an anchor is reached: a
// product penalty for 2 literals, a one-ancilla gadget for 3.
//
// For every assignment of the problem variables, the minimum energy over the
// ancillas equals the number of unsatisfied clauses.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "aqubo/formula.hpp"
#include "aqubo/qubo.hpp"

namespace aqubo::sat {

/// Ancillas added per k-literal clause: r(2)=0, r(3)=1,
/// r(k) = h + r(h) with h = ceil(log2(k+1)) for k >= 4.
/// Throws DomainError for k < 2.
std::uint32_t ancilla_count(std::uint32_t k);

/// Ancilla count of each recursion level for a k-literal clause, e.g.
/// {4, 3, 1} for k = 8. Empty for k <= 2.
std::vector<std::uint32_t> ancilla_levels(std::uint32_t k);

/// |X| + sum over clauses of r(len(C)), with unit clauses contributing 0.
std::size_t predicted_dimension(const Formula& f);

struct SatCompilation {
  QuboAccumulator qubo;
  VariableRegistry registry;
  std::uint32_t variable_count = 0;
  /// clause -> level -> ancilla ids (bit order).
  std::vector<std::vector<std::vector<VariableId>>> clause_ancillas;
};

/// Incremental builder exposing the individual penalty gadgets. compile()
/// drives it over a whole formula.
class SatCompiler {
 public:
  /// Registers problem variables 0..variable_count-1 as the registry prefix.
  explicit SatCompiler(std::uint32_t variable_count);

  /// x for a positive literal, 1 - x for a negated one.
  AffineExpr literal_expr(Literal lit) const;

  /// Penalty (1 - v1)(1 - v2): 1 if both literals are false, else 0.
  void or_gadget(std::span<const AffineExpr> literals);

  /// Penalty 1 - S + sum_{i<j} v_i v_j + w (2 - S), S = v1 + v2 + v3.
  /// Minimized over the ancilla w it is 0 when the clause holds, else 1.
  void threesat_gadget(std::span<const AffineExpr> literals,
                       VariableId ancilla);

  /// Penalty (sum v_l - sum_j 2^(j-1) A_j)^2: zero iff the ancillas
  /// binary-encode the number of true literals.
  void count_penalty(std::span<const AffineExpr> literals,
                     std::span<const VariableId> ancillas);

  /// Allocates the ancillas and adds all penalties for one clause.
  void implement_clause(const Clause& clause);

  /// Registers a new, not yet used ancilla variable.
  VariableId fresh_ancilla(std::uint32_t clause, std::uint32_t level,
                           std::uint32_t bit);

  std::size_t clause_count() const { return clause_ancillas_.size(); }
  const QuboAccumulator& qubo() const { return qubo_; }

  SatCompilation finish() &&;

 private:
  void consume(VariableId ancilla);
  void implement_level(std::span<const AffineExpr> literals,
                       std::uint32_t clause, std::uint32_t level);

  QuboAccumulator qubo_;
  VariableRegistry registry_;
  std::uint32_t variable_count_;
  std::vector<std::uint8_t> consumed_;
  std::vector<std::vector<std::vector<VariableId>>> clause_ancillas_;
};

/// Throws StructuralError for a formula without clauses or with an empty
/// clause.
SatCompilation compile(const Formula& f);

/// Problem-variable prefix of a full solution vector.
Bits decode(std::span<const std::uint8_t> solution, const SatCompilation& comp);

/// Full vector for a problem assignment with every ancilla set to its
/// energy-minimizing value. Its energy equals count_unsatisfied(f, model).
Bits complete_ancillas(const Formula& f, std::span<const std::uint8_t> model,
                       const SatCompilation& comp);

/// Sidecar listing: one `clause <c> level <l> <id>...` line per level.
void write_ancilla_map(std::ostream& out, const SatCompilation& comp);

}  // namespace aqubo::sat
