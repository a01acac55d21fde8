#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace aqubo::sat {

/// Variable index (0-based) with polarity. sign() is -1 for a negation.
struct Literal {
  std::uint32_t variable = 0;
  bool negated = false;

  int sign() const { return negated ? -1 : 1; }
  bool holds(std::span<const std::uint8_t> assignment) const {
    return (assignment[variable] != 0) != negated;
  }

  friend bool operator==(const Literal&, const Literal&) = default;
};

inline Literal pos(std::uint32_t v) { return {v, false}; }
inline Literal neg(std::uint32_t v) { return {v, true}; }

/// Disjunction of literals. Duplicates and complementary pairs are allowed.
using Clause = std::vector<Literal>;

/// CNF over variables 0..variable_count-1.
struct Formula {
  std::uint32_t variable_count = 0;
  std::vector<Clause> clauses;

  /// Throws StructuralError if a literal refers to an unknown variable.
  void validate() const;

  friend bool operator==(const Formula&, const Formula&) = default;
};

bool satisfies(const Clause& clause, std::span<const std::uint8_t> assignment);
std::size_t count_unsatisfied(const Formula& f,
                              std::span<const std::uint8_t> assignment);

/// DIMACS CNF. Variables are 1-based in the file, 0-based in memory.
/// Throws ParseError with line/field on malformed input.
Formula read_dimacs(std::istream& in);
Formula parse_dimacs(const std::string& text);
void write_dimacs(std::ostream& out, const Formula& f);

}  // namespace aqubo::sat
