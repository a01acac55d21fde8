#include "aqubo/formula.hpp"

#include <cstdlib>
#include <ostream>
#include <sstream>

#include "aqubo/errors.hpp"
#include "text.hpp"

namespace aqubo::sat {

void Formula::validate() const {
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    for (const auto& lit : clauses[c]) {
      if (lit.variable >= variable_count) {
        throw StructuralError("clause " + std::to_string(c) +
                              " refers to unknown variable " +
                              std::to_string(lit.variable));
      }
    }
  }
}

bool satisfies(const Clause& clause, std::span<const std::uint8_t> assignment) {
  for (const auto& lit : clause) {
    if (lit.holds(assignment)) return true;
  }
  return false;
}

std::size_t count_unsatisfied(const Formula& f,
                              std::span<const std::uint8_t> assignment) {
  if (assignment.size() < f.variable_count) {
    throw StructuralError("assignment shorter than variable count");
  }
  std::size_t unsat = 0;
  for (const auto& clause : f.clauses) {
    if (!satisfies(clause, assignment)) ++unsat;
  }
  return unsat;
}

Formula read_dimacs(std::istream& in) {
  detail::LineReader reader(in, "c");
  auto header = reader.next_content();
  if (!header) throw ParseError(1, 0, "missing 'p cnf' header");
  std::size_t line = reader.line_number();
  if (header->size() != 4 || (*header)[0] != "p" || (*header)[1] != "cnf") {
    throw ParseError(line, 1, "expected 'p cnf <vars> <clauses>'");
  }
  Formula f;
  f.variable_count = detail::parse_int<std::uint32_t>((*header)[2], line, 3);
  const auto declared = detail::parse_int<std::size_t>((*header)[3], line, 4);

  Clause current;
  bool open = false;
  while (auto fields = reader.next_content()) {
    line = reader.line_number();
    if ((*fields)[0] == "%") break;  // SATLIB trailer
    for (std::size_t k = 0; k < fields->size(); ++k) {
      const auto v = detail::parse_int<std::int64_t>((*fields)[k], line, k + 1);
      if (v == 0) {
        f.clauses.push_back(std::move(current));
        current.clear();
        open = false;
        continue;
      }
      const auto var = static_cast<std::uint64_t>(std::llabs(v));
      if (var > f.variable_count) {
        throw ParseError(line, k + 1,
                         "variable " + std::to_string(var) +
                             " exceeds declared count");
      }
      current.push_back({static_cast<std::uint32_t>(var - 1), v < 0});
      open = true;
    }
  }
  if (open) throw ParseError(line, 0, "last clause not terminated by 0");
  if (f.clauses.size() != declared) {
    throw ParseError(line, 0,
                     "header declares " + std::to_string(declared) +
                         " clauses, found " + std::to_string(f.clauses.size()));
  }
  return f;
}

Formula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  return read_dimacs(in);
}

void write_dimacs(std::ostream& out, const Formula& f) {
  out << "p cnf " << f.variable_count << ' ' << f.clauses.size() << '\n';
  for (const auto& clause : f.clauses) {
    for (const auto& lit : clause) {
      out << (lit.negated ? "-" : "") << lit.variable + 1 << ' ';
    }
    out << "0\n";
  }
}

}  // namespace aqubo::sat
