#include "aqubo/sat.hpp"

#include <bit>
#include <ostream>

#include "aqubo/errors.hpp"

namespace aqubo::sat {

namespace {

std::uint32_t counter_width(std::size_t k) {
  return static_cast<std::uint32_t>(std::bit_width(k));  // ceil(log2(k+1))
}

}  // namespace

std::uint32_t ancilla_count(std::uint32_t k) {
  if (k < 2) {
    throw DomainError("r(k) is defined for k >= 2, got " + std::to_string(k));
  }
  if (k == 2) return 0;
  if (k == 3) return 1;
  const std::uint32_t h = counter_width(k);
  return h + ancilla_count(h);
}

std::vector<std::uint32_t> ancilla_levels(std::uint32_t k) {
  std::vector<std::uint32_t> levels;
  while (k >= 4) {
    k = counter_width(k);
    levels.push_back(k);
  }
  if (k == 3) levels.push_back(1);
  return levels;
}

std::size_t predicted_dimension(const Formula& f) {
  std::size_t n = f.variable_count;
  for (const auto& clause : f.clauses) {
    if (clause.size() >= 2) n += ancilla_count(static_cast<std::uint32_t>(clause.size()));
  }
  return n;
}

SatCompiler::SatCompiler(std::uint32_t variable_count)
    : qubo_(variable_count), variable_count_(variable_count) {
  for (std::uint32_t v = 0; v < variable_count; ++v) {
    registry_.add(ProblemVar{std::to_string(v + 1)});
  }
  consumed_.assign(variable_count, 0);
}

AffineExpr SatCompiler::literal_expr(Literal lit) const {
  if (lit.variable >= variable_count_) {
    throw StructuralError("literal refers to unregistered variable " +
                          std::to_string(lit.variable));
  }
  const VariableId id{lit.variable};
  return lit.negated ? AffineExpr(1) - AffineExpr::variable(id)
                     : AffineExpr::variable(id);
}

VariableId SatCompiler::fresh_ancilla(std::uint32_t clause, std::uint32_t level,
                                      std::uint32_t bit) {
  const VariableId id = registry_.add(ClauseAncilla{clause, level, bit});
  qubo_.grow_to(registry_.size());
  consumed_.push_back(0);
  return id;
}

void SatCompiler::consume(VariableId ancilla) {
  if (ancilla.index >= registry_.size() ||
      !std::holds_alternative<ClauseAncilla>(registry_.label(ancilla))) {
    throw StructuralError("variable " + std::to_string(ancilla.index) +
                          " is not a clause ancilla");
  }
  if (consumed_[ancilla.index]) {
    throw StructuralError("ancilla " + std::to_string(ancilla.index) +
                          " already used");
  }
  consumed_[ancilla.index] = 1;
}

void SatCompiler::or_gadget(std::span<const AffineExpr> literals) {
  if (literals.size() != 2) {
    throw StructuralError("OR gadget needs 2 literals, got " +
                          std::to_string(literals.size()));
  }
  qubo_.add_bilinear(AffineExpr(1) - literals[0], AffineExpr(1) - literals[1],
                     1);
}

void SatCompiler::threesat_gadget(std::span<const AffineExpr> literals,
                                  VariableId ancilla) {
  if (literals.size() != 3) {
    throw StructuralError("3-SAT gadget needs 3 literals, got " +
                          std::to_string(literals.size()));
  }
  consume(ancilla);
  AffineExpr sum;
  for (const auto& v : literals) sum += v;
  qubo_.add_linear(AffineExpr(1) - sum);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      qubo_.add_bilinear(literals[i], literals[j], 1);
    }
  }
  qubo_.add_bilinear(AffineExpr::variable(ancilla), AffineExpr(2) - sum, 1);
}

void SatCompiler::count_penalty(std::span<const AffineExpr> literals,
                                std::span<const VariableId> ancillas) {
  const auto h = counter_width(literals.size());
  if (ancillas.size() != h) {
    throw StructuralError("counting " + std::to_string(literals.size()) +
                          " literals needs " + std::to_string(h) +
                          " ancillas, got " + std::to_string(ancillas.size()));
  }
  for (auto a : ancillas) consume(a);
  // n(C) + sum sign(l) x(l) is the sum of the literal truth values.
  AffineExpr residual;
  for (const auto& v : literals) residual += v;
  std::int64_t weight = 1;
  for (auto a : ancillas) {
    residual.add_term(a, -weight);
    weight *= 2;
  }
  qubo_.add_squared(residual);
}

void SatCompiler::implement_level(std::span<const AffineExpr> literals,
                                  std::uint32_t clause, std::uint32_t level) {
  auto& levels = clause_ancillas_[clause];
  if (literals.size() == 2) {
    or_gadget(literals);
    return;
  }
  if (literals.size() == 3) {
    const VariableId a = fresh_ancilla(clause, level, 0);
    levels.push_back({a});
    threesat_gadget(literals, a);
    return;
  }
  const auto h = counter_width(literals.size());
  std::vector<VariableId> ancillas;
  for (std::uint32_t bit = 0; bit < h; ++bit) {
    ancillas.push_back(fresh_ancilla(clause, level, bit));
  }
  levels.push_back(ancillas);
  count_penalty(literals, ancillas);

  std::vector<AffineExpr> next;
  for (auto a : ancillas) next.push_back(AffineExpr::variable(a));
  implement_level(next, clause, level + 1);
}

void SatCompiler::implement_clause(const Clause& clause) {
  if (clause.empty()) {
    throw StructuralError("empty clause " +
                          std::to_string(clause_ancillas_.size()));
  }
  std::vector<AffineExpr> literals;
  literals.reserve(clause.size());
  for (const auto& lit : clause) literals.push_back(literal_expr(lit));

  const auto index = static_cast<std::uint32_t>(clause_ancillas_.size());
  clause_ancillas_.emplace_back();
  if (literals.size() == 1) {
    qubo_.add_linear(AffineExpr(1) - literals[0]);
    return;
  }
  implement_level(literals, index, 0);
}

SatCompilation SatCompiler::finish() && {
  return SatCompilation{std::move(qubo_), std::move(registry_),
                        variable_count_, std::move(clause_ancillas_)};
}

SatCompilation compile(const Formula& f) {
  if (f.clauses.empty()) throw StructuralError("formula has no clauses");
  f.validate();
  SatCompiler compiler(f.variable_count);
  for (const auto& clause : f.clauses) compiler.implement_clause(clause);
  return std::move(compiler).finish();
}

Bits decode(std::span<const std::uint8_t> solution,
            const SatCompilation& comp) {
  if (solution.size() != comp.qubo.size()) {
    throw StructuralError("solution length " + std::to_string(solution.size()) +
                          " does not match dimension " +
                          std::to_string(comp.qubo.size()));
  }
  return Bits(solution.begin(), solution.begin() + comp.variable_count);
}

Bits complete_ancillas(const Formula& f, std::span<const std::uint8_t> model,
                       const SatCompilation& comp) {
  if (model.size() != comp.variable_count ||
      f.clauses.size() != comp.clause_ancillas.size()) {
    throw StructuralError("model does not match compilation");
  }
  Bits x(comp.qubo.size(), 0);
  std::copy(model.begin(), model.end(), x.begin());
  for (std::size_t c = 0; c < f.clauses.size(); ++c) {
    std::vector<int> values;
    for (const auto& lit : f.clauses[c]) values.push_back(lit.holds(model));
    for (const auto& level : comp.clause_ancillas[c]) {
      int count = 0;
      for (int v : values) count += v;
      if (values.size() == 3 && level.size() == 1) {
        // w lowers the gadget only when all three literals hold.
        x[level[0].index] = count == 3;
        break;
      }
      values.clear();
      for (std::size_t bit = 0; bit < level.size(); ++bit) {
        const int b = (count >> bit) & 1;
        x[level[bit].index] = static_cast<std::uint8_t>(b);
        values.push_back(b);
      }
    }
  }
  return x;
}

void write_ancilla_map(std::ostream& out, const SatCompilation& comp) {
  for (std::size_t c = 0; c < comp.clause_ancillas.size(); ++c) {
    const auto& levels = comp.clause_ancillas[c];
    for (std::size_t l = 0; l < levels.size(); ++l) {
      out << "clause " << c << " level " << l;
      for (auto id : levels[l]) out << ' ' << id.index;
      out << '\n';
    }
  }
}

}  // namespace aqubo::sat
