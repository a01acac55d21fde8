#include "aqubo/qubo.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "aqubo/errors.hpp"
#include "text.hpp"

namespace aqubo {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) {
    throw DomainError("integer overflow in QUBO coefficient");
  }
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw DomainError("integer overflow in QUBO coefficient");
  }
  return r;
}

template <typename T>
bool parse_uint(std::string_view s, T& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::vector<std::uint32_t> parse_fields(std::string_view text,
                                        std::string_view prefix,
                                        std::size_t count) {
  if (text.substr(0, prefix.size()) != prefix) {
    throw StructuralError("unrecognized label '" + std::string(text) + "'");
  }
  text.remove_prefix(prefix.size());
  std::vector<std::uint32_t> values;
  while (true) {
    const auto colon = text.find(':');
    std::uint32_t v = 0;
    if (!parse_uint(text.substr(0, colon), v)) {
      throw StructuralError("bad numeric field in label");
    }
    values.push_back(v);
    if (colon == std::string_view::npos) break;
    text.remove_prefix(colon + 1);
  }
  if (values.size() != count) {
    throw StructuralError("wrong number of fields in label");
  }
  return values;
}

}  // namespace

std::string to_string(const Label& label) {
  struct Visitor {
    std::string operator()(const ProblemVar& v) const {
      return "problem:" + v.name;
    }
    std::string operator()(const ClauseAncilla& v) const {
      return "ancilla:" + std::to_string(v.clause) + ":" +
             std::to_string(v.level) + ":" + std::to_string(v.bit);
    }
    std::string operator()(const EdgeBit& v) const {
      return "edge:" + std::to_string(v.tail) + ":" + std::to_string(v.head) +
             ":" + std::to_string(v.bit);
    }
    std::string operator()(const PositionVar& v) const {
      return "position:" + std::to_string(v.vertex) + ":" +
             std::to_string(v.slot);
    }
  };
  return std::visit(Visitor{}, label);
}

Label parse_label(std::string_view text) {
  if (text.starts_with("problem:")) {
    auto name = text.substr(8);
    if (name.empty() || name.find_first_of(" \t\r\n") != std::string_view::npos) {
      throw StructuralError("bad problem variable name");
    }
    return ProblemVar{std::string(name)};
  }
  if (text.starts_with("ancilla:")) {
    auto f = parse_fields(text, "ancilla:", 3);
    return ClauseAncilla{f[0], f[1], f[2]};
  }
  if (text.starts_with("edge:")) {
    auto f = parse_fields(text, "edge:", 3);
    return EdgeBit{f[0], f[1], f[2]};
  }
  if (text.starts_with("position:")) {
    auto f = parse_fields(text, "position:", 2);
    return PositionVar{f[0], f[1]};
  }
  throw StructuralError("unrecognized label '" + std::string(text) + "'");
}

VariableId VariableRegistry::add(Label label) {
  const bool is_problem = std::holds_alternative<ProblemVar>(label);
  if (is_problem) {
    if (problem_count_ != labels_.size()) {
      throw StructuralError(
          "problem variables must precede all auxiliary variables");
    }
    if (std::get<ProblemVar>(label).name.empty()) {
      throw StructuralError("problem variable needs a name");
    }
    ++problem_count_;
  }
  labels_.push_back(std::move(label));
  return VariableId{static_cast<std::uint32_t>(labels_.size() - 1)};
}

const Label& VariableRegistry::label(VariableId id) const {
  if (id.index >= labels_.size()) {
    throw StructuralError("unknown variable id " + std::to_string(id.index));
  }
  return labels_[id.index];
}

AffineExpr AffineExpr::variable(VariableId id, std::int64_t coeff) {
  AffineExpr e;
  e.add_term(id, coeff);
  return e;
}

AffineExpr& AffineExpr::add_term(VariableId id, std::int64_t coeff) {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), id,
      [](const Term& t, VariableId v) { return t.first < v; });
  if (it != terms_.end() && it->first == id) {
    it->second = checked_add(it->second, coeff);
    if (it->second == 0) terms_.erase(it);
  } else if (coeff != 0) {
    terms_.insert(it, {id, coeff});
  }
  return *this;
}

AffineExpr& AffineExpr::add_constant(std::int64_t c) {
  constant_ = checked_add(constant_, c);
  return *this;
}

AffineExpr& AffineExpr::operator+=(const AffineExpr& rhs) {
  add_constant(rhs.constant_);
  for (const auto& [id, c] : rhs.terms_) add_term(id, c);
  return *this;
}

AffineExpr& AffineExpr::operator-=(const AffineExpr& rhs) {
  add_constant(checked_mul(rhs.constant_, -1));
  for (const auto& [id, c] : rhs.terms_) add_term(id, checked_mul(c, -1));
  return *this;
}

AffineExpr& AffineExpr::operator*=(std::int64_t scale) {
  if (scale == 0) {
    constant_ = 0;
    terms_.clear();
    return *this;
  }
  constant_ = checked_mul(constant_, scale);
  for (auto& term : terms_) term.second = checked_mul(term.second, scale);
  return *this;
}

std::int64_t AffineExpr::evaluate(std::span<const std::uint8_t> x) const {
  std::int64_t value = constant_;
  for (const auto& [id, c] : terms_) {
    if (id.index >= x.size()) {
      throw StructuralError("expression refers to variable " +
                            std::to_string(id.index) + " beyond vector length");
    }
    if (x[id.index]) value += c;
  }
  return value;
}

void QuboAccumulator::grow_to(std::size_t n) { n_ = std::max(n_, n); }

std::int64_t QuboAccumulator::coefficient(VariableId i, VariableId j) const {
  const Key key{std::min(i.index, j.index), std::max(i.index, j.index)};
  auto it = entries_.find(key);
  return it == entries_.end() ? 0 : it->second;
}

std::int64_t QuboAccumulator::max_abs_coefficient() const {
  std::int64_t m = 0;
  for (const auto& [key, c] : entries_) m = std::max(m, c < 0 ? -c : c);
  return m;
}

void QuboAccumulator::add_offset(std::int64_t c) {
  offset_ = checked_add(offset_, c);
}

void QuboAccumulator::add_entry(VariableId i, VariableId j,
                                std::int64_t coeff) {
  if (i.index >= n_ || j.index >= n_) {
    throw StructuralError("entry (" + std::to_string(i.index) + ", " +
                          std::to_string(j.index) + ") outside " +
                          std::to_string(n_) + " variables");
  }
  if (coeff == 0) return;
  const Key key{std::min(i.index, j.index), std::max(i.index, j.index)};
  auto [it, inserted] = entries_.try_emplace(key, 0);
  it->second = checked_add(it->second, coeff);
  if (it->second == 0) entries_.erase(it);
}

void QuboAccumulator::check_ids(const AffineExpr& e) const {
  for (const auto& [id, c] : e.terms()) {
    if (id.index >= n_) {
      throw StructuralError("unknown variable id " + std::to_string(id.index));
    }
  }
}

void QuboAccumulator::add_linear(const AffineExpr& e, std::int64_t coeff) {
  check_ids(e);
  add_offset(checked_mul(coeff, e.constant()));
  for (const auto& [id, a] : e.terms()) add_entry(id, id, checked_mul(coeff, a));
}

void QuboAccumulator::add_squared(const AffineExpr& e, std::int64_t weight) {
  check_ids(e);
  const auto& t = e.terms();
  const std::int64_t c = e.constant();
  add_offset(checked_mul(weight, checked_mul(c, c)));
  for (std::size_t p = 0; p < t.size(); ++p) {
    const auto [i, a] = t[p];
    // a^2 x^2 + 2 c a x with x^2 = x
    const std::int64_t diag =
        checked_add(checked_mul(a, a), checked_mul(2, checked_mul(c, a)));
    add_entry(i, i, checked_mul(weight, diag));
    for (std::size_t q = p + 1; q < t.size(); ++q) {
      const auto [j, b] = t[q];
      add_entry(i, j, checked_mul(weight, checked_mul(2, checked_mul(a, b))));
    }
  }
}

void QuboAccumulator::add_bilinear(const AffineExpr& e1, const AffineExpr& e2,
                                   std::int64_t coeff) {
  check_ids(e1);
  check_ids(e2);
  if (coeff == 0) return;
  add_offset(checked_mul(coeff, checked_mul(e1.constant(), e2.constant())));
  for (const auto& [j, b] : e2.terms()) {
    add_entry(j, j, checked_mul(coeff, checked_mul(e1.constant(), b)));
  }
  for (const auto& [i, a] : e1.terms()) {
    add_entry(i, i, checked_mul(coeff, checked_mul(e2.constant(), a)));
    for (const auto& [j, b] : e2.terms()) {
      add_entry(i, j, checked_mul(coeff, checked_mul(a, b)));
    }
  }
}

std::int64_t QuboAccumulator::energy(std::span<const std::uint8_t> x) const {
  if (x.size() != n_) {
    throw StructuralError("vector length " + std::to_string(x.size()) +
                          " does not match " + std::to_string(n_) +
                          " variables");
  }
  std::int64_t e = offset_;
  for (const auto& [key, c] : entries_) {
    if (x[key.first] && x[key.second]) e += c;
  }
  return e;
}

void write_qubo(std::ostream& out, const QuboAccumulator& qubo,
                const VariableRegistry& registry) {
  if (registry.size() != qubo.size()) {
    throw StructuralError("registry has " + std::to_string(registry.size()) +
                          " labels for " + std::to_string(qubo.size()) +
                          " variables");
  }
  out << "qubo " << qubo.size() << ' ' << qubo.offset() << ' '
      << qubo.entries().size() << '\n';
  for (const auto& [key, c] : qubo.entries()) {
    out << key.first << ' ' << key.second << ' ' << c << '\n';
  }
  for (std::size_t i = 0; i < registry.size(); ++i) {
    out << "var " << i << ' '
        << to_string(registry.label(VariableId{static_cast<std::uint32_t>(i)}))
        << '\n';
  }
}

std::string serialize(const QuboAccumulator& qubo,
                      const VariableRegistry& registry) {
  std::ostringstream out;
  write_qubo(out, qubo, registry);
  return out.str();
}

LabeledQubo read_qubo(std::istream& in) {
  detail::LineReader reader(in);
  auto header = reader.next_content();
  if (!header) throw ParseError(1, 0, "missing qubo header");
  const std::size_t header_line = reader.line_number();
  if (header->size() != 4 || (*header)[0] != "qubo") {
    throw ParseError(header_line, 1,
                     "expected 'qubo <n> <offset> <entry-count>'");
  }
  const auto n = detail::parse_int<std::uint32_t>((*header)[1], header_line, 2);
  const auto offset = detail::parse_int<std::int64_t>((*header)[2], header_line, 3);
  const auto count =
      detail::parse_int<std::size_t>((*header)[3], header_line, 4);

  LabeledQubo result{QuboAccumulator(n), {}};
  result.qubo.add_offset(offset);
  std::map<QuboAccumulator::Key, bool> seen;
  for (std::size_t e = 0; e < count; ++e) {
    auto fields = reader.next_content();
    const std::size_t line = reader.line_number();
    if (!fields) throw ParseError(line + 1, 0, "missing matrix entry");
    if (fields->size() != 3) {
      throw ParseError(line, 0, "expected '<i> <j> <coeff>'");
    }
    const auto i = detail::parse_int<std::uint32_t>((*fields)[0], line, 1);
    const auto j = detail::parse_int<std::uint32_t>((*fields)[1], line, 2);
    const auto c = detail::parse_int<std::int64_t>((*fields)[2], line, 3);
    if (i >= n) throw ParseError(line, 1, "index out of range");
    if (j >= n) throw ParseError(line, 2, "index out of range");
    if (j < i) throw ParseError(line, 2, "entry below the diagonal (j < i)");
    if (!seen.emplace(QuboAccumulator::Key{i, j}, true).second) {
      throw ParseError(line, 0, "duplicate entry");
    }
    result.qubo.add_entry(VariableId{i}, VariableId{j}, c);
  }
  for (std::uint32_t v = 0; v < n; ++v) {
    auto fields = reader.next_content();
    const std::size_t line = reader.line_number();
    if (!fields) throw ParseError(line + 1, 0, "missing variable label");
    if (fields->size() != 3 || (*fields)[0] != "var") {
      throw ParseError(line, 1, "expected 'var <index> <label>'");
    }
    const auto index = detail::parse_int<std::uint32_t>((*fields)[1], line, 2);
    if (index != v) throw ParseError(line, 2, "variable index out of order");
    try {
      result.registry.add(parse_label((*fields)[2]));
    } catch (const StructuralError& err) {
      throw ParseError(line, 3, err.what());
    }
  }
  if (reader.next_content()) {
    throw ParseError(reader.line_number(), 0, "trailing content");
  }
  return result;
}

LabeledQubo deserialize(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_qubo(in);
}

}  // namespace aqubo
