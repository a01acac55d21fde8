#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace aqubo {

/// A binary assignment, one byte (0 or 1) per variable.
using Bits = std::vector<std::uint8_t>;

/// Dense index of a binary variable inside one registry.
struct VariableId {
  std::uint32_t index = 0;

  friend auto operator<=>(const VariableId&, const VariableId&) = default;
};

// Variable labels. Every variable of a compiled problem carries one; they are
// written to QUBO files so that solutions can be decoded without the source.

/// Variable of the original problem instance.
struct ProblemVar {
  std::string name;
  friend bool operator==(const ProblemVar&, const ProblemVar&) = default;
};

/// Auxiliary variable introduced for a clause at a given recursion level.
struct ClauseAncilla {
  std::uint32_t clause = 0;
  std::uint32_t level = 0;
  std::uint32_t bit = 0;
  friend bool operator==(const ClauseAncilla&, const ClauseAncilla&) = default;
};

/// One bit of the binary-encoded cycle position of a directed edge.
struct EdgeBit {
  std::uint32_t tail = 0;
  std::uint32_t head = 0;
  std::uint32_t bit = 0;
  friend bool operator==(const EdgeBit&, const EdgeBit&) = default;
};

/// One-hot "vertex sits at slot" variable of the vertex-by-slot grid encoding.
struct PositionVar {
  std::uint32_t vertex = 0;
  std::uint32_t slot = 0;
  friend bool operator==(const PositionVar&, const PositionVar&) = default;
};

using Label = std::variant<ProblemVar, ClauseAncilla, EdgeBit, PositionVar>;

/// Single-token text form: `problem:<name>`, `ancilla:<clause>:<level>:<bit>`,
/// `edge:<tail>:<head>:<bit>`, `position:<vertex>:<slot>`.
std::string to_string(const Label& label);

/// Inverse of to_string. Throws StructuralError on unrecognized text.
Label parse_label(std::string_view text);

/// Ordered list of variable labels. Problem variables must form a prefix so a
/// solution's problem assignment is read off its first entries.
class VariableRegistry {
 public:
  VariableId add(Label label);

  std::size_t size() const { return labels_.size(); }
  std::size_t problem_count() const { return problem_count_; }
  const Label& label(VariableId id) const;
  const std::vector<Label>& labels() const { return labels_; }

  friend bool operator==(const VariableRegistry&,
                         const VariableRegistry&) = default;

 private:
  std::vector<Label> labels_;
  std::size_t problem_count_ = 0;
};

/// constant + sum of coefficient * x over binary variables, exact integers.
/// Terms are kept sorted by variable with duplicates merged and zeros dropped.
class AffineExpr {
 public:
  using Term = std::pair<VariableId, std::int64_t>;

  AffineExpr() = default;
  explicit AffineExpr(std::int64_t constant) : constant_(constant) {}

  static AffineExpr variable(VariableId id, std::int64_t coeff = 1);

  std::int64_t constant() const { return constant_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return constant_ == 0 && terms_.empty(); }

  AffineExpr& add_term(VariableId id, std::int64_t coeff);
  AffineExpr& add_constant(std::int64_t c);

  AffineExpr& operator+=(const AffineExpr& rhs);
  AffineExpr& operator-=(const AffineExpr& rhs);
  AffineExpr& operator*=(std::int64_t scale);

  friend AffineExpr operator+(AffineExpr lhs, const AffineExpr& rhs) {
    return lhs += rhs;
  }
  friend AffineExpr operator-(AffineExpr lhs, const AffineExpr& rhs) {
    return lhs -= rhs;
  }
  friend AffineExpr operator*(AffineExpr lhs, std::int64_t scale) {
    return lhs *= scale;
  }
  friend AffineExpr operator*(std::int64_t scale, AffineExpr rhs) {
    return rhs *= scale;
  }
  friend bool operator==(const AffineExpr&, const AffineExpr&) = default;

  /// Throws StructuralError if a term refers past the end of x.
  std::int64_t evaluate(std::span<const std::uint8_t> x) const;

 private:
  std::int64_t constant_ = 0;
  std::vector<Term> terms_;
};

/// Upper-triangular integer QUBO matrix plus a constant offset.
///
/// energy(x) = offset + sum over stored (i, j), i <= j, of Q_ij * x_i * x_j.
/// All penalty helpers expand with x*x = x, so diagonal entries carry the
/// linear part. Entries that cancel to zero are removed, which keeps the
/// stored form canonical regardless of insertion order.
class QuboAccumulator {
 public:
  using Key = std::pair<std::uint32_t, std::uint32_t>;
  using Entries = std::map<Key, std::int64_t>;

  QuboAccumulator() = default;
  explicit QuboAccumulator(std::size_t n) : n_(n) {}

  std::size_t size() const { return n_; }
  /// Grows the variable count; never shrinks.
  void grow_to(std::size_t n);

  std::int64_t offset() const { return offset_; }
  const Entries& entries() const { return entries_; }
  std::int64_t coefficient(VariableId i, VariableId j) const;
  std::int64_t max_abs_coefficient() const;

  void add_offset(std::int64_t c);
  /// Adds coeff at (min(i, j), max(i, j)).
  void add_entry(VariableId i, VariableId j, std::int64_t coeff);
  /// Adds coeff * e.
  void add_linear(const AffineExpr& e, std::int64_t coeff = 1);
  /// Adds weight * e^2.
  void add_squared(const AffineExpr& e, std::int64_t weight = 1);
  /// Adds coeff * e1 * e2.
  void add_bilinear(const AffineExpr& e1, const AffineExpr& e2,
                    std::int64_t coeff);

  /// Throws StructuralError if x.size() != size().
  std::int64_t energy(std::span<const std::uint8_t> x) const;

  friend bool operator==(const QuboAccumulator&,
                         const QuboAccumulator&) = default;

 private:
  void check_ids(const AffineExpr& e) const;

  std::size_t n_ = 0;
  std::int64_t offset_ = 0;
  Entries entries_;
};

/// A QUBO with the labels of its variables, as stored on disk.
struct LabeledQubo {
  QuboAccumulator qubo;
  VariableRegistry registry;
};

// Text format:
//   qubo <n> <offset> <entry-count>
//   <i> <j> <coeff>          entry-count lines, 0-based, i <= j, sorted
//   var <index> <label>      n lines, index 0..n-1
void write_qubo(std::ostream& out, const QuboAccumulator& qubo,
                const VariableRegistry& registry);
std::string serialize(const QuboAccumulator& qubo,
                      const VariableRegistry& registry);

/// Throws ParseError naming the offending line and field.
LabeledQubo read_qubo(std::istream& in);
LabeledQubo deserialize(std::string_view text);

}  // namespace aqubo
