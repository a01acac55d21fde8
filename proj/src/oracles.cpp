#include "aqubo/oracles.hpp"

#include <bit>
#include <stdexcept>

#include "aqubo/errors.hpp"

namespace aqubo::oracle {

namespace {

struct Occurrence {
  std::size_t clause;
  bool negated;
};

std::vector<std::vector<Occurrence>> occurrences(const sat::Formula& f) {
  std::vector<std::vector<Occurrence>> occ(f.variable_count);
  for (std::size_t c = 0; c < f.clauses.size(); ++c) {
    for (const auto& lit : f.clauses[c]) occ[lit.variable].push_back({c, lit.negated});
  }
  return occ;
}

MaxSatResult verified(const sat::Formula& f, MaxSatResult r) {
  if (sat::count_unsatisfied(f, r.witness) != r.min_unsat) {
    throw std::logic_error("Max-SAT witness does not attain its count");
  }
  return r;
}

class BranchAndBound {
 public:
  explicit BranchAndBound(const sat::Formula& f)
      : f_(f),
        occ_(occurrences(f)),
        satisfied_(f.clauses.size(), 0),
        unassigned_(f.clauses.size(), 0),
        current_(f.variable_count, 0) {
    for (std::size_t c = 0; c < f.clauses.size(); ++c) {
      unassigned_[c] = f.clauses[c].size();
      if (f.clauses[c].empty()) ++falsified_;
    }
    best_.witness.assign(f.variable_count, 0);
    best_.min_unsat = sat::count_unsatisfied(f, best_.witness);
  }

  MaxSatResult run() {
    search(0);
    return best_;
  }

 private:
  void assign(std::uint32_t v, std::uint8_t value) {
    current_[v] = value;
    for (const auto& o : occ_[v]) {
      --unassigned_[o.clause];
      if ((value != 0) != o.negated) {
        ++satisfied_[o.clause];
      } else if (satisfied_[o.clause] == 0 && unassigned_[o.clause] == 0) {
        ++falsified_;
      }
    }
  }

  void unassign(std::uint32_t v) {
    const std::uint8_t value = current_[v];
    for (const auto& o : occ_[v]) {
      if ((value != 0) != o.negated) {
        --satisfied_[o.clause];
      } else if (satisfied_[o.clause] == 0 && unassigned_[o.clause] == 0) {
        --falsified_;
      }
      ++unassigned_[o.clause];
    }
  }

  void search(std::uint32_t v) {
    if (falsified_ >= best_.min_unsat) return;
    if (v == f_.variable_count) {
      best_.min_unsat = falsified_;
      best_.witness = current_;
      return;
    }
    for (std::uint8_t value : {std::uint8_t{0}, std::uint8_t{1}}) {
      assign(v, value);
      search(v + 1);
      unassign(v);
      if (best_.min_unsat == 0) return;
    }
  }

  const sat::Formula& f_;
  std::vector<std::vector<Occurrence>> occ_;
  std::vector<std::size_t> satisfied_;
  std::vector<std::size_t> unassigned_;
  std::size_t falsified_ = 0;
  Bits current_;
  MaxSatResult best_;
};

// Assignment values: -1 unassigned, 0 false, 1 true.
using Partial = std::vector<std::int8_t>;

bool propagate(const sat::Formula& f, Partial& a) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& clause : f.clauses) {
      std::size_t free_count = 0;
      const sat::Literal* free_lit = nullptr;
      bool sat = false;
      for (const auto& lit : clause) {
        const auto v = a[lit.variable];
        if (v < 0) {
          ++free_count;
          free_lit = &lit;
        } else if ((v == 1) != lit.negated) {
          sat = true;
          break;
        }
      }
      if (sat) continue;
      if (free_count == 0) return false;
      if (free_count == 1) {
        a[free_lit->variable] = free_lit->negated ? 0 : 1;
        changed = true;
      }
    }
  }
  return true;
}

bool dpll(const sat::Formula& f, Partial& a) {
  if (!propagate(f, a)) return false;
  // Branch on a variable of the shortest open clause.
  std::uint32_t pick = f.variable_count;
  std::size_t shortest = SIZE_MAX;
  for (const auto& clause : f.clauses) {
    std::size_t free_count = 0;
    std::uint32_t first_free = 0;
    bool sat = false;
    for (const auto& lit : clause) {
      const auto v = a[lit.variable];
      if (v < 0) {
        if (free_count++ == 0) first_free = lit.variable;
      } else if ((v == 1) != lit.negated) {
        sat = true;
        break;
      }
    }
    if (!sat && free_count > 0 && free_count < shortest) {
      shortest = free_count;
      pick = first_free;
    }
  }
  if (pick == f.variable_count) return true;  // every clause satisfied
  for (std::int8_t value : {std::int8_t{1}, std::int8_t{0}}) {
    Partial trial = a;
    trial[pick] = value;
    if (dpll(f, trial)) {
      a = std::move(trial);
      return true;
    }
  }
  return false;
}

bool extend_path(const hc::Graph& g,
                 const std::vector<std::vector<hc::Vertex>>& out,
                 hc::Cycle& path, std::vector<std::uint8_t>& visited) {
  const auto n = g.vertex_count();
  const hc::Vertex last = path.back();
  if (path.size() == n) return g.has_edge(last, hc::Graph::kStart);
  for (const auto next : out[last]) {
    if (visited[next]) continue;
    visited[next] = 1;
    path.push_back(next);
    if (extend_path(g, out, path, visited)) return true;
    path.pop_back();
    visited[next] = 0;
  }
  return false;
}

}  // namespace

MaxSatResult maxsat_enumerate(const sat::Formula& f) {
  f.validate();
  const std::size_t n = f.variable_count;
  if (n > kEnumerationLimit) {
    throw CapacityError(std::to_string(n) + " variables exceed the enumeration limit of " +
                        std::to_string(kEnumerationLimit));
  }
  const auto occ = occurrences(f);
  Bits x(n, 0);
  std::vector<std::size_t> true_count(f.clauses.size(), 0);
  std::size_t unsat = 0;
  for (std::size_t c = 0; c < f.clauses.size(); ++c) {
    for (const auto& lit : f.clauses[c]) true_count[c] += lit.holds(x);
    if (true_count[c] == 0) ++unsat;
  }
  MaxSatResult best{unsat, x};
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < total && best.min_unsat > 0; ++k) {
    const auto v = static_cast<std::size_t>(std::countr_zero(k));
    x[v] ^= 1U;
    for (const auto& o : occ[v]) {
      if ((x[v] != 0) != o.negated) {
        if (true_count[o.clause]++ == 0) --unsat;
      } else {
        if (--true_count[o.clause] == 0) ++unsat;
      }
    }
    if (unsat < best.min_unsat) best = {unsat, x};
  }
  return verified(f, std::move(best));
}

MaxSatResult maxsat_branch_and_bound(const sat::Formula& f) {
  f.validate();
  if (f.variable_count > kBranchAndBoundLimit) {
    throw CapacityError(std::to_string(f.variable_count) +
                        " variables exceed the branch-and-bound limit of " +
                        std::to_string(kBranchAndBoundLimit));
  }
  return verified(f, BranchAndBound(f).run());
}

MaxSatResult maxsat_min_unsat(const sat::Formula& f) {
  return f.variable_count <= 20 ? maxsat_enumerate(f)
                                : maxsat_branch_and_bound(f);
}

SatResult is_satisfiable(const sat::Formula& f) {
  f.validate();
  for (const auto& clause : f.clauses) {
    if (clause.empty()) return {};
  }
  Partial a(f.variable_count, -1);
  if (!dpll(f, a)) return {};
  SatResult r{true, Bits(f.variable_count, 0)};
  for (std::size_t v = 0; v < a.size(); ++v) r.model[v] = a[v] == 1;
  if (sat::count_unsatisfied(f, r.model) != 0) {
    throw std::logic_error("DPLL model does not satisfy the formula");
  }
  return r;
}

std::optional<hc::Cycle> find_hamiltonian_cycle(const hc::Graph& g) {
  const auto n = g.vertex_count();
  if (n > kCycleSearchLimit) {
    throw CapacityError(std::to_string(n) + " vertices exceed the cycle search limit of " +
                        std::to_string(kCycleSearchLimit));
  }
  std::vector<std::vector<hc::Vertex>> out(n);
  for (const auto& e : g.edges()) out[e.tail].push_back(e.head);
  hc::Cycle path{hc::Graph::kStart};
  std::vector<std::uint8_t> visited(n, 0);
  visited[hc::Graph::kStart] = 1;
  if (!extend_path(g, out, path, visited)) return std::nullopt;
  if (auto why = hc::check_cycle(g, path)) {
    throw std::logic_error("cycle search returned an invalid cycle: " + *why);
  }
  return path;
}

}  // namespace aqubo::oracle
