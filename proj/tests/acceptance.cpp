// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// if any criterion fails. All thresholds and time budgets are fixed below.

#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "aqubo/generators.hpp"
#include "aqubo/graph.hpp"
#include "aqubo/hc.hpp"
#include "aqubo/oracles.hpp"
#include "aqubo/qubo.hpp"
#include "aqubo/sat.hpp"
#include "aqubo/solvers.hpp"

using namespace aqubo;

namespace {

// Time budgets in seconds.
constexpr double kBudget1 = 1.0;
constexpr double kBudget2 = 300.0;
constexpr double kBudget3 = 300.0;
constexpr double kBudget4 = 600.0;
constexpr double kBudget5 = 300.0;
constexpr double kBudget6 = 1.0;
constexpr double kBudget7 = 60.0;

// Pass thresholds.
constexpr int kSatInstancesPerK = 30;
constexpr int kSatRequiredPerK = 29;
constexpr int kMaxSatInstances = 100;
constexpr std::size_t kMaxSatDimension = 22;
constexpr int kHcInstances = 100;
constexpr int kHcRequired = 98;
constexpr std::uint32_t kHcMinRestarts = 50;
constexpr int kNegativeInstances = 20;
constexpr std::size_t kNegativeDimension = 22;
constexpr std::uint32_t kCrossoverCeiling = 24;
constexpr std::uint64_t kDeltaChecks = 10000;
constexpr int kRandomSquaredCases = 1000;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

// Every HC compilation built in criteria 4 and 5 is checked again in 6.
std::vector<hc::Graph> g_compiled_graphs;

std::uint32_t ceil_log2_plus_one(std::uint32_t v) { return std::bit_width(v); }

// ---------------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  const std::pair<std::uint32_t, std::uint32_t> exact[] = {{2, 0}, {3, 1}, {4, 4}, {8, 8}};
  for (auto [k, r] : exact) {
    if (sat::ancilla_count(k) != r) {
      o.fail("r(" + std::to_string(k) + ") = " + std::to_string(sat::ancilla_count(k)));
    }
  }
  if (sat::ancilla_levels(8) != std::vector<std::uint32_t>{4, 3, 1}) {
    o.fail("r(8) does not decompose as 4+3+1");
  }
  std::ostringstream csv;
  for (std::uint32_t k = 2; k <= 64; ++k) {
    const auto r = sat::ancilla_count(k);
    // Chancellor column is k by construction; recompute r(k) independently.
    std::uint32_t expect = 0;
    if (k == 3) {
      expect = 1;
    } else if (k > 3) {
      std::uint32_t m = k;
      while (m > 3) {
        const auto h = static_cast<std::uint32_t>(std::bit_width(m));
        expect += h;
        m = h;
      }
      if (m == 3) expect += 1;
    }
    if (r != expect) o.fail("r(" + std::to_string(k) + ") disagrees with unrolled count");
    if (k >= 9 && r >= k) o.fail("r(" + std::to_string(k) + ") >= k");
  }
  if (o.pass) o.detail = "r(2..4,8) exact, r(8)=4+3+1, r(k)<k on 9..64";
  return o;
}

// ---------------------------------------------------------------------------

Outcome criterion2() {
  Outcome o;
  std::ostringstream summary;
  for (std::uint32_t k : {4U, 6U, 8U, 10U}) {
    int sa_ok = 0;
    int rescued = 0;
    std::size_t largest = 0;
    for (int i = 0; i < kSatInstancesPerK; ++i) {
      gen::SatSpec spec;
      spec.variables = std::max<std::uint32_t>(k, 8 + i % 7);
      spec.clauses = 4 + i % 5;
      spec.k = k;
      spec.seed = 1000 * k + static_cast<std::uint64_t>(i);
      spec.require_satisfiable = true;
      const auto f = gen::gen_sat(spec);
      const auto comp = sat::compile(f);
      largest = std::max(largest, comp.qubo.size());

      SaParams params;
      params.seed = spec.seed;
      const auto r = solve_sa(comp.qubo, params);
      const bool sa_pass =
          r.energy == 0 && sat::count_unsatisfied(f, sat::decode(r.best, comp)) == 0 &&
          oracle::is_satisfiable(f).satisfiable;
      if (sa_pass) {
        ++sa_ok;
        continue;
      }
      if (comp.qubo.size() > kDefaultExhaustiveLimit) continue;
      const auto e = solve_exhaustive(comp.qubo);
      if (e.energy == 0 && sat::count_unsatisfied(f, sat::decode(e.best, comp)) == 0) {
        ++rescued;
      } else {
        o.fail("k=" + std::to_string(k) + " instance " + std::to_string(i) +
               " fails even under exhaustive search");
      }
    }
    summary << " k=" << k << ":" << sa_ok << "/" << kSatInstancesPerK << "(n<=" << largest
            << ")";
    if (rescued) summary << "+" << rescued << "exh";
    if (sa_ok < kSatRequiredPerK) {
      o.fail("k=" + std::to_string(k) + " SA solved " + std::to_string(sa_ok) + "/" +
             std::to_string(kSatInstancesPerK));
    }
  }
  if (o.pass) o.detail = "SA hits" + summary.str();
  else o.detail += ";" + summary.str();
  return o;
}

// ---------------------------------------------------------------------------

Outcome criterion3() {
  Outcome o;
  std::mt19937_64 rng(31337);
  int built = 0;
  int nonzero = 0;
  std::size_t largest = 0;
  while (built < kMaxSatInstances) {
    const std::uint32_t vars = 3 + rng() % 8;
    const std::uint32_t clauses = 2 + rng() % (4 * vars);
    sat::Formula f{vars, {}};
    for (std::uint32_t c = 0; c < clauses; ++c) {
      const std::uint32_t k = 1 + rng() % std::min<std::uint32_t>(vars, 5);
      sat::Clause clause;
      for (std::uint32_t i = 0; i < k; ++i) {
        clause.push_back({static_cast<std::uint32_t>(rng() % vars), (rng() & 1U) != 0});
      }
      f.clauses.push_back(std::move(clause));
    }
    if (sat::predicted_dimension(f) > kMaxSatDimension) continue;
    ++built;
    const auto comp = sat::compile(f);
    largest = std::max(largest, comp.qubo.size());
    const auto ground = solve_exhaustive(comp.qubo).energy;
    const auto expected = oracle::maxsat_min_unsat(f).min_unsat;
    if (expected != 0) ++nonzero;
    if (ground != static_cast<std::int64_t>(expected)) {
      o.fail("instance " + std::to_string(built) + ": ground " + std::to_string(ground) +
             " vs min-unsat " + std::to_string(expected));
    }
  }
  if (o.pass) {
    o.detail = std::to_string(built) + " formulas, n<=" + std::to_string(largest) + ", " +
               std::to_string(nonzero) + " with min-unsat>0";
  }
  return o;
}

// ---------------------------------------------------------------------------

Outcome criterion4() {
  Outcome o;
  int solved = 0;
  int canonical = 0;
  int exhaustive_used = 0;
  std::size_t largest = 0;
  for (int i = 0; i < kHcInstances; ++i) {
    const std::uint32_t v = 4 + i % 5;
    const std::uint32_t full = v * (v - 1);
    // Densities from a bare cycle up to three edges per vertex.
    const std::uint32_t density[] = {v, v + v / 2, 2 * v, 3 * v};
    const std::uint32_t edges = std::min(full, density[(i / 5) % 4]);
    const auto g = gen::gen_graph({v, edges, true, 5000 + static_cast<std::uint64_t>(i), true});
    g_compiled_graphs.push_back(g);
    const auto comp = hc::compile(g);
    largest = std::max(largest, comp.qubo.size());
    const auto optimum = hc::optimal_energy(v);

    const auto cycle = oracle::find_hamiltonian_cycle(g);
    if (!cycle) {
      o.fail("oracle found no cycle in planted graph " + std::to_string(i));
      continue;
    }
    if (comp.qubo.energy(hc::encode_cycle(comp, *cycle)) == optimum) ++canonical;

    SolveResult r;
    if (comp.qubo.size() <= kDefaultExhaustiveLimit) {
      r = solve_exhaustive(comp.qubo);
      ++exhaustive_used;
    } else {
      SaParams params;
      params.restarts = kHcMinRestarts;
      params.sweeps = 4000;
      params.seed = static_cast<std::uint64_t>(i);
      r = solve_sa(comp.qubo, params);
    }
    const auto decoded = hc::decode(r.best, comp);
    if (r.energy == optimum && decoded.ok() && !hc::check_cycle(g, decoded.cycle)) ++solved;
  }
  if (canonical != kHcInstances) {
    o.fail("canonical encoding optimal on " + std::to_string(canonical) + "/" +
           std::to_string(kHcInstances));
  }
  if (solved < kHcRequired) {
    o.fail("solved " + std::to_string(solved) + "/" + std::to_string(kHcInstances));
  }
  std::ostringstream d;
  d << solved << "/" << kHcInstances << " solved (" << exhaustive_used
    << " exhaustive, rest SA), canonical " << canonical << "/" << kHcInstances
    << ", n<=" << largest;
  if (o.pass) o.detail = d.str();
  else o.detail += "; " + d.str();
  return o;
}

// ---------------------------------------------------------------------------

bool every_vertex_has_in_and_out(const hc::Graph& g) {
  std::vector<int> in(g.vertex_count()), out(g.vertex_count());
  for (const auto& e : g.edges()) {
    ++out[e.tail];
    ++in[e.head];
  }
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    if (in[v] == 0 || out[v] == 0) return false;
  }
  return true;
}

Outcome criterion5() {
  Outcome o;
  int found = 0;
  std::size_t largest = 0;
  for (std::uint64_t seed = 0; found < kNegativeInstances && seed < 200000; ++seed) {
    const std::uint32_t v = 4 + seed % 2;
    const std::uint32_t edges = v + 1 + seed % 3;
    const auto g = gen::gen_graph({v, edges, true, 90000 + seed, false});
    if (!every_vertex_has_in_and_out(g)) continue;
    if (hc::compile(g).qubo.size() > kNegativeDimension) continue;
    if (oracle::find_hamiltonian_cycle(g)) continue;
    ++found;
    g_compiled_graphs.push_back(g);
    const auto comp = hc::compile(g);
    largest = std::max(largest, comp.qubo.size());
    const auto ground = solve_exhaustive(comp.qubo).energy;
    if (ground <= hc::optimal_energy(v)) {
      o.fail("cycle-free graph reached energy " + std::to_string(ground));
    }
  }
  if (found < kNegativeInstances) o.fail("only " + std::to_string(found) + " cycle-free graphs");
  if (o.pass) {
    o.detail = std::to_string(found) + " cycle-free graphs, n<=" + std::to_string(largest) +
               ", all minima above optimum";
  }
  return o;
}

// ---------------------------------------------------------------------------

Outcome criterion6() {
  Outcome o;
  for (const auto& g : g_compiled_graphs) {
    const std::size_t bound = g.edges().size() * ceil_log2_plus_one(g.vertex_count());
    if (hc::compile(g).qubo.size() > bound) o.fail("dimension above |E|*ceil(log2(|V|+1))");
  }
  for (std::uint32_t n = 5; n <= 40; ++n) {
    const auto g = hc::complete_graph(n);
    const auto sizes = hc::size_report(g);
    if (sizes.ours != hc::encode_positions(g).dimension()) o.fail("size report disagrees with encoding");
    if (sizes.ours > g.edges().size() * ceil_log2_plus_one(n)) o.fail("complete graph bound");
    if (sizes.ours <= std::size_t{n} * n) o.fail("ours <= N^2 on complete N=" + std::to_string(n));
  }
  // Smallest N from which ours < N^2 holds through N = 256.
  std::uint32_t crossover = 0;
  for (std::uint32_t n = 256; n >= 5; --n) {
    const auto g = hc::circulant_graph(n, 4);
    if (g.edges().size() != 4 * n) o.fail("circulant graph does not have 4|V| edges");
    const auto sizes = hc::size_report(g);
    if (sizes.ours > g.edges().size() * ceil_log2_plus_one(n)) o.fail("|E|=4|V| bound");
    if (sizes.ours >= std::size_t{n} * n) break;
    crossover = n;
  }
  if (crossover == 0 || crossover > kCrossoverCeiling) {
    o.fail("crossover at N=" + std::to_string(crossover));
  }
  if (o.pass) {
    o.detail = std::to_string(g_compiled_graphs.size()) +
               " instances within bound; complete 5..40 above N^2; |E|=4|V| crossover N=" +
               std::to_string(crossover);
  }
  return o;
}

// ---------------------------------------------------------------------------

std::int64_t square_eval(const AffineExpr& e, const Bits& x) {
  const auto v = e.evaluate(x);
  return v * v;
}

Outcome criterion7() {
  Outcome o;
  std::size_t exhaustive_cases = 0;
  // All expressions over up to 4 variables with coefficients and constant in [-2, 2].
  for (std::uint32_t n = 1; n <= 4; ++n) {
    std::uint32_t combos = 1;
    for (std::uint32_t i = 0; i <= n; ++i) combos *= 5;
    for (std::uint32_t code = 0; code < combos; ++code) {
      std::uint32_t c = code;
      AffineExpr e(static_cast<std::int64_t>(c % 5) - 2);
      c /= 5;
      for (std::uint32_t i = 0; i < n; ++i, c /= 5) {
        e.add_term(VariableId{i}, static_cast<std::int64_t>(c % 5) - 2);
      }
      QuboAccumulator q(n);
      q.add_squared(e);
      ++exhaustive_cases;
      for (std::uint32_t bits = 0; bits < (1U << n); ++bits) {
        Bits x(n);
        for (std::uint32_t i = 0; i < n; ++i) x[i] = (bits >> i) & 1U;
        if (q.energy(x) != square_eval(e, x)) o.fail("add_squared mismatch (exhaustive)");
      }
    }
  }
  std::mt19937_64 rng(777);
  for (int t = 0; t < kRandomSquaredCases; ++t) {
    const std::uint32_t n = 1 + rng() % 12;
    AffineExpr e(static_cast<std::int64_t>(rng() % 2001) - 1000);
    const std::uint32_t terms = 1 + rng() % 10;
    for (std::uint32_t i = 0; i < terms; ++i) {
      e.add_term(VariableId{static_cast<std::uint32_t>(rng() % n)},
                 static_cast<std::int64_t>(rng() % 2001) - 1000);
    }
    QuboAccumulator q(n);
    q.add_squared(e);
    for (int s = 0; s < 8; ++s) {
      Bits x(n);
      for (auto& b : x) b = rng() & 1U;
      if (q.energy(x) != square_eval(e, x)) o.fail("add_squared mismatch (random)");
    }
  }

  // Incremental deltas on an HC and a SAT compilation.
  std::uint64_t checks = 0;
  try {
    SaParams p;
    p.sweeps = 100;
    p.restarts = 2;
    p.check_every = 1;
    const auto hc_comp = hc::compile(gen::gen_graph({6, 14, true, 11, true}));
    checks += solve_sa(hc_comp.qubo, p).delta_checks;
    const auto sat_comp = sat::compile(gen::gen_sat({10, 6, 6, 12, false}));
    checks += solve_sa(sat_comp.qubo, p).delta_checks;
  } catch (const std::logic_error& e) {
    o.fail(std::string("delta check: ") + e.what());
  }
  if (checks < kDeltaChecks) o.fail("only " + std::to_string(checks) + " delta checks");

  // Byte-identical serialization round trips.
  int round_trips = 0;
  auto round_trip = [&](const QuboAccumulator& q, const VariableRegistry& reg) {
    const auto text = serialize(q, reg);
    const auto back = deserialize(text);
    if (serialize(back.qubo, back.registry) != text) o.fail("serialization not byte-identical");
    if (!(back.qubo == q) || !(back.registry == reg)) o.fail("deserialized model differs");
    ++round_trips;
  };
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto sat_comp = sat::compile(gen::gen_sat({9, 7, 3 + static_cast<std::uint32_t>(s % 6), s, false}));
    round_trip(sat_comp.qubo, sat_comp.registry);
    const auto g = gen::gen_graph({5 + static_cast<std::uint32_t>(s % 3), 10, s % 2 == 0, s, true});
    const auto hc_comp = hc::compile(g);
    round_trip(hc_comp.qubo, hc_comp.registry);
    const auto lucas = hc::lucas_compile(g);
    round_trip(lucas.qubo, lucas.registry);
  }
  if (o.pass) {
    o.detail = std::to_string(exhaustive_cases) + " exhaustive + " +
               std::to_string(kRandomSquaredCases) + " random squares, " +
               std::to_string(checks) + " delta checks, " + std::to_string(round_trips) +
               " round trips";
  }
  return o;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    double budget;
    std::function<Outcome()> run;
  };
  const Entry entries[] = {
      {1, kBudget1, criterion1}, {2, kBudget2, criterion2}, {3, kBudget3, criterion3},
      {4, kBudget4, criterion4}, {5, kBudget5, criterion5}, {6, kBudget6, criterion6},
      {7, kBudget7, criterion7},
  };
  int failures = 0;
  for (const auto& entry : entries) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = entry.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > entry.budget) {
      o.fail("took " + std::to_string(secs) + " s, budget " + std::to_string(entry.budget));
    }
    if (!o.pass) ++failures;
    std::printf("criterion %d: %s  %s  [%.2f s]\n", entry.id, o.pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
