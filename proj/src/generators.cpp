#include "aqubo/generators.hpp"

#include <random>
#include <sstream>

#include "aqubo/errors.hpp"
#include "aqubo/oracles.hpp"

namespace aqubo::gen {

namespace {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

template <typename T>
void shuffle_prefix(std::vector<T>& items, std::size_t count,
                    std::mt19937_64& rng) {
  for (std::size_t i = 0; i < count && i + 1 < items.size(); ++i) {
    const auto j = i + uniform_below(rng, items.size() - i);
    std::swap(items[i], items[j]);
  }
}

sat::Formula draw_formula(const SatSpec& spec, std::mt19937_64& rng) {
  sat::Formula f;
  f.variable_count = spec.variables;
  std::vector<std::uint32_t> pool(spec.variables);
  for (std::uint32_t v = 0; v < spec.variables; ++v) pool[v] = v;
  for (std::uint32_t c = 0; c < spec.clauses; ++c) {
    shuffle_prefix(pool, spec.k, rng);
    sat::Clause clause;
    for (std::uint32_t i = 0; i < spec.k; ++i) {
      clause.push_back({pool[i], (rng() & 1U) != 0});
    }
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

}  // namespace

sat::Formula gen_sat(const SatSpec& spec) {
  if (spec.k == 0 || spec.k > spec.variables) {
    throw GenerationError("clause width k=" + std::to_string(spec.k) +
                          " needs 1 <= k <= variables=" +
                          std::to_string(spec.variables));
  }
  std::mt19937_64 rng(spec.seed);
  const std::uint32_t attempts =
      spec.require_satisfiable ? std::max(1U, spec.max_attempts) : 1;
  for (std::uint32_t a = 0; a < attempts; ++a) {
    auto f = draw_formula(spec, rng);
    if (!spec.require_satisfiable || oracle::is_satisfiable(f).satisfiable) {
      return f;
    }
  }
  std::ostringstream msg;
  msg << "no satisfiable formula after " << attempts
      << " attempts at clause/variable ratio "
      << static_cast<double>(spec.clauses) / spec.variables;
  throw GenerationError(msg.str());
}

hc::Graph gen_graph(const GraphSpec& spec) {
  const std::uint64_t n = spec.vertices;
  if (n < 3) throw GenerationError("graphs need at least 3 vertices");
  const std::uint64_t max_edges = spec.directed ? n * (n - 1) : n * (n - 1) / 2;
  if (spec.edges > max_edges) {
    throw GenerationError(std::to_string(spec.edges) + " edges exceed the " +
                          std::to_string(max_edges) + " possible");
  }
  if (spec.plant_cycle && spec.edges < n) {
    throw GenerationError("a planted cycle needs at least |V| edges");
  }

  std::mt19937_64 rng(spec.seed);
  using Pair = std::pair<hc::Vertex, hc::Vertex>;
  auto key = [&](Pair p) {
    if (!spec.directed && p.first > p.second) std::swap(p.first, p.second);
    return p;
  };

  std::vector<Pair> chosen;
  std::vector<std::uint8_t> taken(n * n, 0);
  if (spec.plant_cycle) {
    std::vector<hc::Vertex> perm(n);
    for (hc::Vertex v = 0; v < n; ++v) perm[v] = v;
    shuffle_prefix(perm, n, rng);
    for (std::size_t i = 0; i < n; ++i) {
      const auto p = key({perm[i], perm[(i + 1) % n]});
      chosen.push_back(p);
      taken[p.first * n + p.second] = 1;
    }
  }
  std::vector<Pair> candidates;
  for (hc::Vertex a = 0; a < n; ++a) {
    for (hc::Vertex b = spec.directed ? 0 : a + 1; b < n; ++b) {
      if (a != b && !taken[a * n + b]) candidates.emplace_back(a, b);
    }
  }
  const std::size_t extra = spec.edges - chosen.size();
  shuffle_prefix(candidates, extra, rng);
  chosen.insert(chosen.end(), candidates.begin(), candidates.begin() + extra);
  shuffle_prefix(chosen, chosen.size(), rng);

  if (!spec.directed) {
    return hc::Graph::undirected(spec.vertices, chosen);
  }
  std::vector<hc::Edge> edges;
  edges.reserve(chosen.size());
  for (const auto& [a, b] : chosen) edges.push_back({a, b});
  return hc::Graph(spec.vertices, std::move(edges));
}

}  // namespace aqubo::gen
