#include "aqubo/hc.hpp"

#include <algorithm>
#include <bit>

#include "aqubo/errors.hpp"

namespace aqubo::hc {

std::uint32_t position_width(std::uint32_t vertex_count) {
  return static_cast<std::uint32_t>(std::bit_width(vertex_count));
}

AffineExpr EdgeEncoding::position(std::size_t edge) const {
  AffineExpr p;
  for (const auto& [id, w] : edges.at(edge)) p.add_term(id, w);
  return p;
}

std::int64_t EdgeEncoding::position(std::size_t edge,
                                    std::span<const std::uint8_t> x) const {
  std::int64_t p = 0;
  for (const auto& [id, w] : edges.at(edge)) {
    if (x[id.index]) p += w;
  }
  return p;
}

std::size_t EdgeEncoding::dimension() const {
  std::size_t n = 0;
  for (const auto& e : edges) n += e.size();
  return n;
}

EdgeEncoding encode_positions(const Graph& g) {
  const auto n = g.vertex_count();
  if (n < 3) throw StructuralError("graph needs at least 3 vertices");
  const auto z = position_width(n);
  EdgeEncoding enc;
  std::uint32_t next = 0;
  for (const auto& e : g.edges()) {
    auto& vars = enc.edges.emplace_back();
    if (e.tail == Graph::kStart) {
      vars.push_back({VariableId{next++}, 1});
    } else if (e.head == Graph::kStart) {
      vars.push_back({VariableId{next++}, n});
    } else {
      for (std::uint32_t bit = 0; bit < z; ++bit) {
        vars.push_back({VariableId{next++}, std::int64_t{1} << bit});
      }
    }
  }
  return enc;
}

std::size_t dimension_bound(const Graph& g) {
  return g.edges().size() * position_width(g.vertex_count());
}

HcCompilation compile(const Graph& g) {
  HcCompilation comp{QuboAccumulator{}, VariableRegistry{},
                     encode_positions(g), g};
  const auto& edges = g.edges();
  const auto& enc = comp.encoding;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    for (std::uint32_t bit = 0; bit < enc.edges[e].size(); ++bit) {
      comp.registry.add(EdgeBit{edges[e].tail, edges[e].head, bit});
    }
  }
  comp.qubo.grow_to(comp.registry.size());

  const std::int64_t n = g.vertex_count();
  const std::int64_t conflict = 2 * n * n;
  std::vector<AffineExpr> positions;
  positions.reserve(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) positions.push_back(enc.position(e));

  auto& q = comp.qubo;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [a, b] = edges[e];
    q.add_bilinear(positions[e], positions[e], 2);
    if (b == Graph::kStart) q.add_linear(positions[e], -2 * (n + 1));

    for (std::size_t f = 0; f < edges.size(); ++f) {
      const auto [c, d] = edges[f];
      if ((a == c) != (b == d)) {
        for (const auto& [u, wu] : enc.edges[e]) {
          for (const auto& [v, wv] : enc.edges[f]) q.add_entry(u, v, conflict);
        }
      } else if (b == c && b != Graph::kStart) {
        // (c,d) continues (a,b). The mirrored test a == d is not applied:
        // it would visit the same pair again from the other side.
        q.add_bilinear(positions[f], positions[e], -2);
      }
    }
  }
  return comp;
}

std::int64_t optimal_energy(std::uint32_t vertex_count) {
  const std::int64_t n = vertex_count;
  return -n * (n + 1);
}

namespace {

DecodeResult reject(std::string why) { return {{}, std::move(why)}; }

std::string edge_name(const Edge& e) {
  return "(" + std::to_string(e.tail + 1) + "," + std::to_string(e.head + 1) +
         ")";
}

}  // namespace

DecodeResult decode(std::span<const std::uint8_t> solution,
                    const HcCompilation& comp) {
  if (solution.size() != comp.qubo.size()) {
    throw StructuralError("solution length " + std::to_string(solution.size()) +
                          " does not match dimension " +
                          std::to_string(comp.qubo.size()));
  }
  const auto& g = comp.graph;
  const auto n = g.vertex_count();
  const auto& edges = g.edges();

  std::vector<std::int64_t> slot_edge(n + 1, -1);
  std::vector<std::uint8_t> out_used(n, 0);
  std::vector<std::uint8_t> in_used(n, 0);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto p = comp.encoding.position(e, solution);
    if (p == 0) continue;
    if (p > n) {
      return reject("edge " + edge_name(edges[e]) + " at position " +
                    std::to_string(p) + " beyond " + std::to_string(n));
    }
    if (out_used[edges[e].tail]) {
      return reject("duplicate source: two active edges leave vertex " +
                    std::to_string(edges[e].tail + 1));
    }
    if (in_used[edges[e].head]) {
      return reject("duplicate target: two active edges enter vertex " +
                    std::to_string(edges[e].head + 1));
    }
    out_used[edges[e].tail] = in_used[edges[e].head] = 1;
    if (slot_edge[p] >= 0) {
      return reject("two edges at position " + std::to_string(p));
    }
    slot_edge[p] = static_cast<std::int64_t>(e);
  }
  for (std::uint32_t p = 1; p <= n; ++p) {
    if (slot_edge[p] < 0) {
      return reject("no edge at position " + std::to_string(p));
    }
  }
  if (edges[slot_edge[1]].tail != Graph::kStart) {
    return reject("position 1 does not leave the start vertex");
  }
  if (edges[slot_edge[n]].head != Graph::kStart) {
    return reject("position " + std::to_string(n) +
                  " does not enter the start vertex");
  }
  Cycle cycle;
  for (std::uint32_t p = 1; p <= n; ++p) {
    const auto& e = edges[slot_edge[p]];
    if (p < n && e.head != edges[slot_edge[p + 1]].tail) {
      return reject("edge at position " + std::to_string(p) +
                    " does not chain into position " + std::to_string(p + 1));
    }
    cycle.push_back(e.tail);
  }
  if (auto why = check_cycle(g, cycle)) return reject(*why);
  return {std::move(cycle), {}};
}

Bits encode_cycle(const HcCompilation& comp, const Cycle& cycle) {
  const auto& g = comp.graph;
  if (auto why = check_cycle(g, cycle)) {
    throw StructuralError("not a Hamiltonian cycle: " + *why);
  }
  const auto n = g.vertex_count();
  Bits x(comp.qubo.size(), 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    const Edge step{cycle[i], cycle[(i + 1) % n]};
    const auto it = std::find(g.edges().begin(), g.edges().end(), step);
    const auto e = static_cast<std::size_t>(it - g.edges().begin());
    std::int64_t remaining = i + 1;
    // Bits are filled from the highest weight down, which handles both the
    // plain binary layout and the single weight-|V| bit into the start.
    const auto& vars = comp.encoding.edges[e];
    for (auto it2 = vars.rbegin(); it2 != vars.rend(); ++it2) {
      if (it2->second <= remaining) {
        x[it2->first.index] = 1;
        remaining -= it2->second;
      }
    }
    if (remaining != 0) {
      throw StructuralError("position " + std::to_string(i + 1) +
                            " not representable on edge " + edge_name(step));
    }
  }
  return x;
}

LucasCompilation lucas_compile(const Graph& g) {
  const auto n = g.vertex_count();
  LucasCompilation comp{QuboAccumulator{}, VariableRegistry{}, g};
  for (std::uint32_t v = 0; v < n; ++v) {
    for (std::uint32_t j = 0; j < n; ++j) comp.registry.add(PositionVar{v, j});
  }
  comp.qubo.grow_to(comp.registry.size());
  auto var = [n](std::uint32_t v, std::uint32_t j) {
    return VariableId{v * n + j};
  };

  for (std::uint32_t v = 0; v < n; ++v) {
    AffineExpr row(1);
    for (std::uint32_t j = 0; j < n; ++j) row.add_term(var(v, j), -1);
    comp.qubo.add_squared(row);
  }
  for (std::uint32_t j = 0; j < n; ++j) {
    AffineExpr col(1);
    for (std::uint32_t v = 0; v < n; ++v) col.add_term(var(v, j), -1);
    comp.qubo.add_squared(col);
  }
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) {
      if (u == v || g.has_edge(u, v)) continue;
      for (std::uint32_t j = 0; j < n; ++j) {
        comp.qubo.add_entry(var(u, j), var(v, (j + 1) % n), 1);
      }
    }
  }
  return comp;
}

DecodeResult lucas_decode(std::span<const std::uint8_t> solution,
                          const LucasCompilation& comp) {
  const auto n = comp.graph.vertex_count();
  if (solution.size() != static_cast<std::size_t>(n) * n) {
    throw StructuralError("solution length does not match N^2");
  }
  Cycle by_slot(n, n);
  for (std::uint32_t v = 0; v < n; ++v) {
    std::uint32_t count = 0;
    for (std::uint32_t j = 0; j < n; ++j) {
      if (!solution[v * n + j]) continue;
      ++count;
      if (by_slot[j] != n) {
        return reject("two vertices at slot " + std::to_string(j + 1));
      }
      by_slot[j] = v;
    }
    if (count != 1) {
      return reject("vertex " + std::to_string(v + 1) + " occupies " +
                    std::to_string(count) + " slots");
    }
  }
  const auto start = std::find(by_slot.begin(), by_slot.end(), Graph::kStart);
  std::rotate(by_slot.begin(), start, by_slot.end());
  if (auto why = check_cycle(comp.graph, by_slot)) return reject(*why);
  return {std::move(by_slot), {}};
}

Bits lucas_encode_cycle(const LucasCompilation& comp, const Cycle& cycle) {
  if (auto why = check_cycle(comp.graph, cycle)) {
    throw StructuralError("not a Hamiltonian cycle: " + *why);
  }
  const auto n = comp.graph.vertex_count();
  Bits x(static_cast<std::size_t>(n) * n, 0);
  for (std::uint32_t j = 0; j < n; ++j) x[cycle[j] * n + j] = 1;
  return x;
}

SizeReport size_report(const Graph& g) {
  const auto n = g.vertex_count();
  const auto z = position_width(n);
  SizeReport r;
  for (const auto& e : g.edges()) {
    r.ours += (e.tail == Graph::kStart || e.head == Graph::kStart) ? 1 : z;
  }
  r.lucas = static_cast<std::size_t>(n) * n;
  return r;
}

}  // namespace aqubo::hc
