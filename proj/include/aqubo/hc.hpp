#pragma once

// Edge-position QUBO compilation of the Hamiltonian cycle problem.
//
// Every directed edge carries a binary-encoded position P_e in the cycle,
// 0 meaning "unused". Edges leaving the start vertex can only sit at position
// 1 and edges entering it only at position |V|, so those get one variable
// each. The per-edge quadratic parts of (P_next - P_prev - 1)^2 and of the
// start/end anchors are inserted once per edge; the cross terms become
// -2 P_next P_prev couplings between consecutive edges, and edges sharing a
// tail or a head are kept apart by a 2|V|^2 conflict penalty. A valid cycle
// has energy exactly -|V|(|V|+1).

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "aqubo/graph.hpp"
#include "aqubo/qubo.hpp"

namespace aqubo::hc {

/// ceil(log2(n + 1)).
std::uint32_t position_width(std::uint32_t vertex_count);

/// P_edge = sum of weight * x over the edge's variables.
struct EdgeEncoding {
  std::vector<std::vector<AffineExpr::Term>> edges;

  AffineExpr position(std::size_t edge) const;
  std::int64_t position(std::size_t edge, std::span<const std::uint8_t> x) const;
  std::size_t dimension() const;
};

/// Width 1 (weight 1) for edges out of the start, width 1 (weight |V|) for
/// edges into it, position_width bits otherwise. Variables are numbered in
/// edge order, then bit order.
EdgeEncoding encode_positions(const Graph& g);

/// |E| * ceil(log2(|V| + 1)).
std::size_t dimension_bound(const Graph& g);

struct HcCompilation {
  QuboAccumulator qubo;
  VariableRegistry registry;
  EdgeEncoding encoding;
  Graph graph;
};

HcCompilation compile(const Graph& g);

/// -|V|(|V|+1), the energy of every valid cycle.
std::int64_t optimal_energy(std::uint32_t vertex_count);

struct DecodeResult {
  Cycle cycle;
  /// Empty when the vector encodes a valid Hamiltonian cycle.
  std::string rejection;

  bool ok() const { return rejection.empty(); }
};

/// Reads the positions of all edges and accepts only an exact Hamiltonian
/// cycle: active edges at positions 1..|V| each once, chained head to tail,
/// leaving the start at 1 and returning at |V|.
DecodeResult decode(std::span<const std::uint8_t> solution,
                    const HcCompilation& comp);

/// Vector whose edge positions trace the given cycle; all other edges 0.
Bits encode_cycle(const HcCompilation& comp, const Cycle& cycle);

/// Vertex-by-slot one-hot baseline: N^2 variables x_{v,j},
///   sum_v (1 - sum_j x_vj)^2 + sum_j (1 - sum_v x_vj)^2
///   + sum_{(u,v) not in E, u != v} sum_j x_{u,j} x_{v,j+1}   (slots cyclic).
/// Ground energy 0 iff a Hamiltonian cycle exists.
struct LucasCompilation {
  QuboAccumulator qubo;
  VariableRegistry registry;
  Graph graph;
};

LucasCompilation lucas_compile(const Graph& g);
DecodeResult lucas_decode(std::span<const std::uint8_t> solution,
                          const LucasCompilation& comp);
Bits lucas_encode_cycle(const LucasCompilation& comp, const Cycle& cycle);

struct SizeReport {
  std::size_t ours = 0;
  std::size_t lucas = 0;
};

/// Both dimensions, computed from the width rules without building matrices.
SizeReport size_report(const Graph& g);

}  // namespace aqubo::hc
