#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace aqubo::hc {

using Vertex = std::uint32_t;

struct Edge {
  Vertex tail = 0;
  Vertex head = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Directed simple graph on vertices 0..n-1, n >= 3. Vertex 0 is the start
/// vertex of every cycle.
class Graph {
 public:
  static constexpr Vertex kStart = 0;

  /// Throws StructuralError on self-loops, duplicates, out-of-range
  /// endpoints or fewer than 3 vertices.
  Graph(std::uint32_t vertex_count, std::vector<Edge> edges);

  /// Each pair becomes two opposite directed edges.
  static Graph undirected(std::uint32_t vertex_count,
                          const std::vector<std::pair<Vertex, Vertex>>& pairs);

  std::uint32_t vertex_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool has_edge(Vertex a, Vertex b) const { return adjacency_[a * n_ + b]; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::uint32_t n_;
  std::vector<Edge> edges_;
  std::vector<std::uint8_t> adjacency_;
};

/// Complete directed graph, n(n-1) edges.
Graph complete_graph(std::uint32_t n);

/// Edges v -> v+1 .. v+degree (mod n); |E| = degree * n.
Graph circulant_graph(std::uint32_t n, std::uint32_t degree);

/// Vertex sequence of a cycle starting at the start vertex; the closing edge
/// back to the start is implicit.
using Cycle = std::vector<Vertex>;

/// nullopt if the cycle is a Hamiltonian cycle of g, else the first failed
/// check.
std::optional<std::string> check_cycle(const Graph& g, const Cycle& cycle);

/// Format: `p hc <|V|> <|E|> <directed|undirected>` then `<a> <b>` lines,
/// 1-based vertex ids. Throws ParseError.
Graph read_graph(std::istream& in);
Graph parse_graph(const std::string& text);
/// Always writes the directed form.
void write_graph(std::ostream& out, const Graph& g);

}  // namespace aqubo::hc
