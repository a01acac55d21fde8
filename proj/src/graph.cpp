#include "aqubo/graph.hpp"

#include <ostream>
#include <sstream>

#include "aqubo/errors.hpp"
#include "text.hpp"

namespace aqubo::hc {

Graph::Graph(std::uint32_t vertex_count, std::vector<Edge> edges)
    : n_(vertex_count), edges_(std::move(edges)) {
  if (n_ < 3) {
    throw StructuralError("graph needs at least 3 vertices, got " +
                          std::to_string(n_));
  }
  adjacency_.assign(static_cast<std::size_t>(n_) * n_, 0);
  for (const auto& e : edges_) {
    if (e.tail >= n_ || e.head >= n_) {
      throw StructuralError("edge endpoint out of range");
    }
    if (e.tail == e.head) {
      throw StructuralError("self-loop at vertex " + std::to_string(e.tail + 1));
    }
    auto& slot = adjacency_[e.tail * n_ + e.head];
    if (slot) {
      throw StructuralError("duplicate edge " + std::to_string(e.tail + 1) +
                            " -> " + std::to_string(e.head + 1));
    }
    slot = 1;
  }
}

Graph Graph::undirected(std::uint32_t vertex_count,
                        const std::vector<std::pair<Vertex, Vertex>>& pairs) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size() * 2);
  for (const auto& [a, b] : pairs) {
    edges.push_back({a, b});
    edges.push_back({b, a});
  }
  return Graph(vertex_count, std::move(edges));
}

Graph complete_graph(std::uint32_t n) {
  std::vector<Edge> edges;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = 0; b < n; ++b) {
      if (a != b) edges.push_back({a, b});
    }
  }
  return Graph(n, std::move(edges));
}

Graph circulant_graph(std::uint32_t n, std::uint32_t degree) {
  if (degree == 0 || degree >= n) {
    throw StructuralError("circulant degree must lie in [1, n-1]");
  }
  std::vector<Edge> edges;
  for (Vertex a = 0; a < n; ++a) {
    for (std::uint32_t d = 1; d <= degree; ++d) edges.push_back({a, (a + d) % n});
  }
  return Graph(n, std::move(edges));
}

std::optional<std::string> check_cycle(const Graph& g, const Cycle& cycle) {
  const auto n = g.vertex_count();
  if (cycle.size() != n) {
    return "cycle visits " + std::to_string(cycle.size()) + " vertices, need " +
           std::to_string(n);
  }
  if (cycle.front() != Graph::kStart) return "cycle does not begin at the start vertex";
  std::vector<std::uint8_t> seen(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex v = cycle[i];
    if (v >= n) return "vertex out of range";
    if (seen[v]) return "vertex " + std::to_string(v + 1) + " visited twice";
    seen[v] = 1;
    const Vertex next = cycle[(i + 1) % n];
    if (next < n && !g.has_edge(v, next)) {
      return "missing edge " + std::to_string(v + 1) + " -> " +
             std::to_string(next + 1);
    }
  }
  return std::nullopt;
}

Graph read_graph(std::istream& in) {
  detail::LineReader reader(in, "c");
  auto header = reader.next_content();
  if (!header) throw ParseError(1, 0, "missing 'p hc' header");
  const std::size_t hline = reader.line_number();
  if (header->size() != 5 || (*header)[0] != "p" || (*header)[1] != "hc") {
    throw ParseError(hline, 1,
                     "expected 'p hc <vertices> <edges> <directed|undirected>'");
  }
  const auto n = detail::parse_int<std::uint32_t>((*header)[2], hline, 3);
  const auto m = detail::parse_int<std::size_t>((*header)[3], hline, 4);
  const std::string& kind = (*header)[4];
  if (kind != "directed" && kind != "undirected") {
    throw ParseError(hline, 5, "expected 'directed' or 'undirected'");
  }
  std::vector<std::pair<Vertex, Vertex>> pairs;
  while (auto fields = reader.next_content()) {
    const std::size_t line = reader.line_number();
    if (fields->size() != 2) throw ParseError(line, 0, "expected '<a> <b>'");
    const auto a = detail::parse_int<std::uint32_t>((*fields)[0], line, 1);
    const auto b = detail::parse_int<std::uint32_t>((*fields)[1], line, 2);
    if (a < 1 || a > n) throw ParseError(line, 1, "vertex out of range");
    if (b < 1 || b > n) throw ParseError(line, 2, "vertex out of range");
    pairs.emplace_back(a - 1, b - 1);
  }
  if (pairs.size() != m) {
    throw ParseError(reader.line_number(), 0,
                     "header declares " + std::to_string(m) + " edges, found " +
                         std::to_string(pairs.size()));
  }
  try {
    if (kind == "undirected") return Graph::undirected(n, pairs);
    std::vector<Edge> edges;
    for (const auto& [a, b] : pairs) edges.push_back({a, b});
    return Graph(n, std::move(edges));
  } catch (const StructuralError& e) {
    throw ParseError(hline, 0, e.what());
  }
}

Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << "p hc " << g.vertex_count() << ' ' << g.edges().size()
      << " directed\n";
  for (const auto& e : g.edges()) out << e.tail + 1 << ' ' << e.head + 1 << '\n';
}

}  // namespace aqubo::hc
