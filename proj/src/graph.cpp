#include "influence/graph.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "influence/error.hpp"

namespace influence {

namespace {

// Reusable BFS workspace; `stamp` avoids clearing the visited array per source.
struct Bfs {
  explicit Bfs(std::size_t n) : mark(n, 0), dist(n, 0) { frontier.reserve(n); }

  // Visits every node within `radius` of `source` (source included) and
  // returns the largest distance reached.
  template <typename Visit>
  int run(const Graph& graph, NodeId source, int radius, Visit&& visit) {
    ++stamp;
    frontier.clear();
    frontier.push_back(source);
    mark[source] = stamp;
    dist[source] = 0;
    int reached = 0;
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      const NodeId u = frontier[head];
      visit(u, dist[u]);
      reached = dist[u];
      if (dist[u] == radius) continue;
      for (NodeId w : graph.neighbors(u)) {
        if (mark[w] == stamp) continue;
        mark[w] = stamp;
        dist[w] = dist[u] + 1;
        frontier.push_back(w);
      }
    }
    return reached;
  }

  std::vector<std::uint32_t> mark;
  std::vector<int> dist;
  std::vector<NodeId> frontier;
  std::uint32_t stamp = 0;
};

void collect_ball(const Graph& graph, NodeId node, int radius, Bfs& bfs, std::vector<NodeId>& out) {
  out.clear();
  bfs.run(graph, node, radius, [&](NodeId u, int) {
    if (u != node) out.push_back(u);
  });
  std::sort(out.begin(), out.end());
}

void require_radius(int radius) {
  if (radius < 1) {
    throw Error(ErrorKind::invalid_parameter, "radius must be >= 1, got " + std::to_string(radius));
  }
}

}  // namespace

Graph Graph::from_edges(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges,
                        GraphKind kind) {
  if (n == 0) throw Error(ErrorKind::invalid_parameter, "graph must have at least one node");

  std::vector<std::vector<NodeId>> adjacency(n);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) {
      throw Error(ErrorKind::invalid_parameter,
                  "edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
    }
    if (u == v) throw Error(ErrorKind::invalid_parameter, "self-loop at node " + std::to_string(u));
    adjacency[u].push_back(v);
    adjacency[v].push_back(u);
  }

  Graph g;
  g.kind_ = kind;
  g.offsets_.reserve(n + 1);
  g.offsets_.push_back(0);
  g.targets_.reserve(2 * edges.size());
  for (std::size_t v = 0; v < n; ++v) {
    auto& list = adjacency[v];
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
      throw Error(ErrorKind::invalid_parameter, "duplicate edge at node " + std::to_string(v));
    }
    g.targets_.insert(g.targets_.end(), list.begin(), list.end());
    g.offsets_.push_back(g.targets_.size());
  }

  if (!is_connected(g)) throw Error(ErrorKind::invalid_parameter, "graph is not connected");
  return g;
}

Graph make_lattice2d_pbc(int rows, int cols) {
  // Below 3 the wraparound neighbors coincide and edges would be duplicated.
  if (rows < 3 || cols < 3) {
    throw Error(ErrorKind::invalid_dimension, "lattice dimensions must be >= 3, got " +
                                                  std::to_string(rows) + "x" + std::to_string(cols));
  }
  const auto id = [cols](int r, int c) { return static_cast<NodeId>(r * cols + c); };
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(static_cast<std::size_t>(2 * rows * cols));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      edges.emplace_back(id(r, c), id(r, (c + 1) % cols));
      edges.emplace_back(id(r, c), id((r + 1) % rows, c));
    }
  }
  return Graph::from_edges(static_cast<std::size_t>(rows) * cols, edges, Lattice2d{rows, cols});
}

Graph make_barabasi_albert(std::size_t n, int m, Rng& rng) {
  if (m < 1 || n <= static_cast<std::size_t>(m)) {
    throw Error(ErrorKind::invalid_parameter, "Barabasi-Albert requires n > m >= 1, got n=" +
                                                  std::to_string(n) + " m=" + std::to_string(m));
  }
  const auto seed_size = static_cast<NodeId>(m);
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(static_cast<std::size_t>(m) * n);

  // Every edge contributes both endpoints, so a uniform draw from this list is
  // a degree-proportional draw over nodes.
  std::vector<NodeId> endpoints;
  endpoints.reserve(2 * static_cast<std::size_t>(m) * n);

  for (NodeId u = 0; u < seed_size; ++u) {
    for (NodeId v = u + 1; v < seed_size; ++v) {
      edges.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }

  std::vector<NodeId> chosen;
  chosen.reserve(static_cast<std::size_t>(m));
  for (auto v = seed_size; v < n; ++v) {
    chosen.clear();
    while (chosen.size() < static_cast<std::size_t>(m)) {
      // Only the m = 1 seed has no edges yet; fall back to a uniform pick.
      const NodeId target = endpoints.empty() ? static_cast<NodeId>(rng.below(v))
                                              : endpoints[rng.below(endpoints.size())];
      if (std::find(chosen.begin(), chosen.end(), target) == chosen.end()) chosen.push_back(target);
    }
    for (NodeId target : chosen) {
      edges.emplace_back(target, v);
      endpoints.push_back(target);
      endpoints.push_back(v);
    }
  }
  return Graph::from_edges(n, edges, BarabasiAlbert{m});
}

std::vector<NodeId> k_ball(const Graph& graph, NodeId node, int radius) {
  require_radius(radius);
  if (node >= graph.size()) {
    throw Error(ErrorKind::invalid_parameter, "node " + std::to_string(node) + " out of range");
  }
  Bfs bfs(graph.size());
  std::vector<NodeId> out;
  collect_ball(graph, node, radius, bfs, out);
  return out;
}

bool NeighborhoodTable::contains(NodeId center, NodeId other) const noexcept {
  const auto members = ball(center);
  return std::binary_search(members.begin(), members.end(), other);
}

NeighborhoodTable precompute_neighborhoods(const Graph& graph, int radius) {
  require_radius(radius);
  NeighborhoodTable table;
  table.radius_ = radius;
  table.offsets_.reserve(graph.size() + 1);
  table.offsets_.push_back(0);

  Bfs bfs(graph.size());
  std::vector<NodeId> scratch;
  for (NodeId v = 0; v < graph.size(); ++v) {
    collect_ball(graph, v, radius, bfs, scratch);
    table.members_.insert(table.members_.end(), scratch.begin(), scratch.end());
    table.offsets_.push_back(table.members_.size());
  }
  return table;
}

int diameter(const Graph& graph) {
  Bfs bfs(graph.size());
  int best = 0;
  const int unbounded = static_cast<int>(graph.size());
  for (NodeId v = 0; v < graph.size(); ++v) {
    best = std::max(best, bfs.run(graph, v, unbounded, [](NodeId, int) {}));
  }
  return best;
}

bool is_connected(const Graph& graph) {
  if (graph.size() == 0) return true;
  Bfs bfs(graph.size());
  std::size_t seen = 0;
  bfs.run(graph, 0, static_cast<int>(graph.size()), [&](NodeId, int) { ++seen; });
  return seen == graph.size();
}

void write_edge_list(const Graph& graph, std::ostream& out) {
  out << "# nodes=" << graph.size() << '\n';
  for (NodeId u = 0; u < graph.size(); ++u) {
    for (NodeId v : graph.neighbors(u)) {
      if (u < v) out << u << ' ' << v << '\n';
    }
  }
}

}  // namespace influence
