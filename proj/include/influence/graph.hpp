#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "influence/rng.hpp"

namespace influence {

using NodeId = std::uint32_t;

struct Lattice2d {
  int rows = 0;
  int cols = 0;
};

struct BarabasiAlbert {
  int m = 0;
};

struct CustomGraph {};

using GraphKind = std::variant<Lattice2d, BarabasiAlbert, CustomGraph>;

/// Immutable undirected simple graph in compressed adjacency form. Neighbor
/// lists are sorted by NodeId.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an undirected edge list. Rejects self-loops,
  /// duplicate edges, out-of-range endpoints and disconnected graphs.
  static Graph from_edges(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges,
                          GraphKind kind = CustomGraph{});

  std::size_t size() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return targets_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const noexcept {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  const GraphKind& kind() const noexcept { return kind_; }
  const Lattice2d* lattice() const noexcept { return std::get_if<Lattice2d>(&kind_); }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
  GraphKind kind_ = CustomGraph{};
};

/// rows x cols torus with von Neumann neighborhoods; node (r, c) has id r*cols + c.
Graph make_lattice2d_pbc(int rows, int cols);

/// Preferential attachment: complete graph on m seed nodes, then each new
/// node attaches to m distinct existing nodes drawn proportionally to degree.
Graph make_barabasi_albert(std::size_t n, int m, Rng& rng);

/// Nodes at graph distance 1..radius from `node`, sorted, center excluded.
std::vector<NodeId> k_ball(const Graph& graph, NodeId node, int radius);

/// k_ball for every node, stored contiguously.
class NeighborhoodTable {
 public:
  NeighborhoodTable() = default;

  int radius() const noexcept { return radius_; }
  std::size_t size() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }

  std::span<const NodeId> ball(NodeId v) const noexcept {
    return {members_.data() + offsets_[v], members_.data() + offsets_[v + 1]};
  }

  bool contains(NodeId center, NodeId other) const noexcept;

 private:
  friend NeighborhoodTable precompute_neighborhoods(const Graph&, int);

  int radius_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> members_;
};

NeighborhoodTable precompute_neighborhoods(const Graph& graph, int radius);

/// Exact diameter by BFS from every node.
int diameter(const Graph& graph);

bool is_connected(const Graph& graph);

/// "# nodes=N" header followed by one "u v" line per edge, u < v, ascending.
void write_edge_list(const Graph& graph, std::ostream& out);

}  // namespace influence
