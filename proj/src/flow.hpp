#pragma once

// Unit-capacity max flow on the vertex-split form of an AliveGraph.
// Internal to graph.cpp; not installed.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "torus_nbc/graph.hpp"

namespace torus_nbc::detail {

// Alive vertices renumbered 0..m-1 in ascending flat order, adjacency lists
// ascending too, so every traversal below is deterministic.
struct LocalGraph {
  explicit LocalGraph(const AliveGraph& g);

  std::size_t size() const noexcept { return vertices.size(); }
  std::size_t local(Vertex v) const;  // index in `vertices`; v must be alive

  std::vector<Vertex> vertices;
  std::vector<std::vector<std::uint32_t>> adj;
};

// Node 2i is v_i's entry, 2i + 1 its exit; the entry->exit arc carries the
// unit vertex capacity and every mesh edge becomes two exit->entry arcs.
// Sources leave from an exit node and sinks are entered at an entry node, so
// endpoints never consume their own capacity.
class SplitNetwork {
 public:
  // `extra_nodes` are appended after the 2m split nodes (fan super-sink).
  explicit SplitNetwork(const LocalGraph& g, std::size_t extra_nodes = 0);

  static std::size_t entry(std::size_t i) { return 2 * i; }
  static std::size_t exit(std::size_t i) { return 2 * i + 1; }

  std::size_t add_arc(std::size_t from, std::size_t to, std::int32_t cap);

  // Restore every arc to its construction capacity.
  void reset();

  // Dinic, stopping once `limit` units are routed.
  std::size_t max_flow(std::size_t source, std::size_t sink,
                       std::size_t limit = std::numeric_limits<std::size_t>::max());

  // Peels `count` source->sink paths off the current flow, listing the split
  // nodes visited. Arcs are taken in insertion order, i.e. lowest-index
  // neighbour first.
  std::vector<std::vector<std::size_t>> decompose(std::size_t source,
                                                  std::size_t sink,
                                                  std::size_t count);

 private:
  struct Arc {
    std::uint32_t to;
    std::int32_t cap;
  };

  bool build_levels(std::size_t source, std::size_t sink);
  std::int32_t push(std::size_t node, std::size_t sink, std::int32_t limit);

  std::vector<Arc> arcs_;  // arc e pairs with e ^ 1
  std::vector<std::int32_t> base_cap_;
  std::vector<std::vector<std::uint32_t>> out_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
};

}  // namespace torus_nbc::detail
