#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "torus_nbc/mesh.hpp"
#include "torus_nbc/vertex_set.hpp"

namespace torus_nbc {

// Induced subgraph of a mesh on the `alive` vertices.
class AliveGraph {
 public:
  AliveGraph(Mesh mesh, VertexSet alive);
  static AliveGraph intact(const Mesh& mesh);

  const Mesh& mesh() const noexcept { return mesh_; }
  const VertexSet& alive() const noexcept { return alive_; }
  std::size_t vertex_count() const noexcept { return alive_.count(); }
  bool contains(Vertex v) const noexcept { return alive_.contains(v); }
  bool adjacent(Vertex a, Vertex b) const {
    return contains(a) && contains(b) && mesh_.adjacent(a, b);
  }

 private:
  Mesh mesh_;
  VertexSet alive_;
};

enum class GraphState { kEmpty, kComplete, kDisconnected, kOther };

std::string_view to_string(GraphState state);

// Empty graph -> no blocks. Blocks are sorted; so is the block list (by
// first vertex).
std::vector<std::vector<Vertex>> connected_components(const AliveGraph& g);

// Precedence Empty, Complete (K1 included), Disconnected, Other.
GraphState classify(const AliveGraph& g);

// Exact vertex connectivity. 0 for the empty, trivial and disconnected
// graphs; m - 1 for K_m.
std::size_t vertex_connectivity(const AliveGraph& g);

enum class BundleKind { kDisjointPaths, kFan };

struct PathBundle {
  BundleKind kind = BundleKind::kDisjointPaths;
  Vertex source;
  std::vector<Vertex> targets;
  std::vector<std::vector<Vertex>> paths;
  // Set by fan() when fewer than |targets| paths exist.
  bool partial = false;

  std::size_t count() const noexcept { return paths.size(); }
};

// Up to k internally vertex-disjoint x-y paths (the direct edge counts as one
// path when present). Throws Error{kVertexDead}, Error{kSameVertex}.
PathBundle disjoint_paths(const AliveGraph& g, Vertex x, Vertex y,
                          std::size_t k);

// Maximum-size (x, Y)-fan; `partial` marks a fan shorter than |Y|.
// Throws Error{kVertexDead}, Error{kEmptyTargetSet}, Error{kInvalidVertex}
// when x is in Y.
PathBundle fan(const AliveGraph& g, Vertex x, std::span<const Vertex> targets);

// Re-checks a bundle without touching the flow code: alive vertices only,
// consecutive vertices adjacent, paths simple, endpoints in place, and
// disjointness (interiors for x-y paths, everything but x for fans).
// Returns a description of the first defect, or nullopt.
std::optional<std::string> validate_path_bundle(const AliveGraph& g,
                                                const PathBundle& bundle);

// Bitset classifier for repeated queries against one mesh: completeness by
// pairwise adjacency on small sets, connectivity by flood fill through
// NeighborhoodOperator. Holds scratch buffers, so one instance per thread.
class SetClassifier {
 public:
  explicit SetClassifier(const Mesh& mesh);

  GraphState classify(const VertexSet& alive);

 private:
  Mesh mesh_;
  NeighborhoodOperator neighborhood_;
  VertexSet reach_;
  VertexSet next_;
};

}  // namespace torus_nbc
