#include "torus_nbc/graph.hpp"

#include <algorithm>
#include <set>

#include "flow.hpp"
#include "torus_nbc/error.hpp"

namespace torus_nbc {

AliveGraph::AliveGraph(Mesh mesh, VertexSet alive)
    : mesh_(std::move(mesh)), alive_(std::move(alive)) {
  if (alive_.universe() != mesh_.vertex_count()) {
    throw Error(ErrorCode::kInvalidVertex,
                "alive set universe does not match " + mesh_.literal());
  }
}

AliveGraph AliveGraph::intact(const Mesh& mesh) {
  return AliveGraph(mesh, VertexSet::full(mesh.vertex_count()));
}

std::string_view to_string(GraphState state) {
  switch (state) {
    case GraphState::kEmpty: return "empty";
    case GraphState::kComplete: return "complete";
    case GraphState::kDisconnected: return "disconnected";
    case GraphState::kOther: return "other";
  }
  return "unknown";
}

std::vector<std::vector<Vertex>> connected_components(const AliveGraph& g) {
  std::vector<std::vector<Vertex>> blocks;
  VertexSet seen(g.mesh().vertex_count());
  g.alive().for_each([&](Vertex root) {
    if (seen.contains(root)) return;
    std::vector<Vertex> block{root};
    seen.insert(root);
    for (std::size_t head = 0; head < block.size(); ++head) {
      g.mesh().for_each_neighbor(block[head], [&](Vertex w) {
        if (g.contains(w) && !seen.contains(w)) {
          seen.insert(w);
          block.push_back(w);
        }
      });
    }
    std::sort(block.begin(), block.end());
    blocks.push_back(std::move(block));
  });
  return blocks;
}

namespace {

bool is_complete(const AliveGraph& g, std::size_t m) {
  if (m > g.mesh().degree() + 1) return false;
  bool complete = true;
  g.alive().for_each([&](Vertex v) {
    std::size_t live = 0;
    g.mesh().for_each_neighbor(v, [&](Vertex w) { live += g.contains(w); });
    complete = complete && live == m - 1;
  });
  return complete;
}

void require_alive(const AliveGraph& g, Vertex v, const char* role) {
  if (!g.mesh().contains(v)) {
    throw Error(ErrorCode::kInvalidVertex,
                std::string(role) + " index " + std::to_string(v.flat) +
                    " outside " + g.mesh().literal());
  }
  if (!g.contains(v)) {
    throw Error(ErrorCode::kVertexDead,
                std::string(role) + " " + g.mesh().format_vertex(v) +
                    " is not alive");
  }
}

// Vertex sequence of a split-network path: keep the mesh vertex behind every
// entry node plus the source.
std::vector<Vertex> to_vertices(const detail::LocalGraph& lg,
                                const std::vector<std::size_t>& nodes,
                                std::size_t node_limit) {
  std::vector<Vertex> out;
  for (std::size_t node : nodes) {
    if (node >= node_limit) continue;  // super-sink
    const std::size_t i = node / 2;
    if (out.empty() || out.back() != lg.vertices[i]) out.push_back(lg.vertices[i]);
  }
  return out;
}

}  // namespace

GraphState classify(const AliveGraph& g) {
  const std::size_t m = g.vertex_count();
  if (m == 0) return GraphState::kEmpty;
  if (is_complete(g, m)) return GraphState::kComplete;
  if (connected_components(g).size() >= 2) return GraphState::kDisconnected;
  return GraphState::kOther;
}

std::size_t vertex_connectivity(const AliveGraph& g) {
  const std::size_t m = g.vertex_count();
  if (m <= 1) return 0;
  if (is_complete(g, m)) return m - 1;
  if (connected_components(g).size() >= 2) return 0;

  const detail::LocalGraph lg(g);
  detail::SplitNetwork net(lg);

  std::size_t pivot = 0;
  for (std::size_t i = 1; i < lg.size(); ++i) {
    if (lg.adj[i].size() < lg.adj[pivot].size()) pivot = i;
  }
  // Not complete, so the minimum-degree vertex has a non-neighbour and its
  // neighbourhood is a separator.
  std::size_t best = lg.adj[pivot].size();

  auto adjacent = [&](std::size_t a, std::size_t b) {
    return std::binary_search(lg.adj[a].begin(), lg.adj[a].end(),
                              static_cast<std::uint32_t>(b));
  };
  auto local_connectivity = [&](std::size_t s, std::size_t t) {
    net.reset();
    return net.max_flow(detail::SplitNetwork::exit(s),
                        detail::SplitNetwork::entry(t), best);
  };

  // Any minimum separator either misses the pivot, leaving it on one side
  // with some non-neighbour on the other, or contains it, in which case two
  // of its non-adjacent neighbours are separated.
  for (std::size_t t = 0; t < lg.size() && best > 0; ++t) {
    if (t == pivot || adjacent(pivot, t)) continue;
    best = std::min(best, local_connectivity(pivot, t));
  }
  const auto& nbrs = lg.adj[pivot];
  for (std::size_t a = 0; a < nbrs.size() && best > 0; ++a) {
    for (std::size_t b = a + 1; b < nbrs.size() && best > 0; ++b) {
      if (adjacent(nbrs[a], nbrs[b])) continue;
      best = std::min(best, local_connectivity(nbrs[a], nbrs[b]));
    }
  }
  return best;
}

PathBundle disjoint_paths(const AliveGraph& g, Vertex x, Vertex y,
                          std::size_t k) {
  require_alive(g, x, "source");
  require_alive(g, y, "target");
  if (x == y) {
    throw Error(ErrorCode::kSameVertex, "disjoint paths need distinct endpoints");
  }
  PathBundle bundle;
  bundle.kind = BundleKind::kDisjointPaths;
  bundle.source = x;
  bundle.targets = {y};
  if (k == 0) return bundle;

  const detail::LocalGraph lg(g);
  detail::SplitNetwork net(lg);
  const std::size_t s = detail::SplitNetwork::exit(lg.local(x));
  const std::size_t t = detail::SplitNetwork::entry(lg.local(y));
  const std::size_t flow = net.max_flow(s, t, k);
  for (const auto& nodes : net.decompose(s, t, flow)) {
    bundle.paths.push_back(to_vertices(lg, nodes, 2 * lg.size()));
  }
  return bundle;
}

PathBundle fan(const AliveGraph& g, Vertex x, std::span<const Vertex> targets) {
  require_alive(g, x, "source");
  if (targets.empty()) {
    throw Error(ErrorCode::kEmptyTargetSet, "fan needs at least one target");
  }
  std::set<Vertex> target_set;
  for (Vertex y : targets) {
    require_alive(g, y, "target");
    if (y == x) {
      throw Error(ErrorCode::kInvalidVertex, "fan source is one of its targets");
    }
    target_set.insert(y);
  }

  PathBundle bundle;
  bundle.kind = BundleKind::kFan;
  bundle.source = x;
  bundle.targets.assign(target_set.begin(), target_set.end());

  const detail::LocalGraph lg(g);
  detail::SplitNetwork net(lg, 1);
  const std::size_t sink = 2 * lg.size();
  for (Vertex y : bundle.targets) {
    net.add_arc(detail::SplitNetwork::exit(lg.local(y)), sink, 1);
  }
  const std::size_t s = detail::SplitNetwork::exit(lg.local(x));
  const std::size_t flow = net.max_flow(s, sink, bundle.targets.size());
  for (const auto& nodes : net.decompose(s, sink, flow)) {
    std::vector<Vertex> path = to_vertices(lg, nodes, sink);
    // End at the first target reached; the remainder only spends capacity.
    for (std::size_t i = 1; i < path.size(); ++i) {
      if (target_set.count(path[i]) != 0) {
        path.resize(i + 1);
        break;
      }
    }
    bundle.paths.push_back(std::move(path));
  }
  bundle.partial = bundle.paths.size() < bundle.targets.size();
  return bundle;
}

std::optional<std::string> validate_path_bundle(const AliveGraph& g,
                                                const PathBundle& bundle) {
  const Mesh& mesh = g.mesh();
  std::set<Vertex> used;
  std::set<Vertex> endpoints;
  for (std::size_t p = 0; p < bundle.paths.size(); ++p) {
    const auto& path = bundle.paths[p];
    const std::string tag = "path " + std::to_string(p);
    if (path.size() < 2) return tag + " has fewer than two vertices";
    if (path.front() != bundle.source) return tag + " does not start at the source";
    const bool target_ok = std::find(bundle.targets.begin(), bundle.targets.end(),
                                     path.back()) != bundle.targets.end();
    if (!target_ok) return tag + " does not end in the target set";
    std::set<Vertex> seen;
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (!g.contains(path[i])) {
        return tag + " visits dead vertex " + mesh.format_vertex(path[i]);
      }
      if (!seen.insert(path[i]).second) {
        return tag + " repeats " + mesh.format_vertex(path[i]);
      }
      if (i > 0 && !mesh.adjacent(path[i - 1], path[i])) {
        return tag + " steps between non-adjacent " +
               mesh.format_vertex(path[i - 1]) + " and " +
               mesh.format_vertex(path[i]);
      }
    }
    // Interior vertices, plus the far endpoint for fans, are exclusive.
    const std::size_t stop =
        bundle.kind == BundleKind::kFan ? path.size() : path.size() - 1;
    for (std::size_t i = 1; i < stop; ++i) {
      if (!used.insert(path[i]).second) {
        return tag + " shares " + mesh.format_vertex(path[i]) +
               " with another path";
      }
    }
    if (bundle.kind == BundleKind::kFan) {
      if (!endpoints.insert(path.back()).second) {
        return tag + " reuses endpoint " + mesh.format_vertex(path.back());
      }
    } else if (path.size() == 2 && !endpoints.insert(path.back()).second) {
      return tag + " repeats the direct edge";
    }
  }
  return std::nullopt;
}

SetClassifier::SetClassifier(const Mesh& mesh)
    : mesh_(mesh),
      neighborhood_(mesh),
      reach_(mesh.vertex_count()),
      next_(mesh.vertex_count()) {}

GraphState SetClassifier::classify(const VertexSet& alive) {
  const std::size_t m = alive.count();
  if (m == 0) return GraphState::kEmpty;
  if (m <= mesh_.degree() + 1) {
    bool complete = true;
    alive.for_each([&](Vertex v) {
      std::size_t live = 0;
      mesh_.for_each_neighbor(v, [&](Vertex w) { live += alive.contains(w); });
      complete = complete && live == m - 1;
    });
    if (complete) return GraphState::kComplete;
  }
  reach_.clear();
  reach_.insert(Vertex{alive.first()});
  std::size_t reached = 1;
  while (reached < m) {
    neighborhood_.dilate(reach_, next_);
    next_ &= alive;
    const std::size_t grown = next_.count();
    if (grown == reached) return GraphState::kDisconnected;
    reached = grown;
    std::swap(reach_, next_);
  }
  return GraphState::kOther;
}

}  // namespace torus_nbc
