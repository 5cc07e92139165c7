#include "flow.hpp"

#include <algorithm>
#include <cassert>
#include <queue>

namespace torus_nbc::detail {

LocalGraph::LocalGraph(const AliveGraph& g) {
  vertices = g.alive().to_vector();
  adj.resize(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    g.mesh().for_each_neighbor(vertices[i], [&](Vertex w) {
      if (g.contains(w)) adj[i].push_back(static_cast<std::uint32_t>(local(w)));
    });
    std::sort(adj[i].begin(), adj[i].end());
  }
}

std::size_t LocalGraph::local(Vertex v) const {
  const auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
  assert(it != vertices.end() && *it == v);
  return static_cast<std::size_t>(it - vertices.begin());
}

SplitNetwork::SplitNetwork(const LocalGraph& g, std::size_t extra_nodes)
    : out_(2 * g.size() + extra_nodes) {
  for (std::size_t i = 0; i < g.size(); ++i) add_arc(entry(i), exit(i), 1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::uint32_t j : g.adj[i]) add_arc(exit(i), entry(j), 1);
  }
}

std::size_t SplitNetwork::add_arc(std::size_t from, std::size_t to,
                                  std::int32_t cap) {
  const std::size_t e = arcs_.size();
  arcs_.push_back({static_cast<std::uint32_t>(to), cap});
  arcs_.push_back({static_cast<std::uint32_t>(from), 0});
  base_cap_.push_back(cap);
  base_cap_.push_back(0);
  out_[from].push_back(static_cast<std::uint32_t>(e));
  out_[to].push_back(static_cast<std::uint32_t>(e + 1));
  return e;
}

void SplitNetwork::reset() {
  for (std::size_t e = 0; e < arcs_.size(); ++e) arcs_[e].cap = base_cap_[e];
}

bool SplitNetwork::build_levels(std::size_t source, std::size_t sink) {
  level_.assign(out_.size(), -1);
  std::queue<std::size_t> queue;
  level_[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop();
    for (std::uint32_t e : out_[u]) {
      const Arc& a = arcs_[e];
      if (a.cap > 0 && level_[a.to] < 0) {
        level_[a.to] = level_[u] + 1;
        queue.push(a.to);
      }
    }
  }
  return level_[sink] >= 0;
}

std::int32_t SplitNetwork::push(std::size_t node, std::size_t sink,
                                std::int32_t limit) {
  if (node == sink) return limit;
  for (std::size_t& i = cursor_[node]; i < out_[node].size(); ++i) {
    const std::uint32_t e = out_[node][i];
    Arc& a = arcs_[e];
    if (a.cap <= 0 || level_[a.to] != level_[node] + 1) continue;
    const std::int32_t pushed = push(a.to, sink, std::min(limit, a.cap));
    if (pushed > 0) {
      a.cap -= pushed;
      arcs_[e ^ 1].cap += pushed;
      return pushed;
    }
  }
  return 0;
}

std::size_t SplitNetwork::max_flow(std::size_t source, std::size_t sink,
                                   std::size_t limit) {
  std::size_t flow = 0;
  while (flow < limit && build_levels(source, sink)) {
    cursor_.assign(out_.size(), 0);
    while (flow < limit) {
      const std::int32_t pushed = push(source, sink, 1);
      if (pushed == 0) break;
      flow += static_cast<std::size_t>(pushed);
    }
  }
  return flow;
}

std::vector<std::vector<std::size_t>> SplitNetwork::decompose(
    std::size_t source, std::size_t sink, std::size_t count) {
  std::vector<std::int32_t> used(arcs_.size(), 0);
  std::vector<std::vector<std::size_t>> paths;
  for (std::size_t p = 0; p < count; ++p) {
    std::vector<std::size_t> nodes{source};
    std::size_t u = source;
    while (u != sink) {
      bool advanced = false;
      for (std::uint32_t e : out_[u]) {
        const std::int32_t carried = base_cap_[e] - arcs_[e].cap;
        if (base_cap_[e] > 0 && carried - used[e] > 0) {
          ++used[e];
          u = arcs_[e].to;
          nodes.push_back(u);
          advanced = true;
          break;
        }
      }
      assert(advanced && "flow conservation violated");
      if (!advanced) break;
    }
    paths.push_back(std::move(nodes));
  }
  return paths;
}

}  // namespace torus_nbc::detail
