#include "torus_nbc/nb_analysis.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>

#include "torus_nbc/error.hpp"

namespace torus_nbc {
namespace {

std::vector<Vertex> normalize(const Mesh& mesh, std::span<const Vertex> sources) {
  std::vector<Vertex> out(sources.begin(), sources.end());
  for (Vertex v : out) {
    if (!mesh.contains(v)) {
      throw Error(ErrorCode::kInvalidVertex,
                  "vertex index " + std::to_string(v.flat) + " outside " +
                      mesh.literal());
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void add_closed(const Mesh& mesh, Vertex v, VertexSet& closed) {
  closed.insert(v);
  mesh.for_each_neighbor(v, [&](Vertex w) { closed.insert(w); });
}

bool in_regular_regime(const Mesh& mesh) {
  return mesh.dimension() >= 2 && mesh.all_dims_ge_3();
}

void require_layer_regime(const Mesh& mesh, std::size_t l) {
  if (mesh.dimension() < 3 || !mesh.all_dims_ge_3()) {
    throw Error(ErrorCode::kPreconditionViolated,
                mesh.literal() + " needs n >= 3 and every d_i >= 3");
  }
  if (l >= mesh.dimension()) {
    throw Error(ErrorCode::kPreconditionViolated,
                "|U| = " + std::to_string(l) + " must be below n = " +
                    std::to_string(mesh.dimension()));
  }
}

// One level of the kappa_NB search, split into chunks by the first free
// element so that chunk order equals lexicographic order of the subsets.
class LevelSearch {
 public:
  LevelSearch(const Mesh& mesh, std::size_t l, bool pruned)
      : mesh_(mesh), l_(l), pruned_(pruned) {
    const std::size_t v = mesh.vertex_count();
    if (pruned_) {
      fixed_ = l_ >= 1 ? 1 : 0;
      chunk_lo_ = 1;
    } else {
      fixed_ = 0;
      chunk_lo_ = 0;
    }
    // l == 1 with pruning: the single subset {0} forms one pseudo-chunk.
    chunk_count_ = (l_ == fixed_) ? 1 : (v > chunk_lo_ ? v - chunk_lo_ : 0);
  }

  std::size_t chunk_count() const { return chunk_count_; }

  struct ChunkResult {
    bool found = false;
    std::vector<Vertex> witness;
    GraphState state = GraphState::kOther;
    std::uint64_t examined = 0;
  };

  ChunkResult run_chunk(std::size_t chunk) const {
    ChunkResult result;
    SetClassifier classifier(mesh_);
    const std::size_t universe = mesh_.vertex_count();
    const VertexSet everything = VertexSet::full(universe);

    std::vector<Vertex> chosen;
    std::vector<VertexSet> closed;  // closed[k] = N[first k+1 chosen]
    VertexSet alive(universe);

    auto push = [&](Vertex v) {
      VertexSet next = closed.empty() ? VertexSet(universe) : closed.back();
      add_closed(mesh_, v, next);
      closed.push_back(std::move(next));
      chosen.push_back(v);
    };
    auto pop = [&] {
      closed.pop_back();
      chosen.pop_back();
    };
    auto evaluate = [&]() -> bool {
      ++result.examined;
      alive = everything;
      alive.subtract(closed.back());
      const GraphState state = classifier.classify(alive);
      if (state == GraphState::kOther) return false;
      result.found = true;
      result.witness = chosen;
      result.state = state;
      return true;
    };

    if (fixed_ == 1) push(Vertex{0});
    if (l_ == fixed_) {
      evaluate();
      return result;
    }
    push(Vertex{chunk_lo_ + chunk});

    // Lexicographic DFS over the remaining l - |chosen| elements.
    auto recurse = [&](auto&& self, std::size_t next_min) -> bool {
      if (chosen.size() == l_) return evaluate();
      const std::size_t need = l_ - chosen.size();
      for (std::size_t f = next_min; f + need <= universe; ++f) {
        push(Vertex{f});
        const bool done = self(self, f + 1);
        pop();
        if (done) return true;
      }
      return false;
    };
    recurse(recurse, chosen.back().flat + 1);
    return result;
  }

 private:
  const Mesh& mesh_;
  std::size_t l_;
  bool pruned_;
  std::size_t fixed_ = 0;
  std::size_t chunk_lo_ = 0;
  std::size_t chunk_count_ = 0;
};

}  // namespace

FaultSet closed_neighborhood(const Mesh& mesh, std::span<const Vertex> sources) {
  FaultSet faults{normalize(mesh, sources), VertexSet(mesh.vertex_count())};
  for (Vertex v : faults.sources) add_closed(mesh, v, faults.closed);
  return faults;
}

SurvivalGraph survival_graph(const Mesh& mesh, std::span<const Vertex> sources) {
  FaultSet faults = closed_neighborhood(mesh, sources);
  VertexSet alive = faults.closed.complement();
  return SurvivalGraph{std::move(faults), AliveGraph(mesh, std::move(alive))};
}

std::size_t common_neighbor_count(const Mesh& mesh, Vertex x, Vertex y) {
  if (!mesh.contains(x) || !mesh.contains(y)) {
    throw Error(ErrorCode::kInvalidVertex, "vertex outside " + mesh.literal());
  }
  if (x == y) {
    throw Error(ErrorCode::kSameVertex, "common neighbours need distinct vertices");
  }
  const std::vector<Vertex> nx = mesh.neighbors(x);
  const std::vector<Vertex> ny = mesh.neighbors(y);
  std::vector<Vertex> both;
  std::set_intersection(nx.begin(), nx.end(), ny.begin(), ny.end(),
                        std::back_inserter(both));
  return both.size();
}

std::uint64_t subsets_at_level(std::size_t vertex_count, std::size_t l,
                               bool symmetry_pruning) {
  if (l == 0 || l > vertex_count) return 0;
  std::size_t n = vertex_count;
  std::size_t k = l;
  if (symmetry_pruning) {
    n -= 1;
    k -= 1;
  }
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(acc);
}

KappaNbResult kappa_nb_exact(const Mesh& mesh, const KappaNbOptions& options) {
  KappaNbResult result;
  const std::size_t max_l = options.max_l == 0 ? mesh.dimension() : options.max_l;
  const std::size_t workers = std::max<std::size_t>(1, options.workers);
  if (!in_regular_regime(mesh)) {
    result.out_of_regime = true;
    result.notices.push_back(
        "OutOfRegime: " + mesh.literal() +
        " is outside n >= 2, d_i >= 3; value comes from exhaustive search only");
  }

  std::uint64_t examined = 0;
  for (std::size_t l = 1; l <= max_l; ++l) {
    const std::uint64_t level_size =
        subsets_at_level(mesh.vertex_count(), l, options.symmetry_pruning);
    if (level_size > options.subset_budget ||
        examined > options.subset_budget - level_size) {
      throw BudgetExceeded(l - 1, examined, level_size, options.subset_budget);
    }
    result.levels_searched = l;
    if (level_size == 0) continue;

    const LevelSearch search(mesh, l, options.symmetry_pruning);
    const std::size_t chunks = search.chunk_count();
    std::vector<LevelSearch::ChunkResult> results(chunks);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best{chunks};

    auto work = [&] {
      while (true) {
        const std::size_t c = next.fetch_add(1);
        if (c >= chunks) return;
        if (c > best.load()) continue;
        results[c] = search.run_chunk(c);
        if (results[c].found) {
          std::size_t cur = best.load();
          while (c < cur && !best.compare_exchange_weak(cur, c)) {
          }
        }
      }
    };
    if (workers == 1 || chunks == 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < std::min(workers, chunks); ++w) {
        pool.emplace_back(work);
      }
    }

    const std::size_t hit = best.load();
    const std::size_t counted = hit < chunks ? hit + 1 : chunks;
    for (std::size_t c = 0; c < counted; ++c) examined += results[c].examined;
    if (hit < chunks) {
      result.resolved = true;
      result.value = l;
      result.witness = results[hit].witness;
      result.witness_state = results[hit].state;
      break;
    }
  }
  result.subsets_examined = examined;
  return result;
}

std::vector<Vertex> upper_bound_witness(const Mesh& mesh) {
  if (!in_regular_regime(mesh)) {
    throw Error(ErrorCode::kUnsupportedMesh,
                mesh.literal() + " needs n >= 2 and every d_i >= 3");
  }
  const std::size_t n = mesh.dimension();
  const auto dims = mesh.dims();
  std::vector<Vertex> out;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Coords c(n, 0);
    c[i] = 1;
    c[i + 1] = dims[i + 1] - 1;
    out.push_back(mesh.encode(c));
  }
  Coords last(n, 0);
  last[0] = dims[0] - 1;
  last[n - 1] = 1;
  out.push_back(mesh.encode(last));
  std::sort(out.begin(), out.end());
  return out;
}

SurvivalBoundReport verify_survival_lower_bound(const Mesh& mesh,
                                                std::span<const Vertex> sources) {
  if (!in_regular_regime(mesh)) {
    throw Error(ErrorCode::kPreconditionViolated,
                mesh.literal() + " needs n >= 2 and every d_i >= 3");
  }
  const SurvivalGraph sg = survival_graph(mesh, sources);
  SurvivalBoundReport report;
  report.l = sg.faults.size();
  if (report.l > mesh.dimension()) {
    throw Error(ErrorCode::kPreconditionViolated,
                "|U| = " + std::to_string(report.l) + " exceeds n = " +
                    std::to_string(mesh.dimension()));
  }
  report.kappa = vertex_connectivity(sg.graph);
  report.bound = 2 * static_cast<long>(mesh.dimension()) -
                 2 * static_cast<long>(report.l);
  report.holds = static_cast<long>(report.kappa) >= report.bound;
  return report;
}

PartitionFaultProfile partition_fault_profile(const Mesh& mesh,
                                              const FaultSet& faults,
                                              std::size_t axis) {
  const PartitionView view = mesh.partition(axis);
  PartitionFaultProfile profile;
  profile.axis = axis;
  profile.layer_sources.resize(view.layer_count());
  profile.layer_source_counts.assign(view.layer_count(), 0);
  for (Vertex u : faults.sources) {
    const std::size_t i = view.layer_of(u);
    profile.layer_sources[i].push_back(u);
    ++profile.layer_source_counts[i];
  }
  for (std::size_t i = 0; i < view.layer_count(); ++i) {
    VertexSet layer = view.layer_set(i);
    layer &= faults.closed;
    profile.layer_faulty.push_back(std::move(layer));
  }
  return profile;
}

bool healthy_layer_check(const Mesh& mesh, std::span<const Vertex> sources,
                         std::size_t axis) {
  const FaultSet faults = closed_neighborhood(mesh, sources);
  require_layer_regime(mesh, faults.size());
  const PartitionView view = mesh.partition(axis);
  for (std::size_t i = 0; i < view.layer_count(); ++i) {
    VertexSet healthy = view.layer_set(i);
    healthy.subtract(faults.closed);
    if (healthy.empty()) return false;
  }
  return true;
}

HealthyPairCount healthy_pair_count(const Mesh& mesh,
                                    std::span<const Vertex> sources,
                                    std::size_t axis, std::size_t layer_i,
                                    std::size_t layer_j) {
  const FaultSet faults = closed_neighborhood(mesh, sources);
  require_layer_regime(mesh, faults.size());
  const PartitionView view = mesh.partition(axis);
  if (!view.layers_adjacent(layer_i, layer_j)) {
    throw Error(ErrorCode::kLayersNotAdjacent,
                "layers " + std::to_string(layer_i) + " and " +
                    std::to_string(layer_j) + " along axis " +
                    std::to_string(axis));
  }
  const PartitionFaultProfile profile =
      partition_fault_profile(mesh, faults, axis);

  HealthyPairCount out;
  for (Vertex v : view.layer(layer_i)) {
    if (faults.closed.contains(v)) continue;
    if (faults.closed.contains(mesh.outer_neighbor(v, axis, layer_j))) continue;
    ++out.count;
  }
  out.threshold = 2 * static_cast<long>(mesh.dimension()) - 2 -
                  static_cast<long>(faults.size()) -
                  static_cast<long>(profile.layer_source_counts[layer_i]) -
                  static_cast<long>(profile.layer_source_counts[layer_j]);
  return out;
}

}  // namespace torus_nbc
