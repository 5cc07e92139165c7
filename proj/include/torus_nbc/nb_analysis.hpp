#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "torus_nbc/graph.hpp"
#include "torus_nbc/mesh.hpp"

namespace torus_nbc {

// Faulty sources U and the faulty vertices N[U] they take down.
struct FaultSet {
  std::vector<Vertex> sources;  // sorted, deduplicated
  VertexSet closed;             // N[U]

  std::size_t size() const noexcept { return sources.size(); }
};

// Throws Error{kInvalidVertex} for a vertex outside the mesh.
FaultSet closed_neighborhood(const Mesh& mesh, std::span<const Vertex> sources);

// C - N[U], keeping the fault set it was cut by.
struct SurvivalGraph {
  FaultSet faults;
  AliveGraph graph;
};

SurvivalGraph survival_graph(const Mesh& mesh, std::span<const Vertex> sources);

// |N(x) ∩ N(y)|. Throws Error{kSameVertex} when x == y.
std::size_t common_neighbor_count(const Mesh& mesh, Vertex x, Vertex y);

struct KappaNbOptions {
  std::size_t max_l = 0;  // 0 means "dimension of the mesh"
  // Pin the first source to vertex 0; sound because every toroidal mesh is
  // vertex-transitive.
  bool symmetry_pruning = true;
  std::uint64_t subset_budget = 2'000'000'000;
  std::size_t workers = 1;
};

struct KappaNbResult {
  bool resolved = false;
  std::size_t value = 0;          // meaningful when resolved
  std::vector<Vertex> witness;    // lexicographically least, sorted
  GraphState witness_state = GraphState::kOther;
  std::size_t levels_searched = 0;
  // Subsets enumerated up to and including the witness; identical for any
  // worker count.
  std::uint64_t subsets_examined = 0;
  // Set when the mesh falls outside the d_i >= 3, n >= 2 regime where the
  // closed form kappa_NB = n is known.
  bool out_of_regime = false;
  std::vector<std::string> notices;
};

// Exact neighbour connectivity by enumerating l-subsets for l = 1..max_l and
// stopping at the first l whose survival graph is empty, complete or
// disconnected. Throws BudgetExceeded before starting a level that would
// push the running subset count past the budget.
KappaNbResult kappa_nb_exact(const Mesh& mesh, const KappaNbOptions& options);

// The n-source set isolating 0...0 (or, for C(3,3), leaving only 00 alive):
// {1(d2-1)0..0, 01(d3-1)0..0, ..., 0..01(dn-1), (d1-1)0..01}.
// Throws Error{kUnsupportedMesh} unless n >= 2 and every d_i >= 3.
std::vector<Vertex> upper_bound_witness(const Mesh& mesh);

struct SurvivalBoundReport {
  std::size_t l = 0;
  std::size_t kappa = 0;  // exact connectivity of C - N[U]
  long bound = 0;         // 2n - 2l
  bool holds = false;
};

// Computes kappa(C - N[U]) and compares with 2n - 2|U|. Throws
// Error{kPreconditionViolated} when n < 2, some d_i < 3, or |U| > n.
SurvivalBoundReport verify_survival_lower_bound(const Mesh& mesh,
                                                std::span<const Vertex> sources);

// Fault bookkeeping for the layers of a partition along one axis.
struct PartitionFaultProfile {
  std::size_t axis = 1;
  std::vector<std::vector<Vertex>> layer_sources;  // U_i
  std::vector<std::size_t> layer_source_counts;    // mu_i
  std::vector<VertexSet> layer_faulty;             // N[U] within C[i]
};

PartitionFaultProfile partition_fault_profile(const Mesh& mesh,
                                              const FaultSet& faults,
                                              std::size_t axis);

// True iff every layer along `axis` keeps a vertex outside N[U].
// Throws Error{kPreconditionViolated} unless n >= 3, all d_i >= 3, |U| < n.
bool healthy_layer_check(const Mesh& mesh, std::span<const Vertex> sources,
                         std::size_t axis);

struct HealthyPairCount {
  std::size_t count = 0;  // |H|
  long threshold = 0;     // h = 2n - 2 - l - mu_i - mu_j

  bool exceeds() const noexcept { return static_cast<long>(count) > threshold; }
};

// H = {v in C[i] : v and its outer neighbour in C[j] both healthy}.
// Throws Error{kPreconditionViolated} (same regime as healthy_layer_check)
// or Error{kLayersNotAdjacent}.
HealthyPairCount healthy_pair_count(const Mesh& mesh,
                                    std::span<const Vertex> sources,
                                    std::size_t axis, std::size_t layer_i,
                                    std::size_t layer_j);

// Number of l-subsets the search visits at one level: C(|V|-1, l-1) with
// pruning, C(|V|, l) without. Saturates at UINT64_MAX.
std::uint64_t subsets_at_level(std::size_t vertex_count, std::size_t l,
                               bool symmetry_pruning);

}  // namespace torus_nbc
