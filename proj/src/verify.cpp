#include "torus_nbc/verify.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "torus_nbc/error.hpp"
#include "torus_nbc/fault_sim.hpp"
#include "torus_nbc/graph.hpp"
#include "torus_nbc/nb_analysis.hpp"

namespace torus_nbc {
namespace {

std::string describe(const Mesh& mesh, const std::vector<Vertex>& u) {
  std::string out = "U = {";
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i != 0) out += ", ";
    out += mesh.format_vertex(u[i]);
  }
  return out + "}";
}

void record(CheckResult& check, bool ok, const std::function<std::string()>& what) {
  ++check.cases;
  if (ok) return;
  if (check.violations++ == 0) check.first_violation = what();
}

std::vector<Vertex> random_subset(std::size_t universe, std::size_t l,
                                  SplitMix64& rng) {
  std::vector<std::size_t> perm(universe);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < l; ++i) {
    const std::size_t j = i + rng.below(universe - i);
    std::swap(perm[i], perm[j]);
    out.push_back(Vertex{perm[i]});
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Visits fault sets of sizes [lo, hi]: every one (up to translation, i.e.
// containing vertex 0) when that fits the budget, else `samples` random sets
// with a uniformly drawn size. Returns the mode used.
std::string for_each_fault_set(const Mesh& mesh, std::size_t lo, std::size_t hi,
                               const VerifyOptions& options, std::uint64_t salt,
                               const std::function<void(const std::vector<Vertex>&)>& fn) {
  const std::size_t v = mesh.vertex_count();
  std::uint64_t total = 0;
  for (std::size_t l = lo; l <= hi; ++l) {
    const std::uint64_t level = l == 0 ? 1 : subsets_at_level(v, l, true);
    total = std::min(options.exhaustive_budget + 1,
                     total + std::min(level, options.exhaustive_budget + 1));
  }
  if (total <= options.exhaustive_budget) {
    for (std::size_t l = lo; l <= hi; ++l) {
      for_each_subset(v, l, true, [&](const std::vector<Vertex>& u) {
        fn(u);
        return true;
      });
    }
    return "exhaustive";
  }
  SplitMix64 rng(derive_trial_seed(options.seed, salt));
  for (std::uint64_t s = 0; s < options.samples; ++s) {
    const std::size_t l = lo + rng.below(hi - lo + 1);
    fn(random_subset(v, l, rng));
  }
  return "sampled";
}

void structural_checks(const Mesh& mesh, const VerifyOptions& options,
                       VerifyReport& report) {
  CheckResult adjacency{"adjacency symmetric and irreflexive"};
  CheckResult degree{"degree matches axis formula"};
  CheckResult coding{"coordinate encode/decode round trip"};
  const std::size_t v = mesh.vertex_count();
  const bool exhaustive = v <= options.exhaustive_budget;
  SplitMix64 rng(derive_trial_seed(options.seed, 1));
  const std::uint64_t n_checks = exhaustive ? v : options.samples;
  for (std::uint64_t k = 0; k < n_checks; ++k) {
    const Vertex x{exhaustive ? k : rng.below(v)};
    const auto nbrs = mesh.neighbors(x);
    bool ok = true;
    for (Vertex w : nbrs) {
      const auto back = mesh.neighbors(w);
      ok = ok && w != x && mesh.adjacent(x, w) && mesh.adjacent(w, x) &&
           std::binary_search(back.begin(), back.end(), x);
    }
    ok = ok && !mesh.adjacent(x, x);
    record(adjacency, ok, [&] { return "at " + mesh.format_vertex(x); });
    record(degree, nbrs.size() == mesh.degree(), [&] {
      return mesh.format_vertex(x) + " has " + std::to_string(nbrs.size());
    });
    record(coding, mesh.encode(mesh.decode(x)) == x,
           [&] { return "index " + std::to_string(x.flat); });
  }
  for (CheckResult* c : {&adjacency, &degree, &coding}) {
    c->mode = exhaustive ? "exhaustive" : "sampled";
    report.checks.push_back(std::move(*c));
  }
}

void connectivity_check(const Mesh& mesh, const VerifyOptions& options,
                        VerifyReport& report) {
  CheckResult check{"intact connectivity equals 2n"};
  if (mesh.vertex_count() > options.connectivity_vertex_limit) {
    check.mode = "skipped";
    report.notices.push_back("intact connectivity not computed: |V| above " +
                             std::to_string(options.connectivity_vertex_limit));
  } else {
    check.mode = "exhaustive";
    const std::size_t kappa = vertex_connectivity(AliveGraph::intact(mesh));
    record(check, kappa == 2 * mesh.dimension(),
           [&] { return "kappa = " + std::to_string(kappa); });
  }
  report.checks.push_back(std::move(check));
}

void common_neighbor_check(const Mesh& mesh, const VerifyOptions& options,
                           VerifyReport& report) {
  CheckResult check{"common neighbours in {0,1,2}, adjacent pairs in {0,1}"};
  const std::size_t v = mesh.vertex_count();
  auto one = [&](Vertex x, Vertex y) {
    const std::size_t c = common_neighbor_count(mesh, x, y);
    const std::size_t cap = mesh.adjacent(x, y) ? 1 : 2;
    record(check, c <= cap, [&] {
      return mesh.format_vertex(x) + " / " + mesh.format_vertex(y) + " share " +
             std::to_string(c);
    });
  };
  if (subsets_at_level(v, 2, false) <= options.exhaustive_budget) {
    check.mode = "exhaustive";
    for (std::size_t a = 0; a < v; ++a) {
      for (std::size_t b = a + 1; b < v; ++b) one(Vertex{a}, Vertex{b});
    }
  } else {
    check.mode = "sampled";
    SplitMix64 rng(derive_trial_seed(options.seed, 2));
    for (std::uint64_t s = 0; s < options.samples; ++s) {
      const auto pair = random_subset(v, 2, rng);
      one(pair[0], pair[1]);
    }
  }
  report.checks.push_back(std::move(check));
}

void witness_check(const Mesh& mesh, VerifyReport& report) {
  CheckResult check{"n-source witness isolates the origin"};
  check.mode = "exhaustive";
  const std::vector<Vertex> u = upper_bound_witness(mesh);
  const SurvivalGraph sg = survival_graph(mesh, u);
  const Vertex origin{0};
  bool covered = !sg.faults.closed.contains(origin);
  for (Vertex w : mesh.neighbors(origin)) covered = covered && sg.faults.closed.contains(w);
  const GraphState state = classify(sg.graph);
  const bool target = state == GraphState::kComplete || state == GraphState::kDisconnected;
  record(check, u.size() == mesh.dimension() && covered && target, [&] {
    return describe(mesh, u) + " leaves a " + std::string(to_string(state)) +
           " survival graph";
  });
  report.checks.push_back(std::move(check));
}

void survival_checks(const Mesh& mesh, const VerifyOptions& options,
                     VerifyReport& report) {
  const std::size_t n = mesh.dimension();
  CheckResult bound{"survival connectivity >= 2n - 2|U| for |U| <= n"};
  bound.mode = for_each_fault_set(mesh, 0, n, options, 3, [&](const auto& u) {
    const SurvivalBoundReport r = verify_survival_lower_bound(mesh, u);
    record(bound, r.holds, [&] {
      return describe(mesh, u) + ": kappa " + std::to_string(r.kappa) +
             " < " + std::to_string(r.bound);
    });
  });
  report.checks.push_back(std::move(bound));

  CheckResult not_target{"survival graph of |U| < n is connected, non-empty, non-complete"};
  SetClassifier classifier(mesh);
  not_target.mode = for_each_fault_set(mesh, 0, n - 1, options, 4, [&](const auto& u) {
    const GraphState s = classifier.classify(closed_neighborhood(mesh, u).closed.complement());
    record(not_target, s == GraphState::kOther, [&] {
      return describe(mesh, u) + " reaches " + std::string(to_string(s));
    });
  });
  report.checks.push_back(std::move(not_target));
}

void layer_checks(const Mesh& mesh, const VerifyOptions& options,
                  VerifyReport& report) {
  const std::size_t n = mesh.dimension();
  CheckResult layers{"every layer keeps a healthy vertex for |U| < n"};
  CheckResult pairs{"healthy outer-neighbour pairs exceed 2n-2-|U|-mu_i-mu_j"};
  const std::string mode = for_each_fault_set(mesh, 0, n - 1, options, 5, [&](const auto& u) {
    for (std::size_t axis = 1; axis <= n; ++axis) {
      record(layers, healthy_layer_check(mesh, u, axis), [&] {
        return describe(mesh, u) + " axis " + std::to_string(axis);
      });
      const std::size_t d = mesh.dim(axis);
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j : {(i + 1) % d, (i + d - 1) % d}) {
          const HealthyPairCount h = healthy_pair_count(mesh, u, axis, i, j);
          record(pairs, h.exceeds(), [&] {
            return describe(mesh, u) + " axis " + std::to_string(axis) +
                   " layers " + std::to_string(i) + "->" + std::to_string(j) +
                   ": |H| = " + std::to_string(h.count) +
                   ", h = " + std::to_string(h.threshold);
          });
        }
      }
    }
  });
  layers.mode = pairs.mode = mode;
  report.checks.push_back(std::move(layers));
  report.checks.push_back(std::move(pairs));
}

}  // namespace

std::uint64_t VerifyReport::violations() const {
  std::uint64_t total = 0;
  for (const auto& c : checks) total += c.violations;
  return total;
}

VerifyReport run_verification(const Mesh& mesh, const VerifyOptions& options) {
  VerifyReport report;
  structural_checks(mesh, options, report);
  if (mesh.dimension() < 2 || !mesh.all_dims_ge_3()) {
    report.notices.push_back(
        "regime: " + mesh.literal() +
        " has n < 2 or some d_i < 3; fault-tolerance checks skipped");
    return report;
  }
  connectivity_check(mesh, options, report);
  common_neighbor_check(mesh, options, report);
  witness_check(mesh, report);
  survival_checks(mesh, options, report);
  if (mesh.dimension() >= 3) {
    layer_checks(mesh, options, report);
  } else {
    report.notices.push_back("layer checks need n >= 3; skipped for " + mesh.literal());
  }
  return report;
}

}  // namespace torus_nbc
