#include "torus_nbc/fault_sim.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

#include "torus_nbc/error.hpp"

namespace torus_nbc {

std::uint64_t SplitMix64::below(std::uint64_t bound) noexcept {
  unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::uint64_t derive_trial_seed(std::uint64_t seed, std::uint64_t trial_index) {
  SplitMix64 mix(seed ^ (trial_index * 0xd1342543de82ef95ULL));
  mix.next();
  return mix.next();
}

std::string_view to_string(PoolPolicy policy) {
  return policy == PoolPolicy::kExcludeSources ? "exclude-sources"
                                               : "exclude-all-faulty";
}

std::optional<PoolPolicy> parse_pool_policy(std::string_view text) {
  if (text == "exclude-sources") return PoolPolicy::kExcludeSources;
  if (text == "exclude-all-faulty") return PoolPolicy::kExcludeAllFaulty;
  return std::nullopt;
}

TrialRunner::TrialRunner(const Mesh& mesh)
    : mesh_(mesh),
      classifier_(mesh),
      alive_(mesh.vertex_count()),
      sources_(mesh.vertex_count()),
      pool_(mesh.vertex_count()),
      position_(mesh.vertex_count()) {}

void TrialRunner::reset() {
  alive_ = VertexSet::full(mesh_.vertex_count());
  sources_.clear();
  std::iota(pool_.begin(), pool_.end(), std::size_t{0});
  std::iota(position_.begin(), position_.end(), std::size_t{0});
  pool_size_ = pool_.size();
}

// Swap-remove; the pool order is part of the reproducible draw sequence.
void TrialRunner::remove_from_pool(Vertex v) {
  const std::size_t at = position_[v.flat];
  if (at >= pool_size_) return;
  const std::size_t last = pool_[pool_size_ - 1];
  pool_[at] = last;
  position_[last] = at;
  pool_[pool_size_ - 1] = v.flat;
  position_[v.flat] = pool_size_ - 1;
  --pool_size_;
}

GraphState TrialRunner::apply(Vertex v, PoolPolicy policy) {
  sources_.insert(v);
  remove_from_pool(v);
  alive_.erase(v);
  mesh_.for_each_neighbor(v, [&](Vertex w) {
    alive_.erase(w);
    if (policy == PoolPolicy::kExcludeAllFaulty) remove_from_pool(w);
  });
  return classifier_.classify(alive_);
}

TrialRecord TrialRunner::run(SplitMix64& rng, PoolPolicy policy, bool trace) {
  reset();
  TrialRecord record;
  while (pool_size_ > 0) {
    const Vertex v{pool_[rng.below(pool_size_)]};
    ++record.faulty_sources;
    if (trace) record.sources.push_back(v);
    const GraphState state = apply(v, policy);
    if (state != GraphState::kOther) {
      record.terminal_state = state;
      return record;
    }
  }
  // Unreachable: once every vertex is a source the survival graph is empty.
  return record;
}

TrialRecord TrialRunner::replay(std::span<const Vertex> draws, PoolPolicy policy) {
  reset();
  TrialRecord record;
  for (Vertex v : draws) {
    if (!mesh_.contains(v) || position_[v.flat] >= pool_size_) {
      throw Error(ErrorCode::kInvalidVertex,
                  "scripted draw " + std::to_string(v.flat) +
                      " is not in the " + std::string(to_string(policy)) +
                      " pool");
    }
    ++record.faulty_sources;
    record.sources.push_back(v);
    const GraphState state = apply(v, policy);
    if (state != GraphState::kOther) {
      record.terminal_state = state;
      break;
    }
  }
  return record;
}

TrialRecord run_trial(const Mesh& mesh, SplitMix64& rng, PoolPolicy policy) {
  TrialRunner runner(mesh);
  return runner.run(rng, policy);
}

void summarize(SimulationReport& report) {
  const auto& h = report.histogram;
  report.mean = 0.0;
  report.median = report.mode = report.min_observed = 0;
  if (h.empty() || report.trials == 0) return;

  long double weighted = 0;
  std::uint64_t best_count = 0;
  for (const auto& [mu, count] : h) {
    weighted += static_cast<long double>(mu) * count;
    if (count > best_count) {
      best_count = count;
      report.mode = mu;
    }
  }
  report.mean = static_cast<double>(weighted / report.trials);
  report.min_observed = h.begin()->first;

  // Lower median: the element of rank ceil(trials / 2) in sorted order.
  const std::uint64_t rank = (report.trials + 1) / 2;
  std::uint64_t seen = 0;
  for (const auto& [mu, count] : h) {
    seen += count;
    if (seen >= rank) {
      report.median = mu;
      break;
    }
  }
}

SimulationReport run_simulation(const Mesh& mesh, const SimulationOptions& options) {
  if (options.trials == 0) {
    throw Error(ErrorCode::kPreconditionViolated, "trials must be at least 1");
  }
  const std::size_t workers = static_cast<std::size_t>(std::max<std::uint64_t>(
      1, std::min<std::uint64_t>(options.workers, options.trials)));

  // Contiguous trial ranges per worker; the histogram merge is commutative.
  std::vector<std::map<std::size_t, std::uint64_t>> partial(workers);
  auto work = [&](std::size_t w) {
    TrialRunner runner(mesh);
    const std::uint64_t begin = options.trials * w / workers;
    const std::uint64_t end = options.trials * (w + 1) / workers;
    for (std::uint64_t t = begin; t < end; ++t) {
      SplitMix64 rng(derive_trial_seed(options.seed, t));
      ++partial[w][runner.run(rng, options.policy).faulty_sources];
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  SimulationReport report{mesh};
  report.trials = options.trials;
  report.seed = options.seed;
  report.policy = options.policy;
  for (const auto& h : partial) {
    for (const auto& [mu, count] : h) report.histogram[mu] += count;
  }
  summarize(report);
  return report;
}

double fraction_at(const SimulationReport& report, std::size_t mu) {
  if (report.trials == 0) return 0.0;
  const auto it = report.histogram.find(mu);
  if (it == report.histogram.end()) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(report.trials);
}

}  // namespace torus_nbc
