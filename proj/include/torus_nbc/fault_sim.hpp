#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "torus_nbc/graph.hpp"
#include "torus_nbc/mesh.hpp"

namespace torus_nbc {

// SplitMix64 (Steele, Lea & Flood): the project's fixed generator. Each trial
// gets its own stream from derive_trial_seed, so results never depend on how
// trials are spread across workers.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) by Lemire's multiply-and-reject; bound > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;

 private:
  std::uint64_t state_;
};

std::uint64_t derive_trial_seed(std::uint64_t seed, std::uint64_t trial_index);

enum class PoolPolicy {
  kExcludeSources,    // draw from V \ U
  kExcludeAllFaulty,  // draw from V \ N[U]
};

std::string_view to_string(PoolPolicy policy);
// "exclude-sources" / "exclude-all-faulty"
std::optional<PoolPolicy> parse_pool_policy(std::string_view text);

struct TrialRecord {
  std::size_t faulty_sources = 0;  // mu = |U| at the stopping round
  GraphState terminal_state = GraphState::kOther;
  std::vector<Vertex> sources;     // draw order; filled only when traced
};

// Reusable per-thread trial state for one mesh.
class TrialRunner {
 public:
  explicit TrialRunner(const Mesh& mesh);

  const Mesh& mesh() const noexcept { return mesh_; }

  TrialRecord run(SplitMix64& rng, PoolPolicy policy, bool trace = false);

  // Replays fixed draws instead of random ones; stops at the target state or
  // when the script runs out (terminal_state then stays kOther). Draws the
  // policy would not allow throw Error{kInvalidVertex}.
  TrialRecord replay(std::span<const Vertex> draws, PoolPolicy policy);

 private:
  void reset();
  void remove_from_pool(Vertex v);
  // Applies one draw; returns the state of the survival graph afterwards.
  GraphState apply(Vertex v, PoolPolicy policy);

  Mesh mesh_;
  SetClassifier classifier_;
  VertexSet alive_;
  VertexSet sources_;
  std::vector<std::size_t> pool_;      // candidates, first pool_size_ valid
  std::vector<std::size_t> position_;  // vertex -> index in pool_
  std::size_t pool_size_ = 0;
};

TrialRecord run_trial(const Mesh& mesh, SplitMix64& rng, PoolPolicy policy);

struct SimulationOptions {
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  PoolPolicy policy = PoolPolicy::kExcludeSources;
  std::size_t workers = 1;
};

struct SimulationReport {
  explicit SimulationReport(Mesh m) : mesh(std::move(m)) {}

  Mesh mesh;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  PoolPolicy policy = PoolPolicy::kExcludeSources;
  std::map<std::size_t, std::uint64_t> histogram;  // mu -> trials
  double mean = 0.0;
  std::size_t median = 0;  // lower median
  std::size_t mode = 0;    // ties go to the smallest mu
  std::size_t min_observed = 0;
};

// Fills mean/median/mode/min_observed from histogram and trials.
void summarize(SimulationReport& report);

SimulationReport run_simulation(const Mesh& mesh, const SimulationOptions& options);

// histogram[mu] / trials (0 for an empty bucket).
double fraction_at(const SimulationReport& report, std::size_t mu);

}  // namespace torus_nbc
