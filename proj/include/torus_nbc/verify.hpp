#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "torus_nbc/mesh.hpp"

namespace torus_nbc {

struct CheckResult {
  explicit CheckResult(std::string n) : name(std::move(n)) {}

  std::string name;
  std::string mode;  // "exhaustive", "sampled" or "skipped"
  std::uint64_t cases = 0;
  std::uint64_t violations = 0;
  std::string first_violation;
};

struct VerifyOptions {
  // Random fault sets per sampled check.
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;
  // Largest number of fault sets (or vertex pairs) a check may enumerate
  // before it falls back to sampling.
  std::uint64_t exhaustive_budget = 200'000;
  // Meshes above this size skip the exact intact-connectivity check.
  std::size_t connectivity_vertex_limit = 4096;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::vector<std::string> notices;

  std::uint64_t violations() const;
  bool passed() const { return violations() == 0; }
};

// Runs the structural and fault-tolerance property battery against one mesh:
// adjacency/degree/coding sanity always; the connectivity, common-neighbour,
// witness, survival-bound and layer checks only when n >= 2 and every
// d_i >= 3 (layer checks need n >= 3), recording a notice otherwise.
VerifyReport run_verification(const Mesh& mesh, const VerifyOptions& options);

// Calls fn(subset) for every size-l subset of [0, universe) in lexicographic
// order, optionally only those containing vertex 0. Stops early when fn
// returns false.
template <typename Fn>
void for_each_subset(std::size_t universe, std::size_t l, bool pin_zero, Fn&& fn);

}  // namespace torus_nbc

#include "torus_nbc/detail/subsets.ipp"
