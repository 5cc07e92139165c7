// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
//   torus_nbc_acceptance [--quick] [--cli PATH] [--only N]
//
// --quick runs the simulation criterion at 1e5 trials with every interval's
// half-width doubled. --cli points at the torus-nbc binary for criterion 9.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <unistd.h>
#include <vector>

#include "torus_nbc/fault_sim.hpp"
#include "torus_nbc/graph.hpp"
#include "torus_nbc/mesh.hpp"
#include "torus_nbc/nb_analysis.hpp"
#include "torus_nbc/verify.hpp"

namespace {

using namespace torus_nbc;
using Clock = std::chrono::steady_clock;

struct Config {
  bool quick = false;
  std::string cli;
  int only = 0;
};

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail.clear();
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::size_t workers() {
  return std::max(1u, std::thread::hardware_concurrency());
}

// Small graphs: brute-force smallest vertex cut over bitmasks.
std::size_t brute_connectivity(const Mesh& m, const VertexSet& alive) {
  const auto vs = alive.to_vector();
  const std::size_t k = vs.size();
  if (k <= 1) return 0;
  std::vector<std::uint32_t> adj(k, 0);
  bool complete = true;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if (m.adjacent(vs[a], vs[b])) adj[a] |= 1u << b;
      else if (a != b) complete = false;
    }
  }
  if (complete) return k - 1;
  const std::uint32_t all = (1u << k) - 1;
  auto connected = [&](std::uint32_t keep) {
    if (keep == 0) return true;
    std::uint32_t seen = keep & (~keep + 1);
    for (;;) {
      std::uint32_t grow = seen;
      for (std::size_t a = 0; a < k; ++a) {
        if (seen >> a & 1u) grow |= adj[a] & keep;
      }
      if (grow == seen) break;
      seen = grow;
    }
    return seen == keep;
  };
  std::size_t best = k - 1;
  for (std::uint32_t cut = 0; cut <= all; ++cut) {
    const auto c = static_cast<std::size_t>(__builtin_popcount(cut));
    if (c < best && !connected(all & ~cut)) best = c;
  }
  return best;
}

Outcome criterion1() {
  Outcome o;
  const auto t0 = Clock::now();
  const std::vector<std::pair<std::vector<std::size_t>, std::size_t>> cases{
      {{3, 3}, 4}, {{3, 4}, 4}, {{4, 4}, 4}, {{5, 5}, 4}, {{3, 3, 3}, 6}, {{3, 3, 4}, 6}};
  for (const auto& [dims, want] : cases) {
    const Mesh m(dims);
    const std::size_t got = vertex_connectivity(AliveGraph::intact(m));
    if (got != want) o.fail(m.literal() + " gave " + std::to_string(got));
  }
  const double t = seconds_since(t0);
  if (t >= 10.0) o.fail("runtime " + fmt("%.2f", t) + " s >= 10 s");
  if (o.pass) o.detail = "6 meshes exact in " + fmt("%.3f", t) + " s";
  return o;
}

Outcome criterion2() {
  Outcome o;
  const std::vector<std::pair<std::vector<std::size_t>, std::size_t>> cases{
      {{3, 3}, 2}, {{3, 4}, 2}, {{4, 4}, 2}, {{3, 3, 3}, 3}, {{3, 4, 5}, 3}};
  double slowest = 0;
  for (const auto& [dims, want] : cases) {
    const Mesh m(dims);
    KappaNbOptions opts;
    opts.workers = workers();
    const auto t0 = Clock::now();
    const KappaNbResult r = kappa_nb_exact(m, opts);
    const double t = seconds_since(t0);
    slowest = std::max(slowest, t);
    if (!r.resolved || r.value != want) {
      o.fail(m.literal() + (r.resolved ? " gave " + std::to_string(r.value) : " unresolved"));
    } else if (classify(survival_graph(m, r.witness).graph) == GraphState::kOther) {
      o.fail(m.literal() + " witness does not reach the target state");
    }
    if (t > 60.0) o.fail(m.literal() + " took " + fmt("%.1f", t) + " s");
  }
  if (o.pass) {
    o.detail = "5 meshes exact (3x3 and 4x4 are the 3-ary and 4-ary 2-cubes), slowest " +
               fmt("%.3f", slowest) + " s";
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  for (const auto& dims : std::vector<std::vector<std::size_t>>{
           {3, 3}, {3, 4}, {4, 4}, {3, 3, 3}, {3, 4, 5}, {3, 4, 5, 6}}) {
    const Mesh m(dims);
    const auto u = upper_bound_witness(m);
    const SurvivalGraph sg = survival_graph(m, u);
    const GraphState s = classify(sg.graph);
    const Vertex origin{0};
    bool isolated = sg.graph.contains(origin);
    m.for_each_neighbor(origin, [&](Vertex w) { isolated = isolated && !sg.graph.contains(w); });
    bool ok = u.size() == m.dimension() && isolated;
    if (m == Mesh({3, 3})) {
      ok = ok && s == GraphState::kComplete && sg.graph.vertex_count() == 1;
    } else {
      ok = ok && s == GraphState::kDisconnected;
    }
    if (!ok) o.fail(m.literal() + " witness leaves a " + std::string(to_string(s)) + " graph");
  }
  if (o.pass) o.detail = "6 meshes, origin isolated in each";
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto t0 = Clock::now();
  std::uint64_t cases = 0;
  auto check = [&](const Mesh& m, const std::vector<Vertex>& u) {
    ++cases;
    const SurvivalBoundReport r = verify_survival_lower_bound(m, u);
    if (!r.holds) {
      o.fail(m.literal() + " |U|=" + std::to_string(u.size()) + " kappa " +
             std::to_string(r.kappa) + " < " + std::to_string(r.bound));
    }
  };
  const Mesh m333({3, 3, 3});
  for (std::size_t l = 0; l <= 2; ++l) {
    for_each_subset(m333.vertex_count(), l, true, [&](const std::vector<Vertex>& u) {
      check(m333, u);
      return true;
    });
  }
  SplitMix64 rng(0x5eed);
  for (const auto& dims : std::vector<std::vector<std::size_t>>{{3, 3, 4}, {3, 4, 5}}) {
    const Mesh m(dims);
    for (int s = 0; s < 10000; ++s) {
      const std::size_t l = rng.below(m.dimension());  // 0..n-1
      std::set<Vertex> pick;
      while (pick.size() < l) pick.insert(Vertex{rng.below(m.vertex_count())});
      check(m, std::vector<Vertex>(pick.begin(), pick.end()));
    }
  }
  const double t = seconds_since(t0);
  if (t >= 300.0) o.fail("runtime " + fmt("%.1f", t) + " s");
  if (o.pass) o.detail = std::to_string(cases) + " fault sets, 0 violations, " + fmt("%.2f", t) + " s";
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::uint64_t pairs = 0;
  for (const auto& dims : std::vector<std::vector<std::size_t>>{
           {3, 3}, {3, 4}, {4, 4}, {5, 5}, {3, 3, 3}, {4, 5}}) {
    const Mesh m(dims);
    for (std::size_t a = 0; a < m.vertex_count(); ++a) {
      for (std::size_t b = a + 1; b < m.vertex_count(); ++b) {
        ++pairs;
        const std::size_t c = common_neighbor_count(m, Vertex{a}, Vertex{b});
        const std::size_t cap = m.adjacent(Vertex{a}, Vertex{b}) ? 1 : 2;
        if (c > cap) {
          o.fail(m.literal() + " " + m.format_vertex(Vertex{a}) + "/" +
                 m.format_vertex(Vertex{b}) + " share " + std::to_string(c));
        }
      }
    }
  }
  if (o.pass) o.detail = std::to_string(pairs) + " pairs in range";
  return o;
}

Outcome criterion6() {
  Outcome o;
  const Mesh m({3, 3, 3});
  std::uint64_t sets = 0, pair_checks = 0;
  for (std::size_t l = 0; l < m.dimension(); ++l) {
    for_each_subset(m.vertex_count(), l, false, [&](const std::vector<Vertex>& u) {
      ++sets;
      for (std::size_t axis = 1; axis <= 3; ++axis) {
        if (!healthy_layer_check(m, u, axis)) o.fail("layer without a healthy vertex");
        for (std::size_t i = 0; i < 3; ++i) {
          for (std::size_t j : {(i + 1) % 3, (i + 2) % 3}) {
            ++pair_checks;
            const HealthyPairCount h = healthy_pair_count(m, u, axis, i, j);
            if (!h.exceeds()) {
              o.fail("|H| = " + std::to_string(h.count) + " <= h = " + std::to_string(h.threshold));
            }
          }
        }
      }
      return true;
    });
  }
  if (o.pass) {
    o.detail = std::to_string(sets) + " fault sets, " + std::to_string(pair_checks) +
               " layer pairs";
  }
  return o;
}

// Interval pinned around the published value; quick mode doubles the half-width.
struct Interval {
  double lo, hi;

  Interval widened(bool quick) const {
    if (!quick) return *this;
    const double mid = (lo + hi) / 2, half = (hi - lo) / 2;
    return {mid - 2 * half, mid + 2 * half};
  }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

struct SimTarget {
  std::vector<std::size_t> dims;
  std::optional<std::size_t> min_observed;
  std::size_t median;
  std::size_t mode;
  Interval mean;
  std::optional<std::pair<std::size_t, Interval>> fraction;
};

const std::vector<SimTarget>& sim_targets() {
  static const std::vector<SimTarget> targets{
      {{3, 4}, 2, 3, 3, {2.90, 3.00}, std::pair<std::size_t, Interval>{2, {0.25, 0.29}}},
      {{3, 4, 5}, 3, 8, 7, {8.10, 8.26}, std::pair<std::size_t, Interval>{3, {0.013, 0.021}}},
      {{3, 4, 5, 6}, std::nullopt, 26, 26, {26.0, 26.4}, std::nullopt},
  };
  return targets;
}

std::optional<std::string> judge(const SimTarget& t, const SimulationReport& r, bool quick) {
  std::vector<std::string> bad;
  if (t.min_observed && r.min_observed != *t.min_observed) {
    bad.push_back("min " + std::to_string(r.min_observed));
  }
  if (r.median != t.median) bad.push_back("median " + std::to_string(r.median));
  if (r.mode != t.mode) bad.push_back("mode " + std::to_string(r.mode));
  if (!t.mean.widened(quick).contains(r.mean)) bad.push_back("mean " + fmt("%.4f", r.mean));
  if (t.fraction) {
    const double f = fraction_at(r, t.fraction->first);
    if (!t.fraction->second.widened(quick).contains(f)) {
      bad.push_back("f(" + std::to_string(t.fraction->first) + ") " + fmt("%.4f", f));
    }
  }
  if (bad.empty()) return std::nullopt;
  std::string out;
  for (const auto& b : bad) out += (out.empty() ? "" : ", ") + b;
  return out;
}

std::string summary(const SimulationReport& r) {
  return r.mesh.literal() + " mean " + fmt("%.3f", r.mean) + " median " +
         std::to_string(r.median) + " mode " + std::to_string(r.mode) + " min " +
         std::to_string(r.min_observed);
}

Outcome criterion7(const Config& cfg) {
  Outcome o;
  const std::uint64_t trials = cfg.quick ? 100'000 : 1'000'000;
  const auto t0 = Clock::now();
  std::vector<std::string> lines;
  for (const SimTarget& t : sim_targets()) {
    const Mesh m(t.dims);
    SimulationOptions opts;
    opts.trials = trials;
    opts.seed = 1;
    opts.workers = workers();
    opts.policy = PoolPolicy::kExcludeSources;
    const SimulationReport literal = run_simulation(m, opts);
    const auto literal_bad = judge(t, literal, cfg.quick);
    if (!literal_bad) {
      lines.push_back(summary(literal));
      continue;
    }
    opts.policy = PoolPolicy::kExcludeAllFaulty;
    const SimulationReport alt = run_simulation(m, opts);
    const auto alt_bad = judge(t, alt, cfg.quick);
    if (!alt_bad) {
      lines.push_back(summary(alt) + " [finding: only the exclude-all-faulty pool matches; "
                      "exclude-sources gave " + *literal_bad + "]");
    } else {
      o.fail(m.literal() + " exclude-sources: " + *literal_bad +
             "; exclude-all-faulty: " + *alt_bad);
    }
  }
  const double t = seconds_since(t0);
  const double budget = cfg.quick ? 120.0 : 900.0;
  if (t > budget) o.fail("runtime " + fmt("%.0f", t) + " s over " + fmt("%.0f", budget) + " s");
  if (o.pass) {
    for (const auto& l : lines) o.detail += l + "; ";
    o.detail += std::to_string(trials) + " trials each, " + fmt("%.1f", t) + " s";
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::mt19937_64 rng(8);
  // Brute-force connectivity on small induced subgraphs.
  const std::vector<std::vector<std::size_t>> small{
      {3, 3}, {3, 4}, {4, 4}, {5, 5}, {3, 3, 3}, {3, 3, 2}};
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const Mesh m(small[trial % small.size()]);
    VertexSet alive(m.vertex_count());
    const std::size_t want = 2 + rng() % (std::min<std::size_t>(12, m.vertex_count()) - 1);
    std::vector<Vertex> members{Vertex{rng() % m.vertex_count()}};
    alive.insert(members[0]);
    while (members.size() < want) {
      Vertex v{rng() % m.vertex_count()};
      if (rng() % 4 != 0) {
        const auto nb = m.neighbors(members[rng() % members.size()]);
        v = nb[rng() % nb.size()];
      }
      if (!alive.contains(v)) {
        alive.insert(v);
        members.push_back(v);
      }
    }
    if (vertex_connectivity(AliveGraph(m, alive)) != brute_connectivity(m, alive)) ++mismatches;
  }
  if (mismatches != 0) o.fail(std::to_string(mismatches) + " connectivity mismatches");

  // Path and fan certificates on faulted meshes.
  std::size_t bundles = 0;
  for (const auto& dims : std::vector<std::vector<std::size_t>>{{3, 4}, {3, 3, 3}, {3, 4, 5}, {5, 5}}) {
    const Mesh m(dims);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Vertex> u;
      const std::size_t l = rng() % m.dimension();
      for (std::size_t k = 0; k < l; ++k) u.push_back(Vertex{rng() % m.vertex_count()});
      const SurvivalGraph sg = survival_graph(m, u);
      const auto live = sg.graph.alive().to_vector();
      if (live.size() < 2) continue;
      const Vertex x = live[rng() % live.size()];
      Vertex y = live[rng() % live.size()];
      if (x == y) continue;
      const PathBundle b = disjoint_paths(sg.graph, x, y, 4 * m.dimension());
      ++bundles;
      if (auto err = validate_path_bundle(sg.graph, b)) o.fail(m.literal() + ": " + *err);
      const long bound = 2 * static_cast<long>(m.dimension()) - 2 * static_cast<long>(sg.faults.size());
      if (static_cast<long>(b.count()) < bound) o.fail(m.literal() + " path count below bound");
      std::vector<Vertex> targets;
      for (Vertex v : live) {
        if (v != x && rng() % 3 == 0 && targets.size() < 5) targets.push_back(v);
      }
      if (targets.empty()) continue;
      const PathBundle f = fan(sg.graph, x, targets);
      ++bundles;
      if (auto err = validate_path_bundle(sg.graph, f)) o.fail(m.literal() + " fan: " + *err);
    }
  }
  if (o.pass) {
    o.detail = "500 subgraphs match brute force; " + std::to_string(bundles) +
               " path bundles re-validated";
  }
  return o;
}

std::optional<std::string> slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  return std::string(std::istreambuf_iterator<char>(in), {});
}

Outcome criterion9(const Config& cfg) {
  Outcome o;
  if (cfg.cli.empty()) {
    o.fail("no --cli binary given");
    return o;
  }
  const auto dir = std::filesystem::temp_directory_path() /
                   ("torus_nbc_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::vector<std::string> docs;
  for (int w : {1, 8}) {
    const auto out = dir / ("w" + std::to_string(w) + ".json");
    const std::string cmd = "\"" + cfg.cli + "\" simulate 3x4 --trials 10000 --seed 42 --workers " +
                            std::to_string(w) + " --out \"" + out.string() + "\" > /dev/null";
    if (std::system(cmd.c_str()) != 0) {
      o.fail("command failed: " + cmd);
      break;
    }
    const auto text = slurp(out);
    if (!text || text->empty()) {
      o.fail("no report at " + out.string());
      break;
    }
    docs.push_back(*text);
  }
  std::filesystem::remove_all(dir);
  if (o.pass && docs[0] != docs[1]) o.fail("reports differ between 1 and 8 workers");
  if (o.pass) o.detail = "identical " + std::to_string(docs[0].size()) + "-byte reports";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--quick") {
      cfg.quick = true;
    } else if (a == "--cli" && i + 1 < argc) {
      cfg.cli = argv[++i];
    } else if (a == "--only" && i + 1 < argc) {
      cfg.only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--quick] [--cli PATH] [--only N]\n", argv[0]);
      return 2;
    }
  }

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"exact intact connectivity", criterion1},
      {"kappa_NB exact search", criterion2},
      {"n-source witness", criterion3},
      {"survival connectivity bound", criterion4},
      {"common neighbour ranges", criterion5},
      {"healthy layers and pairs", criterion6},
      {cfg.quick ? "simulation statistics (quick)" : "simulation statistics",
       [&] { return criterion7(cfg); }},
      {"certificate soundness", criterion8},
      {"simulate determinism across workers", [&] { return criterion9(cfg); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int number = static_cast<int>(i) + 1;
    if (cfg.only != 0 && cfg.only != number) continue;
    Outcome r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    failed += !r.pass;
    std::printf("[%s] %d %s: %s\n", r.pass ? "PASS" : "FAIL", number, criteria[i].first,
                r.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
