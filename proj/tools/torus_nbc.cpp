// torus-nbc: inspect toroidal meshes, compute (neighbour) connectivity, run
// the property battery and the random neighbour-fault simulation.
//
// Exit codes: 0 success, 1 property violation, 2 usage error,
// 3 search budget exceeded.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "torus_nbc/error.hpp"
#include "torus_nbc/fault_sim.hpp"
#include "torus_nbc/graph.hpp"
#include "torus_nbc/mesh.hpp"
#include "torus_nbc/nb_analysis.hpp"
#include "torus_nbc/report.hpp"
#include "torus_nbc/verify.hpp"

namespace {

using namespace torus_nbc;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

// Meshes up to this size get an exact connectivity figure in `info`.
constexpr std::size_t kInfoConnectivityLimit = 4096;

struct RunConfig {
  std::string mesh;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  std::string pool = "exclude-sources";
  std::size_t workers = 1;
  std::size_t max_l = 0;
  std::uint64_t budget = KappaNbOptions{}.subset_budget;
  bool no_symmetry = false;
  std::string format = "text";
  std::string out;
  std::uint64_t samples = 1000;
  std::string from;
  std::string to;
  std::vector<std::string> faults;
  std::size_t max_paths = 0;
};

std::string join_vertices(const Mesh& mesh, const std::vector<Vertex>& vs) {
  std::string out = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i != 0) out += ", ";
    out += mesh.compact_vertex(vs[i]);
  }
  return out + "}";
}

std::vector<Vertex> parse_vertex_list(const Mesh& mesh,
                                      const std::vector<std::string>& items) {
  std::vector<Vertex> out;
  for (const auto& item : items) out.push_back(mesh.encode(parse_coords(item)));
  return out;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(cfg.out, text);
  }
}

int cmd_info(const RunConfig& cfg) {
  const Mesh mesh = parse_mesh(cfg.mesh);
  const bool regime = mesh.dimension() >= 2 && mesh.all_dims_ge_3();
  std::string kappa_source;
  std::size_t kappa = 0;
  bool have_kappa = true;
  if (mesh.vertex_count() <= kInfoConnectivityLimit) {
    kappa = vertex_connectivity(AliveGraph::intact(mesh));
    kappa_source = "computed";
  } else if (regime) {
    kappa = 2 * mesh.dimension();
    kappa_source = "closed form 2n";
  } else {
    have_kappa = false;
    kappa_source = "not computed";
  }
  const std::string note =
      regime ? "n >= 2 and every d_i >= 3"
             : (mesh.dimension() < 2 ? "n < 2" : "some d_i < 3");

  if (cfg.format == "json") {
    ordered_json doc;
    doc["mesh"] = mesh.literal();
    doc["n"] = mesh.dimension();
    doc["dims"] = std::vector<std::size_t>(mesh.dims().begin(), mesh.dims().end());
    doc["vertices"] = mesh.vertex_count();
    doc["degree"] = mesh.degree();
    doc["kappa"] = have_kappa ? ordered_json(kappa) : ordered_json(nullptr);
    doc["kappa_source"] = kappa_source;
    doc["regime"] = regime;
    doc["regime_note"] = note;
    emit(cfg, doc.dump(2) + "\n");
    return kExitOk;
  }
  std::string text;
  text += "mesh      C(" + mesh.literal() + ")\n";
  text += "n         " + std::to_string(mesh.dimension()) + "\n";
  text += "|V|       " + std::to_string(mesh.vertex_count()) + "\n";
  text += "degree    " + std::to_string(mesh.degree()) + "\n";
  text += "kappa     " + (have_kappa ? std::to_string(kappa) : std::string("-")) +
          " (" + kappa_source + ")\n";
  text += "regime    " + note + "\n";
  emit(cfg, text);
  return kExitOk;
}

int cmd_kappa(const RunConfig& cfg) {
  const Mesh mesh = parse_mesh(cfg.mesh);
  const std::vector<Vertex> u = parse_vertex_list(mesh, cfg.faults);
  const SurvivalGraph sg = survival_graph(mesh, u);
  const std::size_t kappa = vertex_connectivity(sg.graph);
  const GraphState state = classify(sg.graph);
  if (cfg.format == "json") {
    ordered_json doc;
    doc["mesh"] = mesh.literal();
    doc["faults"] = vertices_to_json(mesh, sg.faults.sources);
    doc["alive"] = sg.graph.vertex_count();
    doc["state"] = std::string(to_string(state));
    doc["kappa"] = kappa;
    emit(cfg, doc.dump(2) + "\n");
  } else {
    emit(cfg, "kappa(C(" + mesh.literal() + ")" +
                  (u.empty() ? std::string() : " - N[" + join_vertices(mesh, sg.faults.sources) + "]") +
                  ") = " + std::to_string(kappa) + "  [" +
                  std::to_string(sg.graph.vertex_count()) + " alive, " +
                  std::string(to_string(state)) + "]\n");
  }
  return kExitOk;
}

int cmd_kappa_nb(const RunConfig& cfg) {
  const Mesh mesh = parse_mesh(cfg.mesh);
  KappaNbOptions options;
  options.max_l = cfg.max_l;
  options.workers = cfg.workers;
  options.subset_budget = cfg.budget;
  options.symmetry_pruning = !cfg.no_symmetry;
  const auto start = std::chrono::steady_clock::now();
  const KappaNbResult r = kappa_nb_exact(mesh, options);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (cfg.format == "json") {
    ordered_json doc;
    doc["mesh"] = mesh.literal();
    doc["resolved"] = r.resolved;
    doc["kappa_nb"] = r.resolved ? ordered_json(r.value) : ordered_json(nullptr);
    doc["witness"] = vertices_to_json(mesh, r.witness);
    doc["witness_state"] = r.resolved ? std::string(to_string(r.witness_state)) : "";
    doc["levels_searched"] = r.levels_searched;
    doc["subsets_examined"] = r.subsets_examined;
    doc["elapsed_seconds"] = seconds;
    doc["notices"] = r.notices;
    emit(cfg, doc.dump(2) + "\n");
  } else {
    std::string text;
    for (const auto& notice : r.notices) text += "note: " + notice + "\n";
    if (r.resolved) {
      text += "kappa_NB(C(" + mesh.literal() + ")) = " + std::to_string(r.value) + "\n";
      text += "witness   " + join_vertices(mesh, r.witness) + " -> " +
              std::string(to_string(r.witness_state)) + "\n";
    } else {
      text += "Unresolved: no witness with |U| <= " +
              std::to_string(r.levels_searched) + "\n";
    }
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3f s", seconds);
    text += "examined  " + std::to_string(r.subsets_examined) + " subsets in " +
            timing + "\n";
    emit(cfg, text);
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
  const Mesh mesh = parse_mesh(cfg.mesh);
  VerifyOptions options;
  options.samples = cfg.samples;
  options.seed = cfg.seed;
  const VerifyReport report = run_verification(mesh, options);

  if (cfg.format == "json") {
    ordered_json doc;
    doc["mesh"] = mesh.literal();
    doc["passed"] = report.passed();
    doc["notices"] = report.notices;
    ordered_json checks = ordered_json::array();
    for (const auto& c : report.checks) {
      checks.push_back({{"name", c.name},
                        {"mode", c.mode},
                        {"cases", c.cases},
                        {"violations", c.violations},
                        {"first_violation", c.first_violation}});
    }
    doc["checks"] = checks;
    emit(cfg, doc.dump(2) + "\n");
  } else {
    std::string text;
    for (const auto& notice : report.notices) text += "note: " + notice + "\n";
    for (const auto& c : report.checks) {
      text += std::string(c.violations == 0 ? "PASS " : "FAIL ") + c.name + "  [" +
              c.mode + ", " + std::to_string(c.cases) + " cases";
      if (c.violations != 0) {
        text += ", " + std::to_string(c.violations) + " violations; first: " +
                c.first_violation;
      }
      text += "]\n";
    }
    text += report.passed() ? "all checks passed\n" : "property violations found\n";
    emit(cfg, text);
  }
  return report.passed() ? kExitOk : kExitViolation;
}

int cmd_simulate(const RunConfig& cfg) {
  const Mesh mesh = parse_mesh(cfg.mesh);
  SimulationOptions options;
  options.trials = cfg.trials;
  options.seed = cfg.seed;
  options.workers = cfg.workers;
  options.policy = *parse_pool_policy(cfg.pool);
  const SimulationReport report = run_simulation(mesh, options);

  const std::string json_text = report_to_json(report).dump(2) + "\n";
  const std::string csv_text = histogram_csv(report);
  if (!cfg.out.empty()) {
    std::filesystem::path csv_path(cfg.out);
    csv_path.replace_extension(".csv");
    if (csv_path == std::filesystem::path(cfg.out)) csv_path += ".hist.csv";
    write_text_file(cfg.out, json_text);
    write_text_file(csv_path.string(), csv_text);
  }
  char summary[256];
  std::snprintf(summary, sizeof summary,
                "C(%s) %llu trials seed %llu [%s]: mean %.2f median %zu mode %zu "
                "min %zu\n",
                mesh.literal().c_str(),
                static_cast<unsigned long long>(report.trials),
                static_cast<unsigned long long>(report.seed),
                std::string(to_string(report.policy)).c_str(), report.mean,
                report.median, report.mode, report.min_observed);
  if (cfg.format == "json" && cfg.out.empty()) {
    std::cout << json_text;
  } else if (cfg.format == "csv" && cfg.out.empty()) {
    std::cout << csv_text;
  } else {
    std::cout << summary;
  }
  return kExitOk;
}

int cmd_paths(const RunConfig& cfg) {
  const Mesh mesh = parse_mesh(cfg.mesh);
  const Vertex x = mesh.encode(parse_coords(cfg.from));
  const Vertex y = mesh.encode(parse_coords(cfg.to));
  const std::vector<Vertex> u = parse_vertex_list(mesh, cfg.faults);
  const SurvivalGraph sg = survival_graph(mesh, u);
  const std::size_t cap = cfg.max_paths == 0 ? mesh.degree() : cfg.max_paths;
  const PathBundle bundle = disjoint_paths(sg.graph, x, y, cap);

  const auto defect = validate_path_bundle(sg.graph, bundle);
  const std::size_t l = sg.faults.size();
  const bool hypotheses = mesh.dimension() >= 2 && mesh.all_dims_ge_3() &&
                          l <= mesh.dimension();
  const long bound = 2 * static_cast<long>(mesh.dimension()) - 2 * static_cast<long>(l);
  const bool bound_ok = !hypotheses || static_cast<long>(bundle.count()) >= bound;

  if (cfg.format == "json") {
    ordered_json doc;
    doc["mesh"] = mesh.literal();
    doc["from"] = mesh.decode(x);
    doc["to"] = mesh.decode(y);
    doc["faults"] = vertices_to_json(mesh, sg.faults.sources);
    ordered_json paths = ordered_json::array();
    for (const auto& p : bundle.paths) paths.push_back(ordered_json(vertices_to_json(mesh, p)));
    doc["paths"] = paths;
    doc["count"] = bundle.count();
    doc["bound"] = hypotheses ? ordered_json(bound) : ordered_json(nullptr);
    doc["certificate_valid"] = !defect.has_value();
    emit(cfg, doc.dump(2) + "\n");
  } else {
    std::string text;
    for (std::size_t i = 0; i < bundle.paths.size(); ++i) {
      text += "P" + std::to_string(i + 1) + "  ";
      for (std::size_t k = 0; k < bundle.paths[i].size(); ++k) {
        if (k != 0) text += " ";
        text += mesh.compact_vertex(bundle.paths[i][k]);
      }
      text += "\n";
    }
    text += std::to_string(bundle.count()) + " internally disjoint paths";
    if (hypotheses) text += " (bound 2n - 2|U| = " + std::to_string(bound) + ")";
    text += "\n";
    if (defect) text += "certificate defect: " + *defect + "\n";
    emit(cfg, text);
  }
  return (defect || !bound_ok) ? kExitViolation : kExitOk;
}

std::size_t default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toroidal mesh connectivity and neighbour-fault analysis"};
  app.require_subcommand(1);
  RunConfig cfg;
  cfg.workers = default_workers();

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("mesh", cfg.mesh, "Mesh literal such as 3x4x5")->required();
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--out", cfg.out, "Write output to PATH");
  };
  auto add_workers = [&](CLI::App* sub) {
    sub->add_option("--workers", cfg.workers, "Worker threads")
        ->envname("TORUS_NBC_WORKERS")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* info = app.add_subcommand("info", "Mesh summary");
  add_common(info);

  CLI::App* kappa = app.add_subcommand("kappa", "Exact vertex connectivity");
  add_common(kappa);
  kappa->add_option("--fault", cfg.faults, "Faulty source vertex, e.g. 0,1,2 (repeatable)");

  CLI::App* kappa_nb = app.add_subcommand("kappa-nb", "Exact neighbour connectivity search");
  add_common(kappa_nb);
  add_workers(kappa_nb);
  kappa_nb->add_option("--max-l", cfg.max_l, "Largest fault-set size to try (default n)");
  kappa_nb->add_option("--budget", cfg.budget, "Subset enumeration cap");
  kappa_nb->add_flag("--no-symmetry", cfg.no_symmetry, "Do not pin the first source to 0...0");

  CLI::App* verify = app.add_subcommand("verify", "Run the property battery");
  add_common(verify);
  verify->add_option("--samples", cfg.samples, "Random fault sets per sampled check");
  verify->add_option("--seed", cfg.seed, "Seed for sampled checks");

  CLI::App* simulate = app.add_subcommand("simulate", "Random neighbour-fault trials");
  add_common(simulate);
  add_workers(simulate);
  simulate->add_option("--trials", cfg.trials, "Number of trials")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", cfg.seed, "Base seed");
  simulate->add_option("--pool", cfg.pool, "Draw pool policy")
      ->check(CLI::IsMember({"exclude-sources", "exclude-all-faulty"}));

  CLI::App* paths = app.add_subcommand("paths", "Internally disjoint healthy paths");
  add_common(paths);
  paths->add_option("--from", cfg.from, "Source coordinates, e.g. 1,1,1")->required();
  paths->add_option("--to", cfg.to, "Target coordinates")->required();
  paths->add_option("--fault", cfg.faults, "Faulty source vertex (repeatable)");
  paths->add_option("--max", cfg.max_paths, "Cap on the number of paths (default degree)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*info) return cmd_info(cfg);
    if (*kappa) return cmd_kappa(cfg);
    if (*kappa_nb) return cmd_kappa_nb(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*simulate) return cmd_simulate(cfg);
    if (*paths) return cmd_paths(cfg);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
