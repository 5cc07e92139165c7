#include "torus_nbc/report.hpp"

#include <cmath>
#include <fstream>

#include "torus_nbc/error.hpp"

namespace torus_nbc {

nlohmann::ordered_json report_to_json(const SimulationReport& report) {
  nlohmann::ordered_json histogram = nlohmann::ordered_json::object();
  for (const auto& [mu, count] : report.histogram) {
    histogram[std::to_string(mu)] = count;
  }
  nlohmann::ordered_json ordered;
  ordered["mesh"] = report.mesh.literal();
  ordered["trials"] = report.trials;
  ordered["seed"] = report.seed;
  ordered["pool_policy"] = std::string(to_string(report.policy));
  ordered["histogram"] = histogram;
  ordered["mean"] = report.mean;
  ordered["median"] = report.median;
  ordered["mode"] = report.mode;
  ordered["min_observed"] = report.min_observed;
  return ordered;
}

SimulationReport report_from_json(const nlohmann::json& doc) {
  try {
    SimulationReport report{parse_mesh(doc.at("mesh").get<std::string>())};
    report.trials = doc.at("trials").get<std::uint64_t>();
    report.seed = doc.at("seed").get<std::uint64_t>();
    const auto policy = parse_pool_policy(doc.at("pool_policy").get<std::string>());
    if (!policy) throw ParseError(0, "unknown pool_policy");
    report.policy = *policy;
    for (const auto& [key, value] : doc.at("histogram").items()) {
      report.histogram[std::stoul(key)] = value.get<std::uint64_t>();
    }
    summarize(report);
    const bool consistent =
        report.median == doc.at("median").get<std::size_t>() &&
        report.mode == doc.at("mode").get<std::size_t>() &&
        report.min_observed == doc.at("min_observed").get<std::size_t>() &&
        std::abs(report.mean - doc.at("mean").get<double>()) <= 1e-12;
    if (!consistent) throw ParseError(0, "statistics disagree with histogram");
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("malformed report: ") + e.what());
  }
}

std::string histogram_csv(const SimulationReport& report) {
  std::string out = "faulty_sources,count\n";
  for (const auto& [mu, count] : report.histogram) {
    out += std::to_string(mu) + "," + std::to_string(count) + "\n";
  }
  return out;
}

nlohmann::json vertices_to_json(const Mesh& mesh, std::span<const Vertex> vertices) {
  nlohmann::json out = nlohmann::json::array();
  for (Vertex v : vertices) out.push_back(mesh.decode(v));
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::kIoError, "cannot open " + path);
  file << text;
  if (!file.flush()) throw Error(ErrorCode::kIoError, "cannot write " + path);
}

}  // namespace torus_nbc
