#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "torus_nbc/fault_sim.hpp"
#include "torus_nbc/mesh.hpp"

namespace torus_nbc {

// {"mesh": "3x4", "trials": N, "seed": S, "pool_policy": "...",
//  "histogram": {"2": c2, ...}, "mean": f, "median": i, "mode": i,
//  "min_observed": i}, fields in this order, histogram keys ascending by mu.
nlohmann::ordered_json report_to_json(const SimulationReport& report);

// Inverse of report_to_json; statistics are recomputed from the histogram
// and must agree with the stored ones. Throws Error{kParseError}.
SimulationReport report_from_json(const nlohmann::json& doc);

// "faulty_sources,count" header, one row per histogram bucket ascending.
std::string histogram_csv(const SimulationReport& report);

// [[1,3,0],[0,1,4],...]
nlohmann::json vertices_to_json(const Mesh& mesh, std::span<const Vertex> vertices);

// Writes `text` to `path`; throws Error{kIoError}.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace torus_nbc
