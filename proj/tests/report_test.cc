#include "torus_nbc/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "torus_nbc/error.hpp"

namespace torus_nbc {
namespace {

SimulationReport Sample() {
  SimulationReport r{Mesh({3, 4})};
  r.trials = 10;
  r.seed = 42;
  r.histogram = {{2, 3}, {3, 5}, {10, 2}};
  summarize(r);
  return r;
}

TEST(ReportJsonTest, FieldsInDocumentedOrder) {
  const auto doc = report_to_json(Sample());
  std::vector<std::string> keys;
  for (const auto& [k, v] : doc.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"mesh", "trials", "seed", "pool_policy", "histogram",
                                            "mean", "median", "mode", "min_observed"}));
  EXPECT_EQ(doc["mesh"], "3x4");
  EXPECT_EQ(doc["pool_policy"], "exclude-sources");
  EXPECT_EQ(doc["histogram"]["10"], 2);
  std::vector<std::string> buckets;
  for (const auto& [k, v] : doc["histogram"].items()) buckets.push_back(k);
  EXPECT_EQ(buckets, (std::vector<std::string>{"2", "3", "10"}));
  EXPECT_EQ(doc["median"], 3);
  EXPECT_EQ(doc["mode"], 3);
  EXPECT_EQ(doc["min_observed"], 2);
}

TEST(ReportJsonTest, RoundTrip) {
  const SimulationReport r = Sample();
  const SimulationReport back =
      report_from_json(nlohmann::json::parse(report_to_json(r).dump()));
  EXPECT_EQ(back.mesh, r.mesh);
  EXPECT_EQ(back.histogram, r.histogram);
  EXPECT_EQ(back.seed, 42u);
  EXPECT_EQ(back.mean, r.mean);
}

TEST(ReportJsonTest, RejectsInconsistentOrMalformedDocuments) {
  nlohmann::json doc = nlohmann::json::parse(report_to_json(Sample()).dump());
  doc["median"] = 10;
  EXPECT_THROW(report_from_json(doc), ParseError);
  doc = nlohmann::json::parse(report_to_json(Sample()).dump());
  doc.erase("histogram");
  EXPECT_THROW(report_from_json(doc), ParseError);
  doc = nlohmann::json::parse(report_to_json(Sample()).dump());
  doc["pool_policy"] = "never";
  EXPECT_THROW(report_from_json(doc), ParseError);
}

TEST(ReportCsvTest, Format) {
  EXPECT_EQ(histogram_csv(Sample()), "faulty_sources,count\n2,3\n3,5\n10,2\n");
}

TEST(VerticesJsonTest, CoordinateArrays) {
  const Mesh m({3, 4});
  const std::vector<Vertex> vs{m.encode(std::vector<std::size_t>{1, 3}), Vertex{0}};
  EXPECT_EQ(vertices_to_json(m, vs).dump(), "[[1,3],[0,0]]");
}

TEST(WriteFileTest, WritesAndReportsFailure) {
  const auto path = std::filesystem::temp_directory_path() / "torus_nbc_report_test.txt";
  write_text_file(path.string(), "abc\n");
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), "abc\n");
  std::filesystem::remove(path);
  try {
    write_text_file("/nonexistent-dir/x/y.json", "{}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIoError);
  }
}

}  // namespace
}  // namespace torus_nbc
