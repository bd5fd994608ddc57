#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "kswitch/harness.hpp"
#include "test_support.hpp"

namespace kswitch {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.constraint = "colored-triangles";
  cfg.k_min = 2;
  cfg.k_max = 3;
  cfg.n_trials = 20000;
  cfg.replicates = 3;
  cfg.seed = 11;
  cfg.observables = {"colored-triangles"};
  cfg.observation_interval = 1000;
  return cfg;
}

TEST(Harness, ZeroTrialsReportsTheStarter) {
  const Graph g = testing::rgb_triangles(10);
  ExperimentConfig cfg = small_config();
  cfg.n_trials = 0;
  const auto table = run_experiment(g, make_constraint("colored-triangles", g), cfg);
  ASSERT_EQ(table.rows.size(), 2U);
  for (const auto& row : table.rows) {
    EXPECT_EQ(row.mean, table.starter);
    EXPECT_EQ(row.successes_mean, 0.0);
    for (double sd : row.stddev) EXPECT_EQ(sd, 0.0);
  }
  EXPECT_EQ(table.plateau_k, std::optional<std::size_t>{2});
}

TEST(Harness, K2HoldsAndK3Mixes) {
  const Graph g = testing::rgb_triangles(10);
  const auto table = run_experiment(g, make_constraint("colored-triangles", g), small_config());
  EXPECT_EQ(table.rows[0].mean[10], 1.0);
  EXPECT_EQ(table.rows[0].successes_mean, 0.0);
  EXPECT_LT(table.rows[1].mean[10], 1.0);
  EXPECT_GT(table.rows[1].successes_mean, 0.0);
  EXPECT_EQ(table.columns.size(), 11U);
}

TEST(Harness, RerunsAreByteIdentical) {
  const fs::path base = fs::temp_directory_path() / "kswitch_harness_rerun";
  fs::remove_all(base);
  const Graph g = testing::rgb_triangles(10);
  const AnyConstraint c = make_constraint("colored-triangles", g);
  for (const char* run : {"a", "b"}) {
    ExperimentConfig cfg = small_config();
    cfg.output_dir = (base / run).string();
    cfg.threads = run[0] == 'a' ? 1 : 3;
    run_experiment(g, c, cfg);
  }
  for (const char* file : {"summary.json", "summary.txt", "summary.csv", "trace_k3_r2.csv"}) {
    const std::string a = slurp(base / "a" / file);
    EXPECT_FALSE(a.empty()) << file;
    EXPECT_EQ(a, slurp(base / "b" / file)) << file;
  }
  fs::remove_all(base);
}

TEST(Harness, SeedChangesTheOutcome) {
  const Graph g = testing::rgb_triangles(10);
  const AnyConstraint c = make_constraint("colored-triangles", g);
  ExperimentConfig cfg = small_config();
  const auto a = run_experiment(g, c, cfg);
  cfg.seed = 12;
  const auto b = run_experiment(g, c, cfg);
  EXPECT_NE(a.rows[1].mean, b.rows[1].mean);
}

TEST(Harness, ConfigValidation) {
  auto code_of = [](ExperimentConfig cfg) {
    try {
      cfg.validate();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  ExperimentConfig cfg;
  cfg.k_min = 1;
  EXPECT_EQ(code_of(cfg), ErrorCode::ConfigInvalid);
  cfg = {};
  cfg.k_min = 4;
  cfg.k_max = 3;
  EXPECT_EQ(code_of(cfg), ErrorCode::ConfigInvalid);
  cfg = {};
  cfg.replicates = 0;
  EXPECT_EQ(code_of(cfg), ErrorCode::ConfigInvalid);
  cfg = {};
  cfg.tail_fraction = 0;
  EXPECT_EQ(code_of(cfg), ErrorCode::ConfigInvalid);
  EXPECT_NO_THROW(ExperimentConfig{}.validate());

  const Graph g = testing::rgb_triangles(1);
  ExperimentConfig big = small_config();
  big.k_max = 4;
  EXPECT_THROW(run_experiment(g, make_constraint("none", g), big), Error);

  Graph bad = testing::rgb_triangles(2);
  const auto c = make_constraint("colored-triangles", bad);
  bad = testing::make_graph({{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}}, true, 6);
  try {
    run_experiment(bad, c, small_config());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::StarterViolatesConstraint);
  }
}

TEST(Harness, LoadsFromFiles) {
  ExperimentConfig cfg = small_config();
  cfg.input_path = std::string(KSWITCH_DATA_DIR) + "/rgb_triangles_180.txt";
  cfg.colors_path = std::string(KSWITCH_DATA_DIR) + "/rgb_triangles_180.colors";
  cfg.n_trials = 2000;
  cfg.observation_interval = 500;
  const auto table = run_experiment(cfg);
  EXPECT_EQ(table.constraint, "colored-triangles");
  EXPECT_EQ(table.starter[10], 1.0);
  EXPECT_GT(table.memory_bytes, 0U);

  cfg.colors_path.clear();
  try {
    run_experiment(cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingColorData);
  }
}

SummaryRow row(std::size_t k, double v) { return SummaryRow{k, {v}, {0.0}, 0.0, 0.0}; }

TEST(Harness, PlateauK) {
  EXPECT_EQ(plateau_k({row(2, 1.0), row(3, 0.5), row(4, 0.5), row(5, 0.505)}, 0.02), std::optional<std::size_t>{3});
  EXPECT_EQ(plateau_k({row(2, 1.0), row(3, 1.0)}, 0.02), std::optional<std::size_t>{2});
  EXPECT_EQ(plateau_k({row(2, 1.0), row(3, 0.5), row(4, 0.4)}, 0.02), std::nullopt);
  EXPECT_EQ(plateau_k({row(2, 1.0)}, 0.02), std::nullopt);
}

SummaryTable tiny_table() {
  SummaryTable t;
  t.constraint = "none";
  t.n_trials = 100;
  t.replicates = 2;
  t.columns = {"triangles"};
  t.starter = {3};
  t.rows = {SummaryRow{2, {2.5}, {0.5}, 40, 2}, SummaryRow{3, {2.5}, {0.25}, 30, 1}};
  t.plateau_k = 2;
  t.memory_bytes = 1234;
  return t;
}

TEST(Harness, EmitCsvAndJson) {
  std::ostringstream csv;
  emit_summary(tiny_table(), SummaryFormat::Csv, csv);
  EXPECT_EQ(csv.str(),
            "k,triangles_mean,triangles_sd,successes_mean,successes_sd\n"
            "2,2.5,0.5,40,2\n"
            "3,2.5,0.25,30,1\n");
  std::ostringstream json;
  emit_summary(tiny_table(), SummaryFormat::Json, json);
  const auto j = nlohmann::json::parse(json.str());
  EXPECT_EQ(j["rows"][1]["k"], 3);
  EXPECT_EQ(j["rows"][0]["mean"]["triangles"], 2.5);
  EXPECT_EQ(j["plateau_k"], 2);
  EXPECT_EQ(j["starter"]["triangles"], 3.0);
}

TEST(Harness, EmitText) {
  std::ostringstream text;
  emit_summary(tiny_table(), SummaryFormat::Text, text);
  const std::string s = text.str();
  EXPECT_NE(s.find("constraint: none  trials: 100  replicates: 2"), std::string::npos);
  EXPECT_NE(s.find("triangles | 3.000   | 2.500 ± 0.500 | 2.500 ± 0.250"), std::string::npos) << s;
  EXPECT_NE(s.find("Successes | -       | 40 ± 2        | 30 ± 1"), std::string::npos) << s;
  EXPECT_NE(s.find("plateau from k=2"), std::string::npos);
  EXPECT_NE(s.find("1234 bytes"), std::string::npos);
}

TEST(Harness, TraceFileName) { EXPECT_EQ(trace_file_name(4, 17), "trace_k4_r17.csv"); }

}  // namespace
}  // namespace kswitch
