#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pidf/dataset.hpp"
#include "pidf/datasets.hpp"
#include "pidf/estimators.hpp"
#include "pidf/oracle.hpp"
#include "pidf/pidf.hpp"
#include "pidf/selection.hpp"

namespace pidf {

// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitChecksFailed = 1,
  kExitConfig = 2,
  kExitIngestion = 3,
  kExitEstimator = 4,
  kExitOracleCap = 5,
};

// A synthetic dataset request: any benchmark id or "appendix-a", followed by
// optional duplications (applied in order).
struct GenOptions {
  std::string dataset;
  std::size_t n_samples = 1000;
  std::uint64_t seed = 0;
  TercCondition terc = TercCondition::all_equal;
  std::vector<std::size_t> duplicates;
};

Dataset build_dataset(const GenOptions& options);

// Writes the CSV to `out_path`, or to `out` when the path is empty or "-".
void cmd_gen(const GenOptions& options, const std::string& out_path, std::ostream& out);

struct RunConfig {
  std::optional<std::string> input;      // CSV path
  std::optional<GenOptions> generate;    // or a generated dataset
  std::string target = "target";
  int discrete_cap = 32;
  std::optional<EstimatorKind> estimator;  // default: exact if all discrete, else ksg
  EstimatorConfig tuning;                  // bins / k / subsample / MINE settings
  int repetitions = 5;
  double alpha = 0.05;
  double eps_zero = 1e-3;
  PairwiseTest pairwise_test = PairwiseTest::g_test;
  Unit units = Unit::nats;
  std::uint64_t seed = 0;
  std::vector<std::size_t> duplicates;  // applied to CSV input too
  bool parallel = true;
  std::optional<std::string> out;  // JSON path; stdout if absent
  std::optional<std::string> svg;

  // Throws ConfigError.
  void validate() const;
  // Echo written into the report (output paths excluded).
  nlohmann::ordered_json echo() const;
};

Dataset load_dataset(const RunConfig& cfg);
PidfConfig pidf_config_for(const RunConfig& cfg, const Dataset& data);

struct AnalyzeResult {
  PidfRun run;
  SelectionResult selection;
  std::string json;
  std::optional<std::string> svg;
};

// Runs PIDF and selection; renders JSON (and SVG when requested) without
// writing files.
AnalyzeResult analyze(const RunConfig& cfg);
// analyze() plus writing the JSON to cfg.out (or `out`) and the SVG.
AnalyzeResult cmd_analyze(const RunConfig& cfg, std::ostream& out);

struct BenchOptions {
  std::vector<DatasetId> datasets;
  int seeds = 10;
  std::uint64_t seed_base = 0;
  std::size_t n_samples = 1000;
  std::optional<EstimatorKind> estimator;
  EstimatorConfig tuning;
  int repetitions = 5;
  double alpha = 0.05;
  double eps_zero = 1e-3;
  PairwiseTest pairwise_test = PairwiseTest::g_test;
  bool parallel = true;
};

struct BenchRow {
  DatasetId dataset = DatasetId::rvq;
  std::string estimator;
  std::vector<std::uint64_t> seeds;
  std::vector<FeatureSubset> selections;
  std::vector<ConfusionCounts> counts;
  ConfusionCounts reference;
  int matches = 0;  // seeds whose counts equal the reference
  double mean_tp = 0, mean_fp = 0, mean_tn = 0, mean_fn = 0;
};

std::vector<BenchRow> cmd_bench(const BenchOptions& options);
std::string format_bench(const std::vector<BenchRow>& rows);
nlohmann::ordered_json bench_json(const std::vector<BenchRow>& rows);

struct VerifyResult {
  std::optional<TheoremReport> theorems;  // absent above 10 features
  std::vector<OracleFeature> oracle;
  PidfReport heuristic;
  std::vector<double> fws_delta;  // oracle FWS - heuristic FWS, nats
  bool heuristic_within_oracle = true;
  bool ok() const { return (!theorems || theorems->ok()) && heuristic_within_oracle; }
};

// Oracle checks on discrete data (at most 15 features).
VerifyResult cmd_verify(const Dataset& data, const PidfConfig& cfg, double overshoot_tolerance = 0.02);
std::string format_verify(const VerifyResult& result, const Dataset& data);

// Full command line; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pidf
