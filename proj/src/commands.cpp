#include "pidf/commands.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "pidf/csv.hpp"
#include "pidf/report.hpp"
#include "pidf/svg.hpp"

namespace pidf {

namespace {

std::shared_ptr<spdlog::logger> logger() {
  static std::shared_ptr<spdlog::logger> log = [] {
    auto l = spdlog::stderr_color_mt("pidf");
    l->set_pattern("[%l] %v");
    l->set_level(spdlog::level::warn);
    if (const char* env = std::getenv("PIDF_LOG_LEVEL")) l->set_level(spdlog::level::from_str(env));
    return l;
  }();
  return log;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write output file '" + path + "'");
  f << text;
  if (!f) throw ConfigError("failed while writing '" + path + "'");
}

Dataset apply_duplicates(Dataset data, const std::vector<std::size_t>& duplicates) {
  for (std::size_t idx : duplicates) {
    if (idx >= data.n_features()) {
      throw ConfigError("--dup " + std::to_string(idx) + ": dataset has " + std::to_string(data.n_features()) +
                        " features");
    }
    data = duplicate_feature(data, idx);
  }
  return data;
}

bool is_appendix_a(const std::string& id) { return id == "appendix-a" || id == "appendix_a" || id == "appendixa"; }

const char* to_string(PairwiseTest t) { return t == PairwiseTest::g_test ? "g-test" : "threshold"; }

}  // namespace

Dataset build_dataset(const GenOptions& options) {
  if (options.n_samples < 1) throw ConfigError("--n must be >= 1");
  Dataset data = is_appendix_a(options.dataset)
                     ? appendix_a_dataset(options.n_samples, options.seed)
                     : generate({parse_dataset_id(options.dataset), options.n_samples, options.seed, options.terc});
  return apply_duplicates(std::move(data), options.duplicates);
}

void cmd_gen(const GenOptions& options, const std::string& out_path, std::ostream& out) {
  const Dataset data = build_dataset(options);
  if (out_path.empty() || out_path == "-") {
    write_csv(data, out);
  } else {
    write_csv(data, out_path);
    logger()->info("wrote {} rows x {} columns to {}", data.n_samples(), data.n_features() + 1, out_path);
  }
}

void RunConfig::validate() const {
  if (input.has_value() == generate.has_value()) {
    throw ConfigError("exactly one of an input CSV path or --generate <dataset> is required");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("--alpha must lie in (0, 1)");
  if (!(eps_zero >= 0.0)) throw ConfigError("--eps-zero must be non-negative");
  if (repetitions < 1) throw ConfigError("--reps must be >= 1");
  if (discrete_cap < 1) throw ConfigError("--discrete-cap must be >= 1");
}

nlohmann::ordered_json RunConfig::echo() const {
  nlohmann::ordered_json j;
  if (input) {
    j["input"] = *input;
  } else {
    j["generate"] = {{"dataset", generate->dataset},
                     {"n_samples", generate->n_samples},
                     {"seed", generate->seed},
                     {"terc_condition", generate->terc == TercCondition::all_equal ? "all_equal" : "pair"}};
  }
  j["target"] = target;
  j["duplicates"] = duplicates;
  j["estimator"] = estimator ? to_string(*estimator) : "default";
  j["repetitions"] = repetitions;
  j["alpha"] = alpha;
  j["eps_zero"] = eps_zero;
  j["pairwise_test"] = to_string(pairwise_test);
  j["units"] = to_string(units);
  j["seed"] = seed;
  return j;
}

Dataset load_dataset(const RunConfig& cfg) {
  if (cfg.generate) {
    GenOptions g = *cfg.generate;
    g.duplicates.insert(g.duplicates.end(), cfg.duplicates.begin(), cfg.duplicates.end());
    return build_dataset(g);
  }
  ValidateOptions opts;
  opts.target_name = cfg.target;
  opts.discrete_cap = cfg.discrete_cap;
  return apply_duplicates(validate_dataset(read_csv(*cfg.input), opts), cfg.duplicates);
}

PidfConfig pidf_config_for(const RunConfig& cfg, const Dataset& data) {
  PidfConfig p;
  p.estimator = cfg.tuning;
  p.estimator.kind = cfg.estimator ? *cfg.estimator : EstimatorConfig::default_for(data).kind;
  p.estimator.repetitions = cfg.repetitions;
  p.estimator.seed = cfg.seed;
  p.estimator.parallel = cfg.parallel;
  p.alpha = cfg.alpha;
  p.eps_zero = cfg.eps_zero;
  p.pairwise_test = cfg.pairwise_test;
  p.parallel = cfg.parallel;
  p.data_seed = cfg.generate ? cfg.generate->seed : cfg.seed;
  return p;
}

AnalyzeResult analyze(const RunConfig& cfg) {
  cfg.validate();
  const Dataset data = load_dataset(cfg);
  const PidfConfig pcfg = pidf_config_for(cfg, data);
  pcfg.validate();
  pcfg.estimator.validate_for(data);
  logger()->info("analyzing {} features x {} samples with the {} estimator", data.n_features(), data.n_samples(),
                 to_string(pcfg.estimator.kind));
  AnalyzeResult result;
  result.run = run_pidf(data, pcfg);
  result.selection = select_features(result.run.report, pcfg.alpha, pcfg.eps_zero);
  result.json = render_report(result.run.report.in_units(cfg.units), result.selection, cfg.echo());
  if (cfg.svg) result.svg = render_svg(result.run.report, result.selection);
  return result;
}

AnalyzeResult cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  AnalyzeResult result = analyze(cfg);
  if (cfg.out && *cfg.out != "-") {
    write_text(*cfg.out, result.json);
  } else {
    out << result.json;
  }
  if (cfg.svg) write_text(*cfg.svg, *result.svg);
  return result;
}

std::vector<BenchRow> cmd_bench(const BenchOptions& options) {
  if (options.seeds < 1) throw ConfigError("--seeds must be >= 1");
  if (options.datasets.empty()) throw ConfigError("bench needs at least one dataset");
  std::vector<BenchRow> rows;
  for (DatasetId id : options.datasets) {
    BenchRow row;
    row.dataset = id;
    row.reference = reference_counts(id);
    for (int s = 0; s < options.seeds; ++s) {
      const std::uint64_t seed = options.seed_base + static_cast<std::uint64_t>(s);
      const Dataset data = generate({id, options.n_samples, seed, TercCondition::all_equal});
      PidfConfig p;
      p.estimator = options.tuning;
      p.estimator.kind = options.estimator ? *options.estimator : EstimatorConfig::default_for(data).kind;
      p.estimator.repetitions = options.repetitions;
      p.estimator.seed = seed;
      p.estimator.parallel = options.parallel;
      p.alpha = options.alpha;
      p.eps_zero = options.eps_zero;
      p.pairwise_test = options.pairwise_test;
      p.parallel = options.parallel;
      p.data_seed = seed;
      p.estimator.validate_for(data);
      const auto run = run_pidf(data, p);
      const auto selection = select_features(run.report, p.alpha, p.eps_zero);
      const auto counts = score_selection(id, selection.selected, data.n_features());
      row.estimator = to_string(p.estimator.kind);
      row.seeds.push_back(seed);
      row.selections.push_back(selection.selected);
      row.counts.push_back(counts);
      if (counts == row.reference) ++row.matches;
      row.mean_tp += counts.tp;
      row.mean_fp += counts.fp;
      row.mean_tn += counts.tn;
      row.mean_fn += counts.fn;
      logger()->info("{} seed {}: selected {}", to_string(id), seed, selection.selected.to_string());
    }
    const double k = options.seeds;
    row.mean_tp /= k;
    row.mean_fp /= k;
    row.mean_tn /= k;
    row.mean_fn /= k;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_bench(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << std::left << std::setw(8) << "dataset" << std::setw(10) << "estimator" << std::setw(26)
      << "mean TP/FP/TN/FN" << std::setw(14) << "reference" << "matching seeds\n";
  for (const auto& r : rows) {
    std::ostringstream mean, ref;
    mean << std::fixed << std::setprecision(1) << r.mean_tp << "/" << r.mean_fp << "/" << r.mean_tn << "/"
         << r.mean_fn;
    ref << r.reference.tp << "/" << r.reference.fp << "/" << r.reference.tn << "/" << r.reference.fn;
    out << std::left << std::setw(8) << to_string(r.dataset) << std::setw(10) << r.estimator << std::setw(26)
        << mean.str() << std::setw(14) << ref.str() << r.matches << "/" << r.seeds.size() << "\n";
  }
  return out.str();
}

nlohmann::ordered_json bench_json(const std::vector<BenchRow>& rows) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json per_seed = nlohmann::ordered_json::array();
    for (std::size_t s = 0; s < r.seeds.size(); ++s) {
      const auto& c = r.counts[s];
      per_seed.push_back({{"seed", r.seeds[s]},
                          {"selected", r.selections[s].indices()},
                          {"tp", c.tp},
                          {"fp", c.fp},
                          {"tn", c.tn},
                          {"fn", c.fn}});
    }
    out.push_back({{"dataset", to_string(r.dataset)},
                   {"estimator", r.estimator},
                   {"mean", {{"tp", r.mean_tp}, {"fp", r.mean_fp}, {"tn", r.mean_tn}, {"fn", r.mean_fn}}},
                   {"reference", {{"tp", r.reference.tp}, {"fp", r.reference.fp}, {"tn", r.reference.tn},
                                  {"fn", r.reference.fn}}},
                   {"matches", r.matches},
                   {"runs", per_seed}});
  }
  return out;
}

VerifyResult cmd_verify(const Dataset& data, const PidfConfig& cfg, double overshoot_tolerance) {
  const JointTable table = JointTable::from_dataset(data);
  VerifyResult result;
  result.oracle = oracle_pidf(table, 15);
  if (data.n_features() <= 10) result.theorems = check_theorems(table, 10);
  PidfConfig exact = cfg;
  exact.estimator.kind = EstimatorKind::exact;
  result.heuristic = run_pidf(data, exact).report;
  for (std::size_t i = 0; i < data.n_features(); ++i) {
    const double delta = result.oracle[i].fws - result.heuristic.features[i].fws.value;
    result.fws_delta.push_back(delta);
    if (delta < -overshoot_tolerance) result.heuristic_within_oracle = false;
  }
  return result;
}

std::string format_verify(const VerifyResult& r, const Dataset& data) {
  std::ostringstream out;
  out << std::setprecision(12);
  if (r.theorems) {
    const auto& t = *r.theorems;
    out << "theorem 1: max |MCI - FWR - OCI| = " << t.theorem1_max_residual << " nats "
        << (t.theorem1_max_residual < 1e-9 ? "(pass)" : "(FAIL)") << "\n";
    out << "theorem 2: " << t.triples << " (i, j, context) triples; upper-bound violations " << t.upper_violations
        << ", lower-bound violations " << t.lower_violations << " "
        << (t.upper_violations == 0 && t.lower_violations == 0 ? "(pass)" : "(FAIL)") << "\n";
    out << "           Assumption 1 fails on " << t.assumption_failures << " triples ("
        << t.lower_breaches_without_assumption << " of them below the lower bound; not claimed there)\n";
  } else {
    out << "theorems: skipped (more than 10 features)\n";
  }
  out << "per-feature oracle vs heuristic (nats):\n";
  for (std::size_t i = 0; i < r.oracle.size(); ++i) {
    const auto& o = r.oracle[i];
    const auto& h = r.heuristic.features[i];
    out << "  F" << i << " (" << data.feature(i).name << "): mi " << o.mi << ", oracle fws " << o.fws
        << ", heuristic fws " << h.fws.value << ", delta " << r.fws_delta[i] << ", oracle fwr " << o.fwr
        << ", mci " << o.mci << ", oci " << o.oci << "\n";
    out << "    maximizing subsets:";
    for (std::size_t k = 0; k < o.maximizers.size(); ++k) out << (k ? "," : " ") << o.maximizers[k].to_string();
    out << "\n";
  }
  out << "heuristic FWS never exceeds the oracle maximum: " << (r.heuristic_within_oracle ? "pass" : "FAIL") << "\n";
  out << (r.ok() ? "all checks passed\n" : "some checks FAILED\n");
  return out.str();
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Feature-wise synergy and redundancy analysis (PIDF)", "pidf"};
  app.set_config("--config", "", "Read options from a key=value file (command-line flags take precedence)");
  app.require_subcommand(1);
  app.fallthrough();

  std::string estimator_text, units_text = "nats", pairwise_text = "g-test", terc_text = "all_equal";
  std::string generate_id, out_path, svg_path, target = "target";
  int reps = 5, seeds = 10, threads = 0, discrete_cap = 32;
  double alpha = 0.05, eps_zero = 1e-3;
  std::uint64_t seed = 0;
  std::size_t n_samples = 1000;
  std::vector<std::size_t> dup;
  bool serial = false;
  EstimatorConfig tuning;

  app.add_option("--estimator", estimator_text, "MI estimator: exact, binned, ksg or mine");
  app.add_option("--reps", reps, "Estimator repetitions per quantity")->capture_default_str();
  app.add_option("--alpha", alpha, "Significance level")->capture_default_str();
  app.add_option("--eps-zero", eps_zero, "Zero tolerance for deterministic estimates (nats)")->capture_default_str();
  app.add_option("--units", units_text, "Report units: nats or bits")->capture_default_str();
  app.add_option("--seed", seed, "Seed for generation and estimation")->capture_default_str();
  app.add_option("--target", target, "Target column name in CSV input")->capture_default_str();
  app.add_option("--out", out_path, "Output path (CSV for gen, JSON otherwise; default stdout)");
  app.add_option("--svg", svg_path, "Write a bar chart of the analysis");
  app.add_option("--dup", dup, "Append a duplicate of this feature (repeatable)");
  app.add_option("--n", n_samples, "Samples for generated datasets")->capture_default_str();
  app.add_option("--generate", generate_id, "Analyze/verify a generated dataset instead of a CSV");
  app.add_option("--terc-condition", terc_text, "TERC target rule: all_equal or pair")->capture_default_str();
  app.add_option("--seeds", seeds, "bench: seeds per dataset")->capture_default_str();
  app.add_option("--bins", tuning.bins, "binned: equal-frequency bins per column")->capture_default_str();
  app.add_option("--ksg-k", tuning.ksg_k, "ksg: neighbours")->capture_default_str();
  app.add_option("--ksg-subsample", tuning.ksg_subsample, "ksg: row fraction per repetition")->capture_default_str();
  app.add_option("--mine-batch", tuning.mine.batch_size, "mine: batch size")->capture_default_str();
  app.add_option("--mine-iterations", tuning.mine.iterations, "mine: training iterations")->capture_default_str();
  app.add_option("--mine-lr", tuning.mine.learning_rate, "mine: Adam learning rate")->capture_default_str();
  app.add_option("--pairwise-test", pairwise_text, "Redundant-set test: g-test or threshold")->capture_default_str();
  app.add_option("--discrete-cap", discrete_cap, "Largest cardinality inferred as discrete")->capture_default_str();
  app.add_option("--threads", threads, "OpenMP threads (0: runtime default)")->capture_default_str();
  app.add_flag("--serial", serial, "Use the single-threaded reference path");

  std::string gen_dataset;
  auto* gen = app.add_subcommand("gen", "Write a synthetic dataset as CSV");
  gen->add_option("dataset", gen_dataset, "rvq, svq, msq, wt, terc1, terc2, ubr, sg or appendix-a")->required();

  std::string analyze_input;
  auto* analyze_cmd = app.add_subcommand("analyze", "Run PIDF and feature selection, emit a JSON report");
  analyze_cmd->add_option("input", analyze_input, "CSV file");

  std::vector<std::string> bench_ids;
  auto* bench = app.add_subcommand("bench", "Confusion counts of the selector on the synthetic benchmarks");
  bench->add_option("datasets", bench_ids, "Comma-separated dataset ids (default: all)")->delimiter(',');

  std::string verify_input;
  auto* verify = app.add_subcommand("verify", "Check theorems and the heuristic against exhaustive oracles");
  verify->add_option("input", verify_input, "CSV file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (threads > 0) omp_set_num_threads(threads);
    const Unit units = parse_unit(units_text);
    const std::optional<EstimatorKind> kind =
        estimator_text.empty() ? std::nullopt : std::optional(parse_estimator_kind(estimator_text));
    PairwiseTest pairwise;
    if (pairwise_text == "g-test" || pairwise_text == "g_test") {
      pairwise = PairwiseTest::g_test;
    } else if (pairwise_text == "threshold") {
      pairwise = PairwiseTest::threshold;
    } else {
      throw ConfigError("--pairwise-test must be g-test or threshold");
    }
    TercCondition terc;
    if (terc_text == "all_equal") {
      terc = TercCondition::all_equal;
    } else if (terc_text == "pair") {
      terc = TercCondition::pair;
    } else {
      throw ConfigError("--terc-condition must be all_equal or pair");
    }

    auto run_config = [&](const std::string& input) {
      RunConfig cfg;
      if (!input.empty()) cfg.input = input;
      if (!generate_id.empty()) cfg.generate = GenOptions{generate_id, n_samples, seed, terc, {}};
      cfg.target = target;
      cfg.discrete_cap = discrete_cap;
      cfg.estimator = kind;
      cfg.tuning = tuning;
      cfg.repetitions = reps;
      cfg.alpha = alpha;
      cfg.eps_zero = eps_zero;
      cfg.pairwise_test = pairwise;
      cfg.units = units;
      cfg.seed = seed;
      cfg.duplicates = dup;
      cfg.parallel = !serial;
      if (!out_path.empty()) cfg.out = out_path;
      if (!svg_path.empty()) cfg.svg = svg_path;
      return cfg;
    };

    if (gen->parsed()) {
      cmd_gen({gen_dataset, n_samples, seed, terc, dup}, out_path, out);
      return kExitOk;
    }
    if (analyze_cmd->parsed()) {
      cmd_analyze(run_config(analyze_input), out);
      return kExitOk;
    }
    if (bench->parsed()) {
      BenchOptions b;
      if (bench_ids.empty()) {
        b.datasets = all_dataset_ids();
      } else {
        for (const auto& id : bench_ids) b.datasets.push_back(parse_dataset_id(id));
      }
      b.seeds = seeds;
      b.seed_base = seed;
      b.n_samples = n_samples;
      b.estimator = kind;
      b.tuning = tuning;
      b.repetitions = reps;
      b.alpha = alpha;
      b.eps_zero = eps_zero;
      b.pairwise_test = pairwise;
      b.parallel = !serial;
      const auto rows = cmd_bench(b);
      out << format_bench(rows);
      if (!out_path.empty()) write_text(out_path, bench_json(rows).dump(2) + "\n");
      return kExitOk;
    }
    if (verify->parsed()) {
      RunConfig cfg = run_config(verify_input);
      cfg.estimator = EstimatorKind::exact;
      cfg.validate();
      const Dataset data = load_dataset(cfg);
      if (!data.all_discrete()) throw DataError("oracle requires discrete columns");
      const auto result = cmd_verify(data, pidf_config_for(cfg, data));
      out << format_verify(result, data);
      return result.ok() ? kExitOk : kExitChecksFailed;
    }
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DataError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitIngestion;
  } catch (const EstimatorError& e) {
    err << "estimator failure: " << e.what() << "\n";
    return kExitEstimator;
  } catch (const OracleCapError& e) {
    err << "oracle limit: " << e.what() << "\n";
    return kExitOracleCap;
  }
  return kExitConfig;
}

}  // namespace pidf
