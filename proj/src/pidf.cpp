#include "pidf/pidf.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>

#include "pidf/plugin.hpp"
#include "pidf/stats.hpp"

namespace pidf {

void PidfConfig::validate() const {
  estimator.validate();
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (!(eps_zero >= 0.0)) throw ConfigError("eps_zero must be non-negative");
}

const char* to_string(Verdict v) { return v == Verdict::redundant ? "redundant" : "not_redundant"; }

EstimateEnsemble theta(MiEngine& engine, std::size_t i, std::size_t j, const FeatureSubset& context) {
  const std::size_t n = engine.data().n_features();
  if (i >= n || j >= n) throw DataError("theta: feature index out of range");
  if (i == j) throw DataError("theta: i and j must differ");
  if (context.contains(i) || context.contains(j)) throw DataError("theta: context must exclude i and j");
  context.check_bounds(n);
  const FeatureSubset fi{i};
  return engine.gain(fi, context.with(j)) - engine.gain(fi, context);
}

EstimateEnsemble theta(const Dataset& data, std::size_t i, std::size_t j, const FeatureSubset& context,
                       const EstimatorConfig& cfg) {
  MiEngine engine(data, cfg);
  return theta(engine, i, j, context);
}

Verdict is_redundant(const EstimateEnsemble& theta, double alpha, double eps_zero) {
  return significantly_negative(theta, alpha, eps_zero) ? Verdict::redundant : Verdict::not_redundant;
}

EstimateEnsemble interaction_information(MiEngine& engine, std::size_t i, const FeatureSubset& s) {
  const FeatureSubset fi{i};
  return engine.gain(fi, s) - engine.gain(fi, {});
}

namespace {

bool pairwise_dependent(const MiEngine& engine, std::size_t i, std::size_t j, const EstimateEnsemble& mi,
                        const PidfConfig& cfg) {
  if (!significantly_positive(mi, cfg.alpha, cfg.eps_zero)) return false;
  const auto kind = engine.config().kind;
  if (cfg.pairwise_test != PairwiseTest::g_test || (kind != EstimatorKind::exact && kind != EstimatorKind::binned)) {
    return true;
  }
  // Plug-in MI of independent variables is biased upward by about
  // (|A|-1)(|B|-1) / 2n; the G-test accounts for that.
  const auto& data = engine.data();
  auto support = [&](std::size_t f) {
    const Column* col = &data.feature(f);
    Column binned;
    if (!col->kind.is_discrete()) {
      binned = {col->name, equal_frequency_bins(col->values, engine.config().bins),
                ColumnKind::discrete(engine.config().bins)};
      col = &binned;
    }
    const Column* cols[] = {col};
    return static_cast<double>(support_size(joint_codes(cols)));
  };
  const double dof = (support(i) - 1.0) * (support(j) - 1.0);
  // Bonferroni over the n - 1 candidates of feature i: one spurious pair is
  // enough to block a feature during selection.
  const double family = std::max<double>(1.0, static_cast<double>(data.n_features()) - 1.0);
  return g_test_p_value(mi.mean(), data.n_samples(), dof) < cfg.alpha / family;
}

std::string name_of(const Dataset& data, std::size_t f) { return "F" + std::to_string(f) + " (" + data.feature(f).name + ")"; }

}  // namespace

PidfFeatureResult pidf_feature(MiEngine& engine, std::size_t i, const PidfConfig& cfg, FeatureTrace* trace) {
  const Dataset& data = engine.data();
  const std::size_t n = data.n_features();
  PidfFeatureResult out;
  out.feature = i;

  out.mi_ensemble = engine.target_mi(FeatureSubset{i});

  struct Candidate {
    std::size_t index;
    EstimateEnsemble mi;
  };
  std::vector<Candidate> candidates;
  for (std::size_t j = 0; j < n; ++j) {
    if (j != i) candidates.push_back({j, engine.mi(VarGroup::feature(i), VarGroup::feature(j))});
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.mi.mean() != b.mi.mean()) return a.mi.mean() > b.mi.mean();
    return a.index < b.index;
  });

  std::vector<std::size_t> redundant;
  for (const auto& c : candidates) {
    if (pairwise_dependent(engine, i, c.index, c.mi, cfg)) redundant.push_back(c.index);
  }
  out.redundant_set = FeatureSubset(redundant);

  if (trace) {
    trace->feature = i;
    for (const auto& c : candidates) {
      trace->candidate_order.push_back(c.index);
      trace->candidate_mi.push_back(c.mi.mean());
    }
  }

  FeatureSubset surviving = FeatureSubset::range(n).without(i);
  out.fwr_ensemble = EstimateEnsemble::constant(0.0, engine.seeds());
  for (const auto& c : candidates) {
    const std::size_t j = c.index;
    const FeatureSubset context = surviving.without(j);
    EstimateEnsemble t;
    try {
      t = theta(engine, i, j, context);
    } catch (const EstimatorError& e) {
      throw EstimatorError("feature " + name_of(data, i) + ", candidate " + name_of(data, j) + ": " + e.what());
    }
    const Verdict verdict = is_redundant(t, cfg.alpha, cfg.eps_zero);
    if (verdict == Verdict::redundant) {
      out.fwr_contributions[j] = InfoValue::nats(std::max(0.0, -t.mean()));
      out.fwr_ensemble = out.fwr_ensemble - t;
      surviving = context;
      if (trace) trace->removed.push_back(j);
    }
    if (trace) trace->evaluations.push_back({i, j, context, t, verdict});
  }

  out.fws_ensemble = interaction_information(engine, i, surviving);
  if (out.fws_ensemble.deterministic() && out.fws_ensemble.mean() < 0.0) {
    // The empty partner set attains II = 0 and so beats a pruned set with
    // negative II. Stochastic estimates are left as they are (and flagged).
    surviving = FeatureSubset{};
    out.fws_ensemble = EstimateEnsemble::constant(0.0, engine.seeds());
  }
  out.max_synergy_set = surviving;

  double fwr_total = 0.0;
  for (const auto& [j, v] : out.fwr_contributions) fwr_total += v.value;

  out.mi = InfoValue::nats(out.mi_ensemble.mean());
  out.fws = InfoValue::nats(out.fws_ensemble.mean());
  out.fwr_total = InfoValue::nats(fwr_total);
  out.mci = InfoValue::nats(out.mi.value + out.fws.value);
  out.oci = InfoValue::nats(out.mci.value - fwr_total);
  out.fws_within_noise =
      !out.fws_ensemble.deterministic() && std::abs(out.fws.value) < 2.0 * out.fws_ensemble.stddev();
  return out;
}

namespace {

PidfReport make_report(const Dataset& data, const PidfConfig& cfg, std::vector<PidfFeatureResult> results) {
  PidfReport report;
  report.features = std::move(results);
  report.estimator = to_string(cfg.estimator.kind);
  report.estimator_config = cfg.estimator.describe();
  report.repetitions = cfg.estimator.repetitions;
  report.alpha = cfg.alpha;
  report.eps_zero = cfg.eps_zero;
  report.unit = Unit::nats;
  report.dataset = {data.feature_names(), data.target().name, data.n_samples(), cfg.data_seed};
  return report;
}

PidfRun run(const Dataset& data, const PidfConfig& cfg, bool parallel) {
  cfg.validate();
  MiEngine engine(data, cfg.estimator);
  const std::size_t n = data.n_features();
  std::vector<PidfFeatureResult> results(n);
  PidfTrace trace;
  trace.features.resize(n);
  if (!parallel) {
    for (std::size_t i = 0; i < n; ++i) results[i] = pidf_feature(engine, i, cfg, &trace.features[i]);
    return {make_report(data, cfg, std::move(results)), std::move(trace)};
  }
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t f = 0; f < static_cast<std::ptrdiff_t>(n); ++f) {
    const auto i = static_cast<std::size_t>(f);
    try {
      results[i] = pidf_feature(engine, i, cfg, &trace.features[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return {make_report(data, cfg, std::move(results)), std::move(trace)};
}

}  // namespace

PidfRun run_pidf(const Dataset& data, const PidfConfig& cfg) { return run(data, cfg, cfg.parallel); }

PidfRun run_pidf_serial(const Dataset& data, const PidfConfig& cfg) { return run(data, cfg, false); }

FwsSearch brute_force_fws(const Dataset& data, std::size_t i, const EstimatorConfig& cfg, std::size_t cap,
                          double tie_tolerance) {
  const std::size_t n = data.n_features();
  if (n > cap) {
    throw OracleCapError("exhaustive FWS search limited to " + std::to_string(cap) + " features, dataset has " +
                         std::to_string(n));
  }
  if (i >= n) throw DataError("brute_force_fws: feature index out of range");
  MiEngine engine(data, cfg);
  std::vector<std::size_t> others;
  for (std::size_t j = 0; j < n; ++j) {
    if (j != i) others.push_back(j);
  }
  struct Scored {
    FeatureSubset subset;
    double value;
  };
  std::vector<Scored> scored;
  const std::uint64_t count = std::uint64_t{1} << others.size();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    std::vector<std::size_t> members;
    for (std::size_t b = 0; b < others.size(); ++b) {
      if (mask >> b & 1u) members.push_back(others[b]);
    }
    FeatureSubset s(members);
    scored.push_back({s, interaction_information(engine, i, s).mean()});
  }
  FwsSearch out;
  out.value = std::max_element(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
                return a.value < b.value;
              })->value;
  for (const auto& s : scored) {
    if (s.value >= out.value - tie_tolerance) out.maximizers.push_back(s.subset);
  }
  std::sort(out.maximizers.begin(), out.maximizers.end(), [](const FeatureSubset& a, const FeatureSubset& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

}  // namespace pidf
