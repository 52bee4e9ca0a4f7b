#include "pidf/estimators.hpp"

#include <sstream>

#include "pidf/ksg.hpp"
#include "pidf/plugin.hpp"
#include "pidf/rng.hpp"

namespace pidf {

const char* to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::exact:
      return "exact";
    case EstimatorKind::binned:
      return "binned";
    case EstimatorKind::ksg:
      return "ksg";
    case EstimatorKind::mine:
      return "mine";
  }
  return "unknown";
}

EstimatorKind parse_estimator_kind(const std::string& text) {
  if (text == "exact") return EstimatorKind::exact;
  if (text == "binned") return EstimatorKind::binned;
  if (text == "ksg") return EstimatorKind::ksg;
  if (text == "mine") return EstimatorKind::mine;
  throw ConfigError("unknown estimator '" + text + "' (expected exact, binned, ksg or mine)");
}

void EstimatorConfig::validate() const {
  if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
  if (kind == EstimatorKind::binned && bins < 2) throw ConfigError("binned estimator needs bins >= 2");
  if (kind == EstimatorKind::ksg) {
    if (ksg_k < 1) throw ConfigError("KSG needs k >= 1");
    if (!(ksg_subsample > 0.0 && ksg_subsample <= 1.0)) throw ConfigError("KSG subsample must be in (0, 1]");
  }
  if (kind == EstimatorKind::mine) {
    if (mine.iterations < 1) throw ConfigError("MINE needs at least one iteration");
    if (mine.batch_size < 1) throw ConfigError("MINE batch size must be >= 1");
    if (mine.hidden < 1) throw ConfigError("MINE hidden width must be >= 1");
    if (!(mine.learning_rate > 0.0)) throw ConfigError("MINE learning rate must be positive");
  }
}

void EstimatorConfig::validate_for(const Dataset& data) const {
  validate();
  if (kind == EstimatorKind::mine && mine.batch_size > data.n_samples()) {
    throw EstimatorError("MINE batch size " + std::to_string(mine.batch_size) + " exceeds " +
                         std::to_string(data.n_samples()) + " samples");
  }
  if (kind == EstimatorKind::exact && !data.all_discrete()) {
    throw EstimatorError("exact estimator requires all columns to be discrete");
  }
}

std::map<std::string, std::string> EstimatorConfig::describe() const {
  std::map<std::string, std::string> out;
  auto put = [&](const std::string& key, auto value) {
    std::ostringstream s;
    s << value;
    out[key] = s.str();
  };
  put("kind", to_string(kind));
  put("repetitions", repetitions);
  put("seed", seed);
  switch (kind) {
    case EstimatorKind::exact:
      break;
    case EstimatorKind::binned:
      put("bins", bins);
      break;
    case EstimatorKind::ksg:
      put("k", ksg_k);
      put("subsample", ksg_subsample);
      break;
    case EstimatorKind::mine:
      put("batch_size", mine.batch_size);
      put("iterations", mine.iterations);
      put("learning_rate", mine.learning_rate);
      put("hidden", mine.hidden);
      put("tail_fraction", mine.tail_fraction);
      break;
  }
  return out;
}

EstimatorConfig EstimatorConfig::default_for(const Dataset& data) {
  EstimatorConfig cfg;
  cfg.kind = data.all_discrete() ? EstimatorKind::exact : EstimatorKind::ksg;
  return cfg;
}

namespace {

bool is_deterministic(const EstimatorConfig& cfg) {
  return cfg.kind == EstimatorKind::exact || cfg.kind == EstimatorKind::binned ||
         (cfg.kind == EstimatorKind::ksg && cfg.ksg_subsample >= 1.0);
}

double estimate_with(const Dataset& data, const Dataset* binned, const VarGroup& a, const VarGroup& b,
                     const EstimatorConfig& cfg, std::uint64_t seed) {
  if (a.empty() || b.empty()) return 0.0;
  switch (cfg.kind) {
    case EstimatorKind::exact:
      return plugin_mi(data, a, b);
    case EstimatorKind::binned:
      return binned ? plugin_mi(*binned, a, b) : plugin_mi(binned_dataset(data, cfg.bins), a, b);
    case EstimatorKind::ksg:
      return ksg_mi(data, a, b, KsgOptions{cfg.ksg_k, cfg.ksg_subsample, cfg.parallel}, cfg.seed, seed);
    case EstimatorKind::mine:
      return mine_mi(data, a, b, cfg.mine, seed);
  }
  throw ConfigError("unhandled estimator kind");
}

template <class Estimate>
EstimateEnsemble repeat(const EstimatorConfig& cfg, Estimate estimate) {
  auto seeds = repetition_seeds(cfg.seed, cfg.repetitions);
  if (is_deterministic(cfg)) {
    const double value = estimate(seeds.front());
    return EstimateEnsemble::constant(value, std::move(seeds));
  }
  std::vector<double> values(seeds.size());
  // Repetitions are independent; results land in seed order.
#pragma omp parallel for schedule(dynamic) if (cfg.parallel && cfg.kind == EstimatorKind::mine)
  for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(seeds.size()); ++r) {
    values[static_cast<std::size_t>(r)] = estimate(seeds[static_cast<std::size_t>(r)]);
  }
  return EstimateEnsemble(std::move(values), std::move(seeds));
}

EstimateEnsemble ensemble_with(const Dataset& data, const Dataset* binned, const VarGroup& a, const VarGroup& b,
                               const EstimatorConfig& cfg) {
  if (a.empty() || b.empty()) return EstimateEnsemble::constant(0.0, repetition_seeds(cfg.seed, cfg.repetitions));
  return repeat(cfg, [&](std::uint64_t seed) { return estimate_with(data, binned, a, b, cfg, seed); });
}

EstimateEnsemble ksg_cmi_ensemble(const Dataset& data, const VarGroup& a, const VarGroup& b, const VarGroup& c,
                                  const EstimatorConfig& cfg) {
  const KsgOptions options{cfg.ksg_k, cfg.ksg_subsample, cfg.parallel};
  return repeat(cfg, [&](std::uint64_t seed) { return ksg_cmi(data, a, b, c, options, cfg.seed, seed); });
}

}  // namespace

double estimate_mi_once(const Dataset& data, const VarGroup& a, const VarGroup& b, const EstimatorConfig& cfg,
                        std::uint64_t seed) {
  cfg.validate_for(data);
  return estimate_with(data, nullptr, a, b, cfg, seed);
}

EstimateEnsemble estimate_mi(const Dataset& data, const VarGroup& a, const VarGroup& b, const EstimatorConfig& cfg) {
  cfg.validate_for(data);
  return ensemble_with(data, nullptr, a, b, cfg);
}

EstimateEnsemble estimate_cmi(const Dataset& data, const VarGroup& a, const VarGroup& b, const VarGroup& c,
                              const EstimatorConfig& cfg) {
  cfg.validate_for(data);
  if (cfg.kind == EstimatorKind::ksg) return ksg_cmi_ensemble(data, a, b, c, cfg);
  VarGroup bc{b.features.unite(c.features), b.target || c.target};
  return estimate_mi(data, a, bc, cfg) - estimate_mi(data, a, c, cfg);
}

EstimateEnsemble estimate_entropy(const Dataset& data, const VarGroup& group, const EstimatorConfig& cfg) {
  cfg.validate();
  if (cfg.kind != EstimatorKind::exact) throw ConfigError("entropy estimation supports the exact estimator only");
  return EstimateEnsemble::constant(plugin_entropy(data, group), repetition_seeds(cfg.seed, cfg.repetitions));
}

// ---------------------------------------------------------------------------

MiEngine::MiEngine(const Dataset& data, EstimatorConfig cfg)
    : data_(data), cfg_(std::move(cfg)), seeds_(repetition_seeds(cfg_.seed, cfg_.repetitions)) {
  cfg_.validate_for(data_);
  if (cfg_.kind == EstimatorKind::binned) binned_.emplace(binned_dataset(data_, cfg_.bins));
}

EstimateEnsemble MiEngine::mi(const VarGroup& a, const VarGroup& b) {
  std::string ka = a.key();
  std::string kb = b.key();
  const bool swap = kb < ka;
  const std::string key = swap ? kb + "|" + ka : ka + "|" + kb;
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const Dataset* binned = binned_ ? &*binned_ : nullptr;
  EstimateEnsemble value = swap ? ensemble_with(data_, binned, b, a, cfg_) : ensemble_with(data_, binned, a, b, cfg_);
  std::lock_guard lock(mutex_);
  return cache_.emplace(key, std::move(value)).first->second;
}

EstimateEnsemble MiEngine::gain(const FeatureSubset& added, const FeatureSubset& given) {
  if (added.intersects(given)) throw DataError("gain: added and given features overlap");
  if (added.empty()) return EstimateEnsemble::constant(0.0, seeds_);
  if (cfg_.kind != EstimatorKind::ksg || given.empty()) return target_mi(given.unite(added)) - target_mi(given);
  const std::string key = "cmi:" + VarGroup::of(added).key() + "|" + VarGroup::of(given).key();
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  EstimateEnsemble value =
      ksg_cmi_ensemble(data_, VarGroup::target_only(), VarGroup::of(added), VarGroup::of(given), cfg_);
  std::lock_guard lock(mutex_);
  return cache_.emplace(key, std::move(value)).first->second;
}

std::size_t MiEngine::cache_size() const {
  std::lock_guard lock(mutex_);
  return cache_.size();
}

}  // namespace pidf
