#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "pidf/dataset.hpp"
#include "pidf/mine.hpp"
#include "pidf/types.hpp"

namespace pidf {

enum class EstimatorKind { exact, binned, ksg, mine };

const char* to_string(EstimatorKind kind);
EstimatorKind parse_estimator_kind(const std::string& text);

struct EstimatorConfig {
  EstimatorKind kind = EstimatorKind::exact;
  int bins = 8;
  int ksg_k = 3;
  // Each repetition sees a seeded subsample of this fraction of the rows, so
  // the repetitions spread with the sampling noise and the t-tests downstream
  // have something to work with. 1 makes KSG deterministic.
  double ksg_subsample = 0.5;
  MineConfig mine;
  int repetitions = 5;
  std::uint64_t seed = 0;
  // Run repetitions and the KSG kernel with OpenMP.
  bool parallel = true;

  // Throws ConfigError on an invalid combination.
  void validate() const;
  void validate_for(const Dataset& data) const;
  std::map<std::string, std::string> describe() const;

  static EstimatorConfig default_for(const Dataset& data);
};

// One estimate of I(A;B) in nats for a single seed.
double estimate_mi_once(const Dataset& data, const VarGroup& a, const VarGroup& b, const EstimatorConfig& cfg,
                        std::uint64_t seed);

// `cfg.repetitions` estimates seeded by repetition_seed(cfg.seed, r).
EstimateEnsemble estimate_mi(const Dataset& data, const VarGroup& a, const VarGroup& b, const EstimatorConfig& cfg);

// I(A;B|C). KSG uses the Frenzel-Pompe conditional estimator; the other
// kinds return I(A;B,C) - I(A;C).
EstimateEnsemble estimate_cmi(const Dataset& data, const VarGroup& a, const VarGroup& b, const VarGroup& c,
                              const EstimatorConfig& cfg);

// Plug-in entropy; exact estimator only.
EstimateEnsemble estimate_entropy(const Dataset& data, const VarGroup& group, const EstimatorConfig& cfg);

// Memoizing front end used by the PIDF passes. Estimates are pure functions
// of (groups, seed) so cached values are shared safely across threads.
class MiEngine {
 public:
  MiEngine(const Dataset& data, EstimatorConfig cfg);

  const Dataset& data() const { return data_; }
  const EstimatorConfig& config() const { return cfg_; }
  const std::vector<std::uint64_t>& seeds() const { return seeds_; }

  EstimateEnsemble mi(const VarGroup& a, const VarGroup& b);
  // I(Y; S) for a feature subset S.
  EstimateEnsemble target_mi(const FeatureSubset& s) { return mi(VarGroup::target_only(), VarGroup::of(s)); }

  // I(Y; T | S): the information the features T add to S about the target.
  // Plug-in and MINE estimators take the difference I(Y;S,T) - I(Y;S) of
  // cached MI values; KSG uses the conditional estimator so that the
  // dimension-dependent biases of the two terms do not leak into the gain.
  EstimateEnsemble gain(const FeatureSubset& added, const FeatureSubset& given);

  std::size_t cache_size() const;

 private:
  const Dataset& data_;
  std::optional<Dataset> binned_;
  EstimatorConfig cfg_;
  std::vector<std::uint64_t> seeds_;
  mutable std::mutex mutex_;
  std::map<std::string, EstimateEnsemble> cache_;
};

}  // namespace pidf
