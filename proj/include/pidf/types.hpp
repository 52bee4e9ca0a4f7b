#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace pidf {

// Error categories. Each maps onto a distinct CLI exit code.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EstimatorError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OracleCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Unit { nats, bits };

const char* to_string(Unit unit);
Unit parse_unit(const std::string& text);

// An information quantity tagged with its unit. Computations stay in nats;
// bits appear only when a report is rendered.
struct InfoValue {
  double value = 0.0;
  Unit unit = Unit::nats;

  static InfoValue nats(double v) { return {v, Unit::nats}; }
  InfoValue to(Unit target) const;
};

InfoValue convert_units(InfoValue v, Unit target);

// Sorted set of feature indices.
class FeatureSubset {
 public:
  FeatureSubset() = default;
  FeatureSubset(std::initializer_list<std::size_t> indices);
  explicit FeatureSubset(std::vector<std::size_t> indices);

  static FeatureSubset from_mask(std::uint64_t mask);
  static FeatureSubset range(std::size_t n);

  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  bool contains(std::size_t index) const;
  FeatureSubset with(std::size_t index) const;
  FeatureSubset without(std::size_t index) const;
  FeatureSubset unite(const FeatureSubset& other) const;
  bool intersects(const FeatureSubset& other) const;

  // Throws DataError if any index is >= n_features.
  void check_bounds(std::size_t n_features) const;

  const std::vector<std::size_t>& indices() const { return indices_; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  std::string to_string() const;

  friend bool operator==(const FeatureSubset&, const FeatureSubset&) = default;
  friend auto operator<=>(const FeatureSubset&, const FeatureSubset&) = default;

 private:
  std::vector<std::size_t> indices_;
};

// Repeated estimates of one quantity, one per seed.
class EstimateEnsemble {
 public:
  EstimateEnsemble() = default;
  EstimateEnsemble(std::vector<double> estimates, std::vector<std::uint64_t> seeds);

  static EstimateEnsemble constant(double value, std::vector<std::uint64_t> seeds);

  const std::vector<double>& estimates() const { return estimates_; }
  const std::vector<std::uint64_t>& seeds() const { return seeds_; }
  std::size_t size() const { return estimates_.size(); }
  double mean() const { return mean_; }
  // Sample standard deviation (n - 1 denominator); exactly 0 when all
  // estimates are identical.
  double stddev() const { return stddev_; }
  bool deterministic() const { return stddev_ == 0.0; }

  // Elementwise combination of ensembles drawn from the same seeds.
  friend EstimateEnsemble operator+(const EstimateEnsemble& a, const EstimateEnsemble& b);
  friend EstimateEnsemble operator-(const EstimateEnsemble& a, const EstimateEnsemble& b);

 private:
  std::vector<double> estimates_;
  std::vector<std::uint64_t> seeds_;
  double mean_ = 0.0;
  double stddev_ = 0.0;
};

struct PidfFeatureResult {
  std::size_t feature = 0;
  InfoValue mi;
  InfoValue fws;
  InfoValue fwr_total;
  std::map<std::size_t, InfoValue> fwr_contributions;
  FeatureSubset max_synergy_set;
  FeatureSubset redundant_set;
  InfoValue mci;
  InfoValue oci;

  // Per-seed series used by significance decisions downstream.
  EstimateEnsemble mi_ensemble;
  EstimateEnsemble fws_ensemble;
  EstimateEnsemble fwr_ensemble;
  // Set when a stochastic estimator yields |fws| < 2 * std(fws).
  bool fws_within_noise = false;

  EstimateEnsemble mci_minus_fwr() const { return (mi_ensemble + fws_ensemble) - fwr_ensemble; }
};

struct DatasetFingerprint {
  std::vector<std::string> feature_names;
  std::string target_name;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
};

struct PidfReport {
  std::vector<PidfFeatureResult> features;
  std::string estimator;
  std::map<std::string, std::string> estimator_config;
  int repetitions = 1;
  double alpha = 0.05;
  double eps_zero = 1e-3;
  Unit unit = Unit::nats;
  DatasetFingerprint dataset;

  PidfReport in_units(Unit target) const;
};

enum class Rationale { non_redundant, ranked_and_compatible, rejected_redundant };

const char* to_string(Rationale r);

struct FeatureDecision {
  Rationale rationale = Rationale::rejected_redundant;
  FeatureSubset blocking;  // set only for rejected_redundant
};

struct SelectionResult {
  FeatureSubset selected;
  std::vector<FeatureDecision> decisions;  // one per dataset feature
};

}  // namespace pidf
