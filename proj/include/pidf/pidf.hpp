#pragma once

#include <cstddef>
#include <vector>

#include "pidf/dataset.hpp"
#include "pidf/estimators.hpp"
#include "pidf/types.hpp"

namespace pidf {

// How "I(F_i;F_j) > 0" is decided when collecting a feature's redundant set.
//   threshold: the shared rule (deterministic mean > eps_zero, otherwise a
//              one-sided t-test at alpha).
//   g_test:    threshold, and for plug-in estimates additionally a G-test of
//              independence (2 n I ~ chi2 with (|A|-1)(|B|-1) dof) at
//              alpha / (n_features - 1), Bonferroni-corrected over the
//              candidates of one feature.
enum class PairwiseTest { threshold, g_test };

struct PidfConfig {
  EstimatorConfig estimator;
  double alpha = 0.05;
  double eps_zero = 1e-3;
  PairwiseTest pairwise_test = PairwiseTest::g_test;
  // Run the per-feature passes on OpenMP threads.
  bool parallel = true;
  // Recorded in the report fingerprint (the seed the data was generated with).
  std::uint64_t data_seed = 0;

  void validate() const;
};

enum class Verdict { redundant, not_redundant };

const char* to_string(Verdict v);

struct ThetaEvaluation {
  std::size_t feature = 0;
  std::size_t candidate = 0;
  FeatureSubset context;
  EstimateEnsemble theta;
  Verdict verdict = Verdict::not_redundant;
};

struct FeatureTrace {
  std::size_t feature = 0;
  std::vector<std::size_t> candidate_order;
  std::vector<double> candidate_mi;  // mean I(F_i;F_j), same order
  std::vector<ThetaEvaluation> evaluations;
  std::vector<std::size_t> removed;
};

struct PidfTrace {
  std::vector<FeatureTrace> features;
};

struct PidfRun {
  PidfReport report;
  PidfTrace trace;
};

// Per seed r:
//   theta_r = [I(Y; F_i, C, F_j) - I(Y; C, F_j)] - [I(Y; F_i, C) - I(Y; C)]
// where C is the context. Negative values mean F_j carries information
// about Y that F_i already provides. Evaluated as the difference of the two
// conditional gains I(Y;F_i|C,F_j) - I(Y;F_i|C) (see MiEngine::gain).
EstimateEnsemble theta(MiEngine& engine, std::size_t i, std::size_t j, const FeatureSubset& context);
EstimateEnsemble theta(const Dataset& data, std::size_t i, std::size_t j, const FeatureSubset& context,
                       const EstimatorConfig& cfg);

// Redundant only when theta is significantly below zero. A theta of exactly
// zero keeps the candidate.
Verdict is_redundant(const EstimateEnsemble& theta, double alpha, double eps_zero);

// I(Y; F_i; S) = I(Y; F_i, S) - I(Y; S) - I(Y; F_i), per seed.
EstimateEnsemble interaction_information(MiEngine& engine, std::size_t i, const FeatureSubset& s);

// Runs every feature's pass; the outer loop is spread over OpenMP threads
// when cfg.parallel is set. The result does not depend on the thread count.
PidfRun run_pidf(const Dataset& data, const PidfConfig& cfg);
// Reference single-threaded implementation of the same procedure.
PidfRun run_pidf_serial(const Dataset& data, const PidfConfig& cfg);

// One feature's pass against a shared engine.
PidfFeatureResult pidf_feature(MiEngine& engine, std::size_t i, const PidfConfig& cfg, FeatureTrace* trace);

struct FwsSearch {
  double value = 0.0;
  std::vector<FeatureSubset> maximizers;  // ascending by (size, members)
};

// Exhaustive maximum of I(Y; F_i; P) over all subsets P of the other features
// (the empty set included). Throws OracleCapError when n_features > cap.
FwsSearch brute_force_fws(const Dataset& data, std::size_t i, const EstimatorConfig& cfg, std::size_t cap = 15,
                          double tie_tolerance = 1e-9);

}  // namespace pidf
