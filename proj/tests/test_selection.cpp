#include <gtest/gtest.h>

#include "pidf/datasets.hpp"
#include "pidf/pidf.hpp"
#include "pidf/selection.hpp"

namespace pidf {
namespace {

Dataset gen(DatasetId id, std::size_t n = 1000, std::uint64_t seed = 0) {
  GeneratorSpec spec;
  spec.id = id;
  spec.n_samples = n;
  spec.seed = seed;
  return generate(spec);
}

SelectionResult select(const Dataset& d) {
  PidfConfig cfg;
  return select_features(run_pidf(d, cfg).report, cfg.alpha, cfg.eps_zero);
}

// Deterministic feature with the given MCI, FWR and redundant set.
PidfFeatureResult feature(std::size_t i, double mi, double fwr, FeatureSubset redundant) {
  const std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  PidfFeatureResult f;
  f.feature = i;
  f.mi = InfoValue::nats(mi);
  f.mci = InfoValue::nats(mi);
  f.fwr_total = InfoValue::nats(fwr);
  f.oci = InfoValue::nats(mi - fwr);
  f.redundant_set = std::move(redundant);
  for (std::size_t j : f.redundant_set) f.fwr_contributions[j] = InfoValue::nats(fwr / f.redundant_set.size());
  f.mi_ensemble = EstimateEnsemble::constant(mi, seeds);
  f.fws_ensemble = EstimateEnsemble::constant(0.0, seeds);
  f.fwr_ensemble = EstimateEnsemble::constant(fwr, seeds);
  return f;
}

TEST(SelectFeatures, RvqWorkedExampleFromSyntheticReport) {
  PidfReport r;
  r.features = {feature(0, 0.693, 0.0, {}), feature(1, 0.693, 0.693, {2}), feature(2, 0.693, 0.693, {1})};
  const auto s = select_features(r, 0.05, 1e-3);
  EXPECT_EQ(s.selected, (FeatureSubset{0, 1}));
  EXPECT_EQ(s.decisions[0].rationale, Rationale::non_redundant);
  EXPECT_EQ(s.decisions[1].rationale, Rationale::ranked_and_compatible);
  EXPECT_EQ(s.decisions[2].rationale, Rationale::rejected_redundant);
  EXPECT_EQ(s.decisions[2].blocking, FeatureSubset{1});
}

TEST(SelectFeatures, Phase2OrderIsDescendingMciThenIndex) {
  PidfReport r;
  r.features = {feature(0, 0.3, 0.3, {2}), feature(1, 0.5, 0.5, {0}), feature(2, 0.5, 0.5, {0, 1})};
  const auto s = select_features(r, 0.05, 1e-3);
  // F1 goes first (highest MCI, lower index than F2), F2 is then blocked by
  // F1 and F0 by nobody selected among {F2}.
  EXPECT_EQ(s.selected, (FeatureSubset{0, 1}));
  EXPECT_EQ(s.decisions[2].blocking, FeatureSubset{1});
}

TEST(SelectFeatures, StochasticPhase1UsesTTest) {
  PidfReport r;
  PidfFeatureResult f = feature(0, 0.1, 0.0, {});
  f.mi_ensemble = EstimateEnsemble({0.10, 0.11, 0.09, 0.10, 0.12}, {1, 2, 3, 4, 5});
  PidfFeatureResult g = feature(1, 0.0, 0.0, {0});
  g.mi_ensemble = EstimateEnsemble({0.02, -0.03, 0.01, -0.02, 0.0}, {1, 2, 3, 4, 5});
  r.features = {f, g};
  const auto s = select_features(r, 0.05, 1e-3);
  EXPECT_EQ(s.decisions[0].rationale, Rationale::non_redundant);
  EXPECT_EQ(s.decisions[1].rationale, Rationale::rejected_redundant);
  EXPECT_EQ(s.selected, FeatureSubset{0});
}

TEST(SelectFeatures, RvqSvqMsqFromData) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    EXPECT_EQ(select(gen(DatasetId::rvq, 1000, seed)).selected, (FeatureSubset{0, 1})) << seed;
    const auto svq = select(gen(DatasetId::svq, 1000, seed));
    EXPECT_EQ(svq.selected, (FeatureSubset{0, 1}));
    EXPECT_EQ(svq.decisions[0].rationale, Rationale::non_redundant);
    EXPECT_EQ(svq.decisions[1].rationale, Rationale::non_redundant);
    const auto msq = select(gen(DatasetId::msq, 1000, seed));
    EXPECT_EQ(confusion_counts(msq, FeatureSubset{0}, 3), (ConfusionCounts{1, 0, 2, 0})) << msq.selected.to_string();
  }
}

TEST(SelectFeatures, Invariants) {
  for (auto id : {DatasetId::rvq, DatasetId::msq, DatasetId::terc1, DatasetId::terc2, DatasetId::sg}) {
    PidfConfig cfg;
    const PidfReport report = run_pidf(gen(id, 1000, 1), cfg).report;
    const auto s = select_features(report, cfg.alpha, cfg.eps_zero);
    ASSERT_EQ(s.decisions.size(), report.features.size());
    for (std::size_t i = 0; i < s.decisions.size(); ++i) {
      const auto& d = s.decisions[i];
      if (d.rationale == Rationale::non_redundant) EXPECT_TRUE(s.selected.contains(i));
      if (d.rationale == Rationale::ranked_and_compatible) EXPECT_TRUE(s.selected.contains(i));
      if (d.rationale == Rationale::rejected_redundant) {
        EXPECT_FALSE(s.selected.contains(i));
        EXPECT_FALSE(d.blocking.empty());
        for (std::size_t b : d.blocking) {
          EXPECT_TRUE(s.selected.contains(b));
          EXPECT_TRUE(report.features[i].redundant_set.contains(b));
        }
      }
    }
    const auto again = select_features(report, cfg.alpha, cfg.eps_zero);
    EXPECT_EQ(again.selected, s.selected);
  }
}

TEST(ConfusionCounts, SpecExamples) {
  EXPECT_EQ(confusion_counts(FeatureSubset{0, 1}, FeatureSubset{0, 1}, 3), (ConfusionCounts{2, 0, 1, 0}));
  EXPECT_EQ(confusion_counts(FeatureSubset{}, FeatureSubset{}, 4), (ConfusionCounts{0, 0, 4, 0}));
  EXPECT_EQ(confusion_counts(FeatureSubset{0}, FeatureSubset{1}, 2), (ConfusionCounts{0, 1, 0, 1}));
}

}  // namespace
}  // namespace pidf
