#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "helpers.hpp"
#include "pidf/datasets.hpp"
#include "pidf/oracle.hpp"
#include "pidf/pidf.hpp"

namespace pidf {
namespace {

using testing::dataset_from_columns;
using testing::random_discrete_dataset;

constexpr double kLn2 = std::numbers::ln2;

Dataset gen(DatasetId id, std::size_t n = 1000, std::uint64_t seed = 0) {
  GeneratorSpec spec;
  spec.id = id;
  spec.n_samples = n;
  spec.seed = seed;
  return generate(spec);
}

EstimateEnsemble five(const std::vector<double>& v) { return EstimateEnsemble(v, {1, 2, 3, 4, 5}); }

void expect_identities(const PidfReport& report) {
  for (const auto& f : report.features) {
    EXPECT_NEAR(f.mci.value, f.mi.value + f.fws.value, 1e-9) << "feature " << f.feature;
    EXPECT_NEAR(f.oci.value, f.mci.value - f.fwr_total.value, 1e-9) << "feature " << f.feature;
    double sum = 0.0;
    for (const auto& [j, v] : f.fwr_contributions) {
      sum += v.value;
      EXPECT_GE(v.value, 0.0);
      EXPECT_NE(j, f.feature);
    }
    EXPECT_NEAR(f.fwr_total.value, sum, 1e-12);
    EXPECT_FALSE(f.max_synergy_set.contains(f.feature));
  }
}

// ---- theta ------------------------------------------------------------------

TEST(Theta, RvqWithContextIsZero) {
  EXPECT_NEAR(theta(gen(DatasetId::rvq), 0, 1, FeatureSubset{2}, EstimatorConfig{}).mean(), 0.0, 0.02);
}

TEST(Theta, SvqSynergyIsPositive) {
  EXPECT_NEAR(theta(gen(DatasetId::svq), 0, 1, FeatureSubset{}, EstimatorConfig{}).mean(), kLn2, 0.02);
}

TEST(Theta, DuplicateAttainsLowerBound) {
  Rng rng(1);
  std::vector<int> f(20000);
  for (auto& v : f) v = rng.bernoulli(0.5);
  const Dataset d = dataset_from_columns({f, f, f}, {2, 2, 2});
  const double t = theta(d, 0, 1, FeatureSubset{}, EstimatorConfig{}).mean();
  EXPECT_NEAR(t, -oracle_mi(JointTable::from_dataset(d), {0}, {1}), 1e-12);
  EXPECT_NEAR(t, -kLn2, 1e-3);
}

TEST(Theta, MatchesDefinitionPerSeed) {
  const Dataset d = random_discrete_dataset(5, 4, 3, 500);
  MiEngine engine(d, EstimatorConfig{});
  const FeatureSubset c{2, 3};
  const double expected = (engine.target_mi({0, 1, 2, 3}).mean() - engine.target_mi({1, 2, 3}).mean()) -
                          (engine.target_mi({0, 2, 3}).mean() - engine.target_mi(c).mean());
  EXPECT_NEAR(theta(engine, 0, 1, c).mean(), expected, 1e-12);
}

TEST(Theta, RejectsBadArguments) {
  const Dataset d = gen(DatasetId::rvq, 100);
  EXPECT_ANY_THROW(theta(d, 0, 0, FeatureSubset{}, EstimatorConfig{}));
  EXPECT_ANY_THROW(theta(d, 0, 1, FeatureSubset{1}, EstimatorConfig{}));
  EXPECT_THROW(theta(d, 0, 5, FeatureSubset{}, EstimatorConfig{}), DataError);
}

// ---- is_redundant -------------------------------------------------------------

TEST(IsRedundant, SpecExamples) {
  EXPECT_EQ(is_redundant(five({-0.7, -0.69, -0.71, -0.70, -0.70}), 0.05, 1e-3), Verdict::redundant);
  EXPECT_EQ(is_redundant(EstimateEnsemble::constant(0.0, {1, 2, 3, 4, 5}), 0.05, 1e-3), Verdict::not_redundant);
  EXPECT_EQ(is_redundant(five({-0.1, 0.2, -0.05, 0.15, 0.0}), 0.05, 1e-3), Verdict::not_redundant);
}

TEST(IsRedundant, DeterministicUsesEpsZero) {
  EXPECT_EQ(is_redundant(EstimateEnsemble::constant(-0.0005, {1}), 0.05, 1e-3), Verdict::not_redundant);
  EXPECT_EQ(is_redundant(EstimateEnsemble::constant(-0.002, {1}), 0.05, 1e-3), Verdict::redundant);
}

// ---- run_pidf -----------------------------------------------------------------

TEST(RunPidf, RvqWorkedExample) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PidfRun run = run_pidf(gen(DatasetId::rvq, 1000, seed), PidfConfig{});
    const auto& f = run.report.features;
    ASSERT_EQ(f.size(), 3u);
    EXPECT_NEAR(f[0].mi.value, kLn2, 0.02);
    EXPECT_NEAR(f[0].fws.value, 0.0, 0.02);
    EXPECT_NEAR(f[0].fwr_total.value, 0.0, 0.02);
    EXPECT_TRUE(f[0].redundant_set.empty()) << f[0].redundant_set.to_string();
    for (std::size_t i : {1u, 2u}) {
      const std::size_t other = 3 - i;
      EXPECT_NEAR(f[i].mi.value, kLn2, 0.02);
      EXPECT_NEAR(f[i].fwr_total.value, kLn2, 0.02);
      EXPECT_EQ(f[i].redundant_set, FeatureSubset{other});
      ASSERT_TRUE(f[i].fwr_contributions.contains(other));
      EXPECT_NEAR(f[i].fwr_contributions.at(other).value, kLn2, 0.02);
    }
    expect_identities(run.report);
  }
}

TEST(RunPidf, SvqSynergy) {
  const PidfRun run = run_pidf(gen(DatasetId::svq), PidfConfig{});
  for (std::size_t i : {0u, 1u}) {
    const auto& f = run.report.features[i];
    EXPECT_NEAR(f.mi.value, 0.0, 0.02);
    EXPECT_NEAR(f.fws.value, kLn2, 0.02);
    EXPECT_NEAR(f.fwr_total.value, 0.0, 0.02);
    EXPECT_EQ(f.max_synergy_set, FeatureSubset{1 - i});
  }
}

TEST(RunPidf, SingleFeature) {
  Rng rng(2);
  std::vector<int> x(500), y(500);
  for (std::size_t r = 0; r < x.size(); ++r) {
    x[r] = rng.bernoulli(0.5);
    y[r] = rng.uniform() < 0.9 ? x[r] : 1 - x[r];
  }
  const Dataset d = dataset_from_columns({x, y}, {2, 2});
  const PidfRun run = run_pidf(d, PidfConfig{});
  const auto& f = run.report.features.at(0);
  EXPECT_EQ(f.fws.value, 0.0);
  EXPECT_EQ(f.fwr_total.value, 0.0);
  EXPECT_TRUE(f.max_synergy_set.empty());
  EXPECT_NEAR(f.mi.value, oracle_mi(JointTable::from_dataset(d), {1}, {0}), 1e-12);
}

TEST(RunPidf, TraceOrderIsDescendingPairwiseMi) {
  const PidfRun run = run_pidf(gen(DatasetId::terc2), PidfConfig{});
  for (const auto& t : run.trace.features) {
    for (std::size_t k = 1; k < t.candidate_order.size(); ++k) {
      EXPECT_GE(t.candidate_mi[k - 1], t.candidate_mi[k]);
      if (t.candidate_mi[k - 1] == t.candidate_mi[k]) EXPECT_LT(t.candidate_order[k - 1], t.candidate_order[k]);
    }
    for (const auto& e : t.evaluations) {
      EXPECT_FALSE(e.context.contains(e.feature));
      EXPECT_FALSE(e.context.contains(e.candidate));
    }
  }
}

TEST(RunPidf, IdentitiesAndNonNegativeFwsUnderExact) {
  for (auto id : {DatasetId::rvq, DatasetId::svq, DatasetId::msq, DatasetId::terc1, DatasetId::terc2, DatasetId::sg}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const PidfReport r = run_pidf(gen(id, 1000, seed), PidfConfig{}).report;
      expect_identities(r);
      for (const auto& f : r.features) EXPECT_GE(f.fws.value, 0.0) << to_string(id) << " seed " << seed;
    }
  }
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const PidfReport r = run_pidf(random_discrete_dataset(seed, 5, 3, 400), PidfConfig{}).report;
    expect_identities(r);
    for (const auto& f : r.features) EXPECT_GE(f.fws.value, 0.0) << "random seed " << seed;
  }
}

TEST(RunPidf, ParallelMatchesSerialReference) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Dataset d = random_discrete_dataset(seed, 6, 3, 500);
    const auto a = run_pidf(d, PidfConfig{}).report;
    const auto b = run_pidf_serial(d, PidfConfig{}).report;
    for (std::size_t i = 0; i < d.n_features(); ++i) {
      EXPECT_EQ(a.features[i].fws_ensemble.estimates(), b.features[i].fws_ensemble.estimates());
      EXPECT_EQ(a.features[i].fwr_total.value, b.features[i].fwr_total.value);
      EXPECT_EQ(a.features[i].max_synergy_set, b.features[i].max_synergy_set);
    }
  }
  PidfConfig ksg;
  ksg.estimator.kind = EstimatorKind::ksg;
  const Dataset wt = gen(DatasetId::wt, 300, 1);
  const auto a = run_pidf(wt, ksg).report;
  const auto b = run_pidf_serial(wt, ksg).report;
  for (std::size_t i = 0; i < wt.n_features(); ++i) {
    EXPECT_EQ(a.features[i].mi_ensemble.estimates(), b.features[i].mi_ensemble.estimates());
    EXPECT_EQ(a.features[i].fws_ensemble.estimates(), b.features[i].fws_ensemble.estimates());
    EXPECT_EQ(a.features[i].fwr_ensemble.estimates(), b.features[i].fwr_ensemble.estimates());
  }
}

TEST(RunPidf, PermutationEquivariance) {
  const std::vector<std::size_t> order{3, 0, 4, 1, 2};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Dataset d = random_discrete_dataset(seed, 5, 3, 400);
    const auto base = run_pidf(d, PidfConfig{}).report;
    const auto perm = run_pidf(d.permuted(order), PidfConfig{}).report;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const auto& p = perm.features[k];
      const auto& o = base.features[order[k]];
      EXPECT_NEAR(p.mi.value, o.mi.value, 1e-12);
      EXPECT_NEAR(p.fws.value, o.fws.value, 1e-12) << "seed " << seed;
      EXPECT_NEAR(p.fwr_total.value, o.fwr_total.value, 1e-12) << "seed " << seed;
      std::vector<std::size_t> mapped;
      for (std::size_t j : p.redundant_set) mapped.push_back(order[j]);
      EXPECT_EQ(FeatureSubset(mapped), o.redundant_set);
    }
  }
}

TEST(RunPidf, DeterministicGivenSeed) {
  PidfConfig cfg;
  cfg.estimator.kind = EstimatorKind::ksg;
  cfg.estimator.seed = 4;
  const Dataset wt = gen(DatasetId::wt, 300, 2);
  const auto a = run_pidf(wt, cfg).report;
  const auto b = run_pidf(wt, cfg).report;
  for (std::size_t i = 0; i < wt.n_features(); ++i) {
    EXPECT_EQ(a.features[i].mci_minus_fwr().estimates(), b.features[i].mci_minus_fwr().estimates());
  }
}

// ---- brute force and oracle agreement ------------------------------------------

TEST(BruteForceFws, AppendixAMaximizers) {
  const Dataset d = appendix_a_dataset(4000, 3);
  const FwsSearch s = brute_force_fws(d, 0, EstimatorConfig{});
  EXPECT_EQ(s.maximizers, (std::vector<FeatureSubset>{{1}, {3}, {1, 3}}));
  const auto oracle = oracle_pidf(JointTable::from_dataset(d));
  EXPECT_NEAR(s.value, oracle[0].fws, 1e-9);
  EXPECT_NEAR(s.value, 0.5 * kLn2, 0.02);
}

TEST(BruteForceFws, RvqFirstFeatureHasNoSynergy) {
  const FwsSearch s = brute_force_fws(gen(DatasetId::rvq), 0, EstimatorConfig{});
  EXPECT_NEAR(s.value, 0.0, 1e-12);
  EXPECT_EQ(s.maximizers.front(), FeatureSubset{});
}

TEST(BruteForceFws, AgreesWithOracleOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Dataset d = random_discrete_dataset(seed, 4, 3, 300);
    const auto oracle = oracle_pidf(JointTable::from_dataset(d));
    for (std::size_t i = 0; i < d.n_features(); ++i) {
      EXPECT_NEAR(brute_force_fws(d, i, EstimatorConfig{}).value, oracle[i].fws, 1e-9);
    }
  }
}

TEST(BruteForceFws, CapEnforced) {
  const Dataset d = random_discrete_dataset(1, 5, 2, 50);
  EXPECT_THROW(brute_force_fws(d, 0, EstimatorConfig{}, 4), OracleCapError);
}

// Heuristic FWS against the exhaustive maximum. The TERC datasets are left
// out: their copy features leave theta exactly zero, which keeps the copy in
// the synergy set and pins the heuristic below the true maximum.
TEST(OracleAgreement, BenchmarkDatasets) {
  for (auto id : {DatasetId::rvq, DatasetId::svq, DatasetId::msq, DatasetId::sg}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Dataset d = gen(id, 1000, seed);
      const auto oracle = oracle_pidf(JointTable::from_dataset(d));
      const auto report = run_pidf(d, PidfConfig{}).report;
      for (std::size_t i = 0; i < d.n_features(); ++i) {
        EXPECT_NEAR(report.features[i].fws.value, oracle[i].fws, 0.02)
            << to_string(id) << " seed " << seed << " feature " << i;
        EXPECT_GE(oracle[i].fws, report.features[i].fws.value - 0.02);
      }
    }
  }
}

TEST(OracleAgreement, HeuristicNeverExceedsMaximumOnTerc) {
  for (auto id : {DatasetId::terc1, DatasetId::terc2}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Dataset d = gen(id, 1000, seed);
      const auto oracle = oracle_pidf(JointTable::from_dataset(d));
      const auto report = run_pidf(d, PidfConfig{}).report;
      for (std::size_t i = 0; i < d.n_features(); ++i) {
        EXPECT_GE(oracle[i].fws, report.features[i].fws.value - 0.02) << to_string(id) << " feature " << i;
      }
    }
  }
}

}  // namespace
}  // namespace pidf
