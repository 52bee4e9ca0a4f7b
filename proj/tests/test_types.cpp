#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "helpers.hpp"
#include "pidf/csv.hpp"
#include "pidf/dataset.hpp"
#include "pidf/types.hpp"

namespace pidf {
namespace {

TEST(Units, ConvertsNatsToBits) {
  EXPECT_NEAR(convert_units(InfoValue::nats(0.693), Unit::bits).value, 1.0, 1e-3);
  EXPECT_EQ(convert_units(InfoValue::nats(0.0), Unit::bits).value, 0.0);
  EXPECT_NEAR(convert_units(InfoValue::nats(1.386), Unit::bits).value, 2.0, 1e-3);
  EXPECT_EQ(convert_units(InfoValue::nats(1.0), Unit::bits).unit, Unit::bits);
}

TEST(Units, RoundTripIsIdentity) {
  for (double v : {1e-9, 0.3, std::numbers::ln2, 17.25, 1e6}) {
    const double back = InfoValue::nats(v).to(Unit::bits).to(Unit::nats).value;
    EXPECT_LE(std::abs(back - v) / v, 1e-12);
  }
}

TEST(Units, ParseRejectsUnknown) {
  EXPECT_EQ(parse_unit("bits"), Unit::bits);
  EXPECT_THROW(parse_unit("bans"), ConfigError);
}

TEST(FeatureSubset, CanonicalSortedUnique) {
  const FeatureSubset s{3, 1, 3, 0};
  EXPECT_EQ(s.indices(), (std::vector<std::size_t>{0, 1, 3}));
  EXPECT_EQ(s.to_string(), "{F0,F1,F3}");
  EXPECT_TRUE(s.contains(3));
  EXPECT_FALSE(s.contains(2));
  EXPECT_EQ(s.with(2), (FeatureSubset{0, 1, 2, 3}));
  EXPECT_EQ(s.without(1), (FeatureSubset{0, 3}));
  EXPECT_EQ(s.unite({5, 1}), (FeatureSubset{0, 1, 3, 5}));
  EXPECT_TRUE(s.intersects({9, 3}));
  EXPECT_FALSE(s.intersects({2, 4}));
  EXPECT_EQ(FeatureSubset::from_mask(0b1010), (FeatureSubset{1, 3}));
  EXPECT_EQ(FeatureSubset::range(3), (FeatureSubset{0, 1, 2}));
}

TEST(FeatureSubset, BoundsChecked) {
  EXPECT_NO_THROW((FeatureSubset{0, 2}.check_bounds(3)));
  EXPECT_THROW((FeatureSubset{0, 3}.check_bounds(3)), DataError);
}

TEST(EstimateEnsemble, MeanAndSampleStd) {
  const EstimateEnsemble e({1.0, 2.0, 3.0, 4.0}, {1, 2, 3, 4});
  EXPECT_NEAR(e.mean(), 2.5, 1e-12);
  EXPECT_NEAR(e.stddev(), std::sqrt(5.0 / 3.0), 1e-12);
  EXPECT_FALSE(e.deterministic());
}

TEST(EstimateEnsemble, ConstantIsExactlyDeterministic) {
  const auto e = EstimateEnsemble::constant(0.1, {1, 2, 3, 4, 5});
  EXPECT_EQ(e.stddev(), 0.0);
  EXPECT_EQ(e.mean(), 0.1);
  EXPECT_TRUE(e.deterministic());
}

TEST(EstimateEnsemble, ArithmeticIsElementwiseAndSeedChecked) {
  const EstimateEnsemble a({1.0, 2.0}, {7, 8});
  const EstimateEnsemble b({0.5, 0.25}, {7, 8});
  EXPECT_EQ((a - b).estimates(), (std::vector<double>{0.5, 1.75}));
  EXPECT_EQ((a + b).estimates(), (std::vector<double>{1.5, 2.25}));
  const EstimateEnsemble c({0.5, 0.25}, {7, 9});
  EXPECT_THROW(a + c, EstimatorError);
}

RawTable table(std::vector<std::string> header, std::vector<std::vector<std::string>> rows) {
  return RawTable{std::move(header), std::move(rows)};
}

TEST(ValidateDataset, InfersDiscreteBinaryColumns) {
  RawTable t{{"f0", "f1", "f2", "target"}, {}};
  Rng rng(3);
  for (int r = 0; r < 1000; ++r) {
    t.rows.push_back({std::to_string(rng.bernoulli(0.5)), std::to_string(rng.bernoulli(0.5)),
                      std::to_string(rng.bernoulli(0.5)), std::to_string(rng.bernoulli(0.5))});
  }
  const Dataset d = validate_dataset(t);
  EXPECT_EQ(d.n_features(), 3u);
  EXPECT_EQ(d.n_samples(), 1000u);
  for (const auto& c : d.features()) EXPECT_EQ(c.kind, ColumnKind::discrete(2));
  EXPECT_EQ(d.target().name, "target");
}

TEST(ValidateDataset, MissingCellIsRagged) {
  const auto t = table({"f0", "target"}, {{"1", "0"}, {"", "1"}});
  try {
    validate_dataset(t);
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("ragged column"), std::string::npos);
  }
  std::istringstream csv("f0,target\n1,0\n1\n");
  try {
    validate_dataset(parse_csv(csv));
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("ragged column"), std::string::npos);
  }
}

TEST(ValidateDataset, RealColumnIsContinuous) {
  const auto d = validate_dataset(table({"f0", "f1", "target"}, {{"0.5", "1", "0"}, {"-1.25", "0", "1"}}));
  EXPECT_FALSE(d.feature(0).kind.is_discrete());
  EXPECT_EQ(d.feature(1).kind, ColumnKind::discrete(2));
}

TEST(ValidateDataset, CapAndOverrides) {
  RawTable t{{"f0", "target"}, {}};
  for (int r = 0; r < 40; ++r) t.rows.push_back({std::to_string(r), "0"});
  EXPECT_FALSE(validate_dataset(t).feature(0).kind.is_discrete());
  ValidateOptions opts;
  opts.discrete_cap = 64;
  EXPECT_EQ(validate_dataset(t, opts).feature(0).kind, ColumnKind::discrete(40));
  opts.discrete_cap = 32;
  opts.kind_overrides.insert_or_assign("f0", ColumnKind::continuous());
  RawTable small{{"f0", "target"}, {{"1", "0"}, {"0", "1"}}};
  EXPECT_FALSE(validate_dataset(small, opts).feature(0).kind.is_discrete());
}

TEST(ValidateDataset, RejectsMalformedTables) {
  EXPECT_THROW(validate_dataset(table({"f0", "f0", "target"}, {{"1", "0", "1"}})), DataError);
  EXPECT_THROW(validate_dataset(table({"f0", "target"}, {})), DataError);
  EXPECT_THROW(validate_dataset(table({"f0", "target"}, {{"abc", "1"}})), DataError);
  EXPECT_THROW(validate_dataset(table({"f0", "y"}, {{"1", "1"}})), DataError);
  EXPECT_THROW(validate_dataset(table({"target"}, {{"1"}})), DataError);
  ValidateOptions opts;
  opts.target_name = "y";
  EXPECT_NO_THROW(validate_dataset(table({"f0", "y"}, {{"1", "1"}}), opts));
}

TEST(Dataset, ConstructorEnforcesInvariants) {
  using testing::discrete_column;
  EXPECT_THROW(Dataset({discrete_column("a", {0, 1}, 2)}, discrete_column("t", {0}, 2)), DataError);
  EXPECT_THROW(Dataset({discrete_column("a", {0, 2}, 2)}, discrete_column("t", {0, 1}, 2)), DataError);
  EXPECT_THROW(Dataset({discrete_column("t", {0, 1}, 2)}, discrete_column("t", {0, 1}, 2)), DataError);
  EXPECT_THROW(Dataset({}, Column{"t", {}, ColumnKind::continuous()}), DataError);
}

TEST(Csv, ParsesCrlfAndBlankLines) {
  std::istringstream in("f0,target\r\n1,0\r\n\r\n0,1\r\n");
  const auto t = parse_csv(in);
  EXPECT_EQ(t.header, (std::vector<std::string>{"f0", "target"}));
  EXPECT_EQ(t.rows.size(), 2u);
}

TEST(Csv, MissingFileIsIngestionError) { EXPECT_THROW(read_csv("/nonexistent/dir/x.csv"), DataError); }

TEST(Csv, NumbersRoundTripExactly) {
  for (double v : {0.1, -1.0 / 3.0, 1e-300, 123456789.125, 0.0}) {
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
}

}  // namespace
}  // namespace pidf
