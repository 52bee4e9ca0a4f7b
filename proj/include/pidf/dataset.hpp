#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pidf/types.hpp"

namespace pidf {

class ColumnKind {
 public:
  static ColumnKind discrete(int cardinality) { return ColumnKind{cardinality}; }
  static ColumnKind continuous() { return ColumnKind{0}; }

  bool is_discrete() const { return cardinality_ > 0; }
  int cardinality() const { return cardinality_; }
  std::string to_string() const;

  friend bool operator==(const ColumnKind&, const ColumnKind&) = default;

 private:
  explicit ColumnKind(int cardinality) : cardinality_(cardinality) {}
  int cardinality_;
};

struct Column {
  std::string name;
  std::vector<double> values;
  ColumnKind kind = ColumnKind::continuous();
};

// A group of variables taking part in an information quantity: some
// features, optionally together with the target.
struct VarGroup {
  FeatureSubset features;
  bool target = false;

  static VarGroup of(FeatureSubset f) { return {std::move(f), false}; }
  static VarGroup feature(std::size_t i) { return {FeatureSubset{i}, false}; }
  static VarGroup target_only() { return {{}, true}; }

  bool empty() const { return features.empty() && !target; }
  std::string key() const;
};

// Immutable column-major table: features plus one target column.
class Dataset {
 public:
  // Validates every invariant; throws DataError on violation.
  Dataset(std::vector<Column> features, Column target);

  std::size_t n_samples() const { return target_.values.size(); }
  std::size_t n_features() const { return features_.size(); }
  const Column& feature(std::size_t i) const { return features_.at(i); }
  const std::vector<Column>& features() const { return features_; }
  const Column& target() const { return target_; }

  // Columns of a group, features first (ascending) then the target.
  std::vector<const Column*> columns(const VarGroup& group) const;
  bool all_discrete() const;
  std::vector<std::string> feature_names() const;

  Dataset with_appended(Column extra) const;
  Dataset permuted(std::span<const std::size_t> order) const;

 private:
  std::vector<Column> features_;
  Column target_;
};

// Header plus string cells as read from CSV.
struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct ValidateOptions {
  std::string target_name = "target";
  int discrete_cap = 32;
  std::map<std::string, ColumnKind> kind_overrides;
};

// Integer-valued, non-negative columns with max value < cap become
// Discrete(max + 1); everything else is Continuous.
ColumnKind infer_kind(std::span<const double> values, int discrete_cap);

Dataset validate_dataset(const RawTable& table, const ValidateOptions& options = {});

// Appends a copy of feature `index` named "<name>_dup".
Dataset duplicate_feature(const Dataset& data, std::size_t index);

}  // namespace pidf
