#include "pidf/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

namespace pidf {

std::string ColumnKind::to_string() const {
  return is_discrete() ? "discrete(" + std::to_string(cardinality_) + ")" : "continuous";
}

std::string VarGroup::key() const {
  std::string k = target ? "Y" : "";
  for (std::size_t i : features) k += "," + std::to_string(i);
  return k;
}

namespace {

void check_column(const Column& c, std::size_t n) {
  if (c.values.size() != n) {
    throw DataError("ragged column '" + c.name + "': " + std::to_string(c.values.size()) +
                    " entries, expected " + std::to_string(n));
  }
  if (!c.kind.is_discrete()) return;
  for (double v : c.values) {
    if (!(v >= 0.0) || v >= c.kind.cardinality() || v != std::floor(v)) {
      throw DataError("discrete column '" + c.name + "' holds value outside {0.." +
                      std::to_string(c.kind.cardinality() - 1) + "}");
    }
  }
}

}  // namespace

Dataset::Dataset(std::vector<Column> features, Column target)
    : features_(std::move(features)), target_(std::move(target)) {
  const std::size_t n = target_.values.size();
  if (n == 0) throw DataError("empty table: no samples");
  std::set<std::string> names{target_.name};
  for (const auto& c : features_) {
    if (!names.insert(c.name).second) throw DataError("duplicate column name '" + c.name + "'");
    check_column(c, n);
  }
  check_column(target_, n);
}

std::vector<const Column*> Dataset::columns(const VarGroup& group) const {
  group.features.check_bounds(n_features());
  std::vector<const Column*> out;
  out.reserve(group.features.size() + 1);
  for (std::size_t i : group.features) out.push_back(&features_[i]);
  if (group.target) out.push_back(&target_);
  return out;
}

bool Dataset::all_discrete() const {
  return target_.kind.is_discrete() &&
         std::all_of(features_.begin(), features_.end(), [](const Column& c) { return c.kind.is_discrete(); });
}

std::vector<std::string> Dataset::feature_names() const {
  std::vector<std::string> out;
  for (const auto& c : features_) out.push_back(c.name);
  return out;
}

Dataset Dataset::with_appended(Column extra) const {
  auto cols = features_;
  cols.push_back(std::move(extra));
  return Dataset(std::move(cols), target_);
}

Dataset Dataset::permuted(std::span<const std::size_t> order) const {
  if (order.size() != features_.size()) throw DataError("permutation size mismatch");
  std::vector<Column> cols;
  for (std::size_t i : order) cols.push_back(features_.at(i));
  return Dataset(std::move(cols), target_);
}

ColumnKind infer_kind(std::span<const double> values, int discrete_cap) {
  double max_value = 0.0;
  for (double v : values) {
    if (!(v >= 0.0) || v != std::floor(v)) return ColumnKind::continuous();
    max_value = std::max(max_value, v);
  }
  if (max_value + 1.0 > discrete_cap) return ColumnKind::continuous();
  return ColumnKind::discrete(static_cast<int>(max_value) + 1);
}

namespace {

double parse_cell(const std::string& cell, const std::string& column, std::size_t row) {
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  while (first < last && (*first == ' ' || *first == '\t')) ++first;
  while (last > first && (last[-1] == ' ' || last[-1] == '\t' || last[-1] == '\r')) --last;
  if (first == last) {
    throw DataError("ragged column '" + column + "': missing cell at row " + std::to_string(row + 1));
  }
  if (*first == '+') ++first;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
    throw DataError("non-numeric cell '" + cell + "' in column '" + column + "' at row " +
                    std::to_string(row + 1));
  }
  return value;
}

}  // namespace

Dataset validate_dataset(const RawTable& table, const ValidateOptions& options) {
  if (table.header.empty() || table.rows.empty()) throw DataError("empty table");
  const std::size_t width = table.header.size();
  std::vector<std::vector<double>> columns(width);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row.size() != width) {
      const std::size_t c = std::min(row.size(), width - 1);
      throw DataError("ragged column '" + table.header[c] + "': row " + std::to_string(r + 1) + " has " +
                      std::to_string(row.size()) + " cells, expected " + std::to_string(width));
    }
    for (std::size_t c = 0; c < width; ++c) columns[c].push_back(parse_cell(row[c], table.header[c], r));
  }

  std::optional<Column> target;
  std::vector<Column> features;
  std::set<std::string> seen;
  for (std::size_t c = 0; c < width; ++c) {
    const auto& name = table.header[c];
    if (!seen.insert(name).second) throw DataError("duplicate column name '" + name + "'");
    Column col{name, std::move(columns[c]), ColumnKind::continuous()};
    auto it = options.kind_overrides.find(name);
    col.kind = it != options.kind_overrides.end() ? it->second : infer_kind(col.values, options.discrete_cap);
    if (name == options.target_name) {
      target = std::move(col);
    } else {
      features.push_back(std::move(col));
    }
  }
  if (!target) throw DataError("target column '" + options.target_name + "' not found");
  if (features.empty()) throw DataError("table has no feature columns");
  return Dataset(std::move(features), std::move(*target));
}

Dataset duplicate_feature(const Dataset& data, std::size_t index) {
  if (index >= data.n_features()) {
    throw DataError("cannot duplicate feature " + std::to_string(index) + ": dataset has " +
                    std::to_string(data.n_features()) + " features");
  }
  Column copy = data.feature(index);
  std::string name = copy.name + "_dup";
  const auto names = data.feature_names();
  for (int k = 2; std::find(names.begin(), names.end(), name) != names.end(); ++k) {
    name = copy.name + "_dup" + std::to_string(k);
  }
  copy.name = std::move(name);
  return data.with_appended(std::move(copy));
}

}  // namespace pidf
