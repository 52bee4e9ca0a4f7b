#include "pidf/plugin.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pidf {

namespace {

// Relabels arbitrary 64-bit keys to 0..k-1 in ascending key order.
std::vector<std::uint32_t> densify(const std::vector<std::uint64_t>& keys) {
  std::vector<std::uint64_t> sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::uint32_t> out(keys.size());
  for (std::size_t r = 0; r < keys.size(); ++r) {
    out[r] = static_cast<std::uint32_t>(std::lower_bound(sorted.begin(), sorted.end(), keys[r]) - sorted.begin());
  }
  return out;
}

}  // namespace

std::vector<std::uint32_t> joint_codes(std::span<const Column* const> columns) {
  if (columns.empty()) throw EstimatorError("joint_codes: empty column group");
  const std::size_t n = columns.front()->values.size();
  std::vector<std::uint32_t> codes(n, 0);
  std::vector<std::uint64_t> keys(n);
  for (const Column* c : columns) {
    if (!c->kind.is_discrete()) {
      throw EstimatorError("exact plug-in estimation requires discrete columns; '" + c->name + "' is continuous");
    }
    const auto card = static_cast<std::uint64_t>(c->kind.cardinality());
    for (std::size_t r = 0; r < n; ++r) {
      keys[r] = static_cast<std::uint64_t>(codes[r]) * card + static_cast<std::uint64_t>(c->values[r]);
    }
    codes = densify(keys);
  }
  return codes;
}

double plugin_entropy(std::span<const std::uint32_t> codes) {
  if (codes.empty()) return 0.0;
  const std::size_t k = support_size(codes);
  std::vector<std::size_t> counts(k, 0);
  for (auto c : codes) ++counts[c];
  std::sort(counts.begin(), counts.end());
  const double n = static_cast<double>(codes.size());
  double h = 0.0;
  for (std::size_t c : counts) {
    const double p = static_cast<double>(c) / n;
    h -= p * std::log(p);
  }
  return h;
}

std::size_t support_size(std::span<const std::uint32_t> codes) {
  if (codes.empty()) return 0;
  return static_cast<std::size_t>(*std::max_element(codes.begin(), codes.end())) + 1;
}

double plugin_entropy(const Dataset& data, const VarGroup& group) {
  if (group.empty()) return 0.0;
  const auto cols = data.columns(group);
  return plugin_entropy(joint_codes(cols));
}

double plugin_mi(const Dataset& data, const VarGroup& a, const VarGroup& b) {
  if (a.empty() || b.empty()) return 0.0;
  const auto ca = data.columns(a);
  const auto cb = data.columns(b);
  std::vector<const Column*> both = ca;
  both.insert(both.end(), cb.begin(), cb.end());
  const double mi = plugin_entropy(joint_codes(ca)) + plugin_entropy(joint_codes(cb)) - plugin_entropy(joint_codes(both));
  return std::max(0.0, mi);
}

std::vector<double> equal_frequency_bins(std::span<const double> values, int bins) {
  if (bins < 2) throw ConfigError("binned estimator needs at least 2 bins");
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> out(n);
  std::size_t group_start = 0;
  for (std::size_t rank = 0; rank < n; ++rank) {
    if (rank > 0 && values[order[rank]] != values[order[rank - 1]]) group_start = rank;
    out[order[rank]] = static_cast<double>(group_start * static_cast<std::size_t>(bins) / n);
  }
  return out;
}

Dataset binned_dataset(const Dataset& data, int bins) {
  auto bin_column = [&](Column c) {
    if (!c.kind.is_discrete()) {
      c.values = equal_frequency_bins(c.values, bins);
      c.kind = ColumnKind::discrete(bins);
    }
    return c;
  };
  std::vector<Column> features;
  for (const auto& c : data.features()) features.push_back(bin_column(c));
  return Dataset(std::move(features), bin_column(data.target()));
}

}  // namespace pidf
