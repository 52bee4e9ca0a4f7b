#include "pidf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>

namespace pidf {

JointTable JointTable::from_rows(const std::vector<Outcome>& rows) {
  if (rows.empty()) throw DataError("oracle: empty table");
  const std::size_t width = rows.front().size();
  if (width < 1) throw DataError("oracle: rows need at least a target column");
  std::map<Outcome, std::size_t> counts;
  for (const auto& row : rows) {
    if (row.size() != width) throw DataError("oracle: ragged rows");
    ++counts[row];
  }
  JointTable t;
  t.n_vars_ = width;
  const double n = static_cast<double>(rows.size());
  for (const auto& [outcome, c] : counts) t.probabilities_[outcome] = static_cast<double>(c) / n;
  return t;
}

JointTable JointTable::from_probabilities(std::map<Outcome, double> probabilities) {
  if (probabilities.empty()) throw DataError("oracle: empty distribution");
  const std::size_t width = probabilities.begin()->first.size();
  double total = 0.0;
  for (const auto& [outcome, p] : probabilities) {
    if (outcome.size() != width) throw DataError("oracle: outcomes of different arity");
    if (!(p >= 0.0)) throw DataError("oracle: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DataError("oracle: probabilities sum to " + std::to_string(total));
  std::erase_if(probabilities, [](const auto& kv) { return kv.second == 0.0; });
  JointTable t;
  t.n_vars_ = width;
  t.probabilities_ = std::move(probabilities);
  return t;
}

JointTable JointTable::from_dataset(const Dataset& data) {
  std::vector<const Column*> cols;
  for (const auto& c : data.features()) cols.push_back(&c);
  cols.push_back(&data.target());
  for (const Column* c : cols) {
    if (!c->kind.is_discrete()) throw DataError("oracle requires discrete columns; '" + c->name + "' is continuous");
  }
  std::vector<Outcome> rows(data.n_samples(), Outcome(cols.size()));
  for (std::size_t r = 0; r < data.n_samples(); ++r) {
    for (std::size_t k = 0; k < cols.size(); ++k) rows[r][k] = static_cast<int>(cols[k]->values[r]);
  }
  return from_rows(rows);
}

double JointTable::entropy(const std::vector<std::size_t>& vars) const {
  if (vars.empty()) return 0.0;
  std::map<Outcome, double> marginal;
  Outcome key(vars.size());
  for (const auto& [outcome, p] : probabilities_) {
    for (std::size_t k = 0; k < vars.size(); ++k) key[k] = outcome.at(vars[k]);
    marginal[key] += p;
  }
  double h = 0.0;
  for (const auto& [outcome, p] : marginal) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

double oracle_mi(const JointTable& table, const std::vector<std::size_t>& left, const std::vector<std::size_t>& right) {
  for (auto v : left) {
    if (v >= table.n_vars()) throw DataError("oracle_mi: column out of range");
  }
  for (auto v : right) {
    if (v >= table.n_vars()) throw DataError("oracle_mi: column out of range");
  }
  std::vector<std::size_t> both = left;
  both.insert(both.end(), right.begin(), right.end());
  std::sort(both.begin(), both.end());
  both.erase(std::unique(both.begin(), both.end()), both.end());
  return table.entropy(left) + table.entropy(right) - table.entropy(both);
}

namespace {

// Memoized entropies keyed by a bitmask over the table's variables.
class EntropyCache {
 public:
  explicit EntropyCache(const JointTable& table) : table_(table) {}

  double h(std::uint64_t mask) {
    auto it = cache_.find(mask);
    if (it != cache_.end()) return it->second;
    std::vector<std::size_t> vars;
    for (std::size_t v = 0; v < table_.n_vars(); ++v) {
      if (mask >> v & 1u) vars.push_back(v);
    }
    const double value = table_.entropy(vars);
    cache_.emplace(mask, value);
    return value;
  }
  double mi(std::uint64_t a, std::uint64_t b) { return h(a) + h(b) - h(a | b); }

 private:
  const JointTable& table_;
  std::unordered_map<std::uint64_t, double> cache_;
};

std::uint64_t bit(std::size_t v) { return std::uint64_t{1} << v; }

FeatureSubset subset_of(std::uint64_t mask) { return FeatureSubset::from_mask(mask); }

}  // namespace

std::vector<OracleFeature> oracle_pidf(const JointTable& table, std::size_t cap, double tie_tolerance) {
  const std::size_t n = table.n_features();
  if (n > cap) {
    throw OracleCapError("oracle limited to " + std::to_string(cap) + " features, table has " + std::to_string(n));
  }
  EntropyCache cache(table);
  const std::uint64_t y = bit(table.target_index());
  const std::uint64_t all = bit(n) - 1;
  std::vector<OracleFeature> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t fi = bit(i);
    const std::uint64_t others = all & ~fi;
    auto ii = [&](std::uint64_t p) { return cache.mi(y, fi | p) - cache.mi(y, p) - cache.mi(y, fi); };

    OracleFeature& f = out[i];
    f.mi = cache.mi(y, fi);
    std::vector<std::pair<std::uint64_t, double>> scored;
    // Enumerate every subset of `others` (including the empty set).
    for (std::uint64_t p = others;; p = (p - 1) & others) {
      scored.emplace_back(p, ii(p));
      if (p == 0) break;
    }
    f.fws = scored.front().second;
    for (const auto& s : scored) f.fws = std::max(f.fws, s.second);
    for (const auto& s : scored) {
      if (s.second >= f.fws - tie_tolerance) f.maximizers.push_back(subset_of(s.first));
    }
    std::sort(f.maximizers.begin(), f.maximizers.end(), [](const FeatureSubset& a, const FeatureSubset& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
    f.ii_all = ii(others);
    f.fwr = f.fws - f.ii_all;
    f.mci = f.mi + f.fws;
    f.oci = cache.mi(y, all) - cache.mi(y, others);
  }
  return out;
}

TheoremReport check_theorems(const JointTable& table, std::size_t cap, double tolerance) {
  const std::size_t n = table.n_features();
  if (n > cap) {
    throw OracleCapError("theorem check limited to " + std::to_string(cap) + " features, table has " +
                         std::to_string(n));
  }
  TheoremReport report;
  for (const auto& f : oracle_pidf(table, cap)) {
    report.theorem1_max_residual = std::max(report.theorem1_max_residual, std::abs(f.mci - f.fwr - f.oci));
  }

  EntropyCache cache(table);
  const std::uint64_t y = bit(table.target_index());
  const std::uint64_t all = bit(n) - 1;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t fi = bit(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const std::uint64_t fj = bit(j);
      const std::uint64_t pool = all & ~fi & ~fj;
      const double h_i = cache.h(fi);
      const double i_ij = cache.mi(fi, fj);
      for (std::uint64_t c = pool;; c = (c - 1) & pool) {
        ++report.triples;
        const double theta =
            (cache.mi(y, fi | c | fj) - cache.mi(y, c | fj)) - (cache.mi(y, fi | c) - cache.mi(y, c));
        if (theta > 2.0 * h_i - i_ij + tolerance) ++report.upper_violations;
        const bool assumption = cache.mi(fi, c) + i_ij >= cache.mi(fi, c | fj) - tolerance;
        const bool below = theta < -i_ij - tolerance;
        if (assumption) {
          if (below) ++report.lower_violations;
        } else {
          ++report.assumption_failures;
          if (below) ++report.lower_breaches_without_assumption;
        }
        if (c == 0) break;
      }
    }
  }
  return report;
}

}  // namespace pidf
