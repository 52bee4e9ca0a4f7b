#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "pidf/dataset.hpp"
#include "pidf/oracle.hpp"
#include "pidf/rng.hpp"

namespace pidf::testing {

inline Column discrete_column(std::string name, std::vector<int> values, int cardinality) {
  std::vector<double> v(values.begin(), values.end());
  return {std::move(name), std::move(v), ColumnKind::discrete(cardinality)};
}

// Columns named f0.. plus "target" from integer columns (last = target).
inline Dataset dataset_from_columns(const std::vector<std::vector<int>>& cols, const std::vector<int>& cards) {
  std::vector<Column> features;
  for (std::size_t c = 0; c + 1 < cols.size(); ++c) {
    features.push_back(discrete_column("f" + std::to_string(c), cols[c], cards[c]));
  }
  return Dataset(std::move(features), discrete_column("target", cols.back(), cards.back()));
}

// Random discrete table: n_features features plus a target, each with
// cardinality in [2, max_states], rows drawn i.i.d. from a random joint law
// so that columns are dependent.
inline Dataset random_discrete_dataset(std::uint64_t seed, std::size_t n_features, int max_states, std::size_t rows) {
  Rng rng(seed);
  const std::size_t vars = n_features + 1;
  std::vector<int> cards(vars);
  for (auto& c : cards) c = 2 + static_cast<int>(rng.below(static_cast<std::size_t>(max_states - 1)));
  // A few latent "prototype" rows mixed with uniform noise.
  std::vector<std::vector<int>> protos(4, std::vector<int>(vars));
  for (auto& p : protos) {
    for (std::size_t v = 0; v < vars; ++v) p[v] = static_cast<int>(rng.below(static_cast<std::size_t>(cards[v])));
  }
  std::vector<std::vector<int>> cols(vars, std::vector<int>(rows));
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& p = protos[rng.below(protos.size())];
    for (std::size_t v = 0; v < vars; ++v) {
      cols[v][r] = rng.uniform() < 0.6 ? p[v] : static_cast<int>(rng.below(static_cast<std::size_t>(cards[v])));
    }
  }
  return dataset_from_columns(cols, cards);
}

// Random population distribution over n_features features and a target.
// About a third of the outcomes get zero mass so deterministic relations
// appear as well.
inline JointTable random_population(std::uint64_t seed, std::size_t n_features, int max_states) {
  Rng rng(seed);
  const std::size_t vars = n_features + 1;
  std::vector<int> cards(vars);
  for (auto& c : cards) c = 2 + static_cast<int>(rng.below(static_cast<std::size_t>(max_states - 1)));
  std::map<JointTable::Outcome, double> p;
  JointTable::Outcome o(vars, 0);
  double total = 0.0;
  while (true) {
    const double w = rng.uniform() < 0.35 ? 0.0 : rng.exponential(1.0);
    if (w > 0.0) {
      p[o] = w;
      total += w;
    }
    std::size_t v = 0;
    while (v < vars && ++o[v] == cards[v]) o[v++] = 0;
    if (v == vars) break;
  }
  if (total == 0.0) {
    p[JointTable::Outcome(vars, 0)] = 1.0;
    total = 1.0;
  }
  double sum = 0.0;
  for (auto& [k, w] : p) sum += (w /= total);
  // Absorb rounding so the probabilities sum to 1 within 1e-12.
  p.begin()->second += 1.0 - sum;
  return JointTable::from_probabilities(std::move(p));
}

}  // namespace pidf::testing
