#pragma once

#include <cstddef>

#include "pidf/types.hpp"

namespace pidf {

// Two-phase selection from a PIDF report.
//  1. Every feature whose MCI exceeds its FWR (same significance rule as the
//     rest of the pipeline) is selected.
//  2. The rest, by descending MCI (ties: ascending index), are added unless a
//     member of their redundant set is already selected.
SelectionResult select_features(const PidfReport& report, double alpha, double eps_zero);

struct ConfusionCounts {
  int tp = 0;
  int fp = 0;
  int tn = 0;
  int fn = 0;

  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

ConfusionCounts confusion_counts(const SelectionResult& selection, const FeatureSubset& truth, std::size_t n_features);
ConfusionCounts confusion_counts(const FeatureSubset& selected, const FeatureSubset& truth, std::size_t n_features);

}  // namespace pidf
