#include "pidf/selection.hpp"

#include <algorithm>
#include <numeric>

#include "pidf/stats.hpp"

namespace pidf {

SelectionResult select_features(const PidfReport& report, double alpha, double eps_zero) {
  const std::size_t n = report.features.size();
  SelectionResult out;
  out.decisions.resize(n);
  std::vector<std::size_t> selected;

  std::vector<std::size_t> remaining;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& f = report.features[i];
    if (significantly_positive(f.mci_minus_fwr(), alpha, eps_zero)) {
      selected.push_back(i);
      out.decisions[i].rationale = Rationale::non_redundant;
    } else {
      remaining.push_back(i);
    }
  }

  std::stable_sort(remaining.begin(), remaining.end(), [&](std::size_t a, std::size_t b) {
    const double ma = report.features[a].mci.value;
    const double mb = report.features[b].mci.value;
    if (ma != mb) return ma > mb;
    return a < b;
  });
  for (std::size_t i : remaining) {
    std::vector<std::size_t> blocking;
    for (std::size_t j : report.features[i].redundant_set) {
      if (std::find(selected.begin(), selected.end(), j) != selected.end()) blocking.push_back(j);
    }
    if (blocking.empty()) {
      selected.push_back(i);
      out.decisions[i].rationale = Rationale::ranked_and_compatible;
    } else {
      out.decisions[i] = {Rationale::rejected_redundant, FeatureSubset(blocking)};
    }
  }
  out.selected = FeatureSubset(selected);
  return out;
}

ConfusionCounts confusion_counts(const FeatureSubset& selected, const FeatureSubset& truth, std::size_t n_features) {
  selected.check_bounds(n_features);
  truth.check_bounds(n_features);
  ConfusionCounts c;
  for (std::size_t i = 0; i < n_features; ++i) {
    const bool s = selected.contains(i);
    const bool t = truth.contains(i);
    if (s && t) ++c.tp;
    if (s && !t) ++c.fp;
    if (!s && !t) ++c.tn;
    if (!s && t) ++c.fn;
  }
  return c;
}

ConfusionCounts confusion_counts(const SelectionResult& selection, const FeatureSubset& truth, std::size_t n_features) {
  return confusion_counts(selection.selected, truth, n_features);
}

}  // namespace pidf
