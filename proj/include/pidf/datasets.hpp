#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pidf/dataset.hpp"
#include "pidf/selection.hpp"

namespace pidf {

enum class DatasetId { rvq, svq, msq, wt, terc1, terc2, ubr, sg };

const char* to_string(DatasetId id);
DatasetId parse_dataset_id(const std::string& text);
std::vector<DatasetId> all_dataset_ids();

// Target rule of the TERC datasets: Y = 0 when the compared bits agree.
//   all_equal: f0 = f1 = f2 (default)
//   pair:      f1 = f2
enum class TercCondition { all_equal, pair };

struct GeneratorSpec {
  DatasetId id = DatasetId::rvq;
  std::size_t n_samples = 1000;
  std::uint64_t seed = 0;
  TercCondition terc = TercCondition::all_equal;
};

// Columns are named f0..f{N-1} plus "target". Every named variable (noise
// terms included) draws from its own mt19937_64 stream seeded with
// derive_seed(seed, fnv1a(name)), so adding a column never perturbs others.
Dataset generate(const GeneratorSpec& spec);

// Four fair-bit features with F2 = F0, F3 = F1 and Y = F0 + F1, the worked
// example used to illustrate exhaustive FWS search. Accepted by the CLI as
// "appendix-a"; it is not one of the benchmark datasets.
Dataset appendix_a_dataset(std::size_t n_samples, std::uint64_t seed);

// Feature sets a correct selector may return. Interchangeable copies give
// several equally valid answers.
std::vector<FeatureSubset> acceptable_selections(DatasetId id);

// Best match of a selection against the acceptable answers (most TP + TN,
// first on ties).
ConfusionCounts score_selection(DatasetId id, const FeatureSubset& selected, std::size_t n_features);

// Reference confusion counts for the PIDF selector on each dataset.
ConfusionCounts reference_counts(DatasetId id);

}  // namespace pidf
