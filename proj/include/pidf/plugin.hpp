#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pidf/dataset.hpp"

namespace pidf {

// Dense joint codes (0..k-1) for the rows of a group of discrete columns.
// Two groups inducing the same partition of the rows get the same count
// multiset, so their plug-in entropies are bit-identical.
std::vector<std::uint32_t> joint_codes(std::span<const Column* const> columns);

// Plug-in Shannon entropy in nats of a code vector.
double plugin_entropy(std::span<const std::uint32_t> codes);
std::size_t support_size(std::span<const std::uint32_t> codes);

double plugin_entropy(const Dataset& data, const VarGroup& group);
// H(A) + H(B) - H(A,B), clamped at zero.
double plugin_mi(const Dataset& data, const VarGroup& a, const VarGroup& b);

// Equal-frequency bin index per value; tied values share a bin.
std::vector<double> equal_frequency_bins(std::span<const double> values, int bins);
// Copy of the dataset with every continuous column replaced by its bins.
Dataset binned_dataset(const Dataset& data, int bins);

}  // namespace pidf
