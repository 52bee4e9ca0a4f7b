#include "pidf/types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace pidf {

const char* to_string(Unit unit) { return unit == Unit::bits ? "bits" : "nats"; }

Unit parse_unit(const std::string& text) {
  if (text == "nats") return Unit::nats;
  if (text == "bits") return Unit::bits;
  throw ConfigError("unknown unit '" + text + "' (expected nats or bits)");
}

InfoValue InfoValue::to(Unit target) const {
  if (target == unit) return *this;
  if (target == Unit::bits) return {value / std::numbers::ln2, Unit::bits};
  return {value * std::numbers::ln2, Unit::nats};
}

InfoValue convert_units(InfoValue v, Unit target) { return v.to(target); }

// ---------------------------------------------------------------------------

FeatureSubset::FeatureSubset(std::initializer_list<std::size_t> indices)
    : FeatureSubset(std::vector<std::size_t>(indices)) {}

FeatureSubset::FeatureSubset(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

FeatureSubset FeatureSubset::from_mask(std::uint64_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1u) out.push_back(i);
  }
  FeatureSubset s;
  s.indices_ = std::move(out);
  return s;
}

FeatureSubset FeatureSubset::range(std::size_t n) {
  FeatureSubset s;
  s.indices_.resize(n);
  std::iota(s.indices_.begin(), s.indices_.end(), std::size_t{0});
  return s;
}

bool FeatureSubset::contains(std::size_t index) const {
  return std::binary_search(indices_.begin(), indices_.end(), index);
}

FeatureSubset FeatureSubset::with(std::size_t index) const {
  if (contains(index)) return *this;
  FeatureSubset s = *this;
  s.indices_.insert(std::upper_bound(s.indices_.begin(), s.indices_.end(), index), index);
  return s;
}

FeatureSubset FeatureSubset::without(std::size_t index) const {
  FeatureSubset s = *this;
  auto it = std::lower_bound(s.indices_.begin(), s.indices_.end(), index);
  if (it != s.indices_.end() && *it == index) s.indices_.erase(it);
  return s;
}

FeatureSubset FeatureSubset::unite(const FeatureSubset& other) const {
  FeatureSubset s;
  std::set_union(indices_.begin(), indices_.end(), other.indices_.begin(), other.indices_.end(),
                 std::back_inserter(s.indices_));
  return s;
}

bool FeatureSubset::intersects(const FeatureSubset& other) const {
  auto a = indices_.begin();
  auto b = other.indices_.begin();
  while (a != indices_.end() && b != other.indices_.end()) {
    if (*a == *b) return true;
    if (*a < *b) {
      ++a;
    } else {
      ++b;
    }
  }
  return false;
}

void FeatureSubset::check_bounds(std::size_t n_features) const {
  if (!indices_.empty() && indices_.back() >= n_features) {
    throw DataError("feature index " + std::to_string(indices_.back()) + " out of range (" +
                    std::to_string(n_features) + " features)");
  }
}

std::string FeatureSubset::to_string() const {
  std::ostringstream out;
  out << '{';
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    if (k) out << ',';
    out << 'F' << indices_[k];
  }
  out << '}';
  return out.str();
}

// ---------------------------------------------------------------------------

EstimateEnsemble::EstimateEnsemble(std::vector<double> estimates, std::vector<std::uint64_t> seeds)
    : estimates_(std::move(estimates)), seeds_(std::move(seeds)) {
  if (estimates_.empty()) throw EstimatorError("estimate ensemble needs at least one estimate");
  if (seeds_.size() != estimates_.size()) {
    throw EstimatorError("estimate ensemble: one seed per estimate required");
  }
  const bool all_equal = std::all_of(estimates_.begin(), estimates_.end(),
                                     [&](double x) { return x == estimates_.front(); });
  if (all_equal) {
    mean_ = estimates_.front();
    stddev_ = 0.0;
    return;
  }
  const double n = static_cast<double>(estimates_.size());
  mean_ = std::accumulate(estimates_.begin(), estimates_.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : estimates_) ss += (x - mean_) * (x - mean_);
  stddev_ = std::sqrt(ss / (n - 1.0));
}

EstimateEnsemble EstimateEnsemble::constant(double value, std::vector<std::uint64_t> seeds) {
  std::vector<double> values(seeds.size(), value);
  return EstimateEnsemble(std::move(values), std::move(seeds));
}

namespace {
template <class Op>
EstimateEnsemble combine(const EstimateEnsemble& a, const EstimateEnsemble& b, Op op) {
  if (a.seeds() != b.seeds()) throw EstimatorError("combining ensembles drawn from different seeds");
  std::vector<double> out(a.size());
  for (std::size_t r = 0; r < a.size(); ++r) out[r] = op(a.estimates()[r], b.estimates()[r]);
  return EstimateEnsemble(std::move(out), a.seeds());
}
}  // namespace

EstimateEnsemble operator+(const EstimateEnsemble& a, const EstimateEnsemble& b) {
  return combine(a, b, std::plus<>{});
}

EstimateEnsemble operator-(const EstimateEnsemble& a, const EstimateEnsemble& b) {
  return combine(a, b, std::minus<>{});
}

// ---------------------------------------------------------------------------

PidfReport PidfReport::in_units(Unit target) const {
  PidfReport out = *this;
  out.unit = target;
  for (auto& f : out.features) {
    f.mi = f.mi.to(target);
    f.fws = f.fws.to(target);
    f.fwr_total = f.fwr_total.to(target);
    f.mci = f.mci.to(target);
    f.oci = f.oci.to(target);
    for (auto& [j, v] : f.fwr_contributions) v = v.to(target);
  }
  return out;
}

const char* to_string(Rationale r) {
  switch (r) {
    case Rationale::non_redundant:
      return "non_redundant";
    case Rationale::ranked_and_compatible:
      return "ranked_and_compatible";
    case Rationale::rejected_redundant:
      return "rejected_redundant";
  }
  return "unknown";
}

}  // namespace pidf
