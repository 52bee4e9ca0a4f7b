#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace pidf {

// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);
// FNV-1a; stable stream ids derived from column names.
std::uint64_t hash_name(std::string_view name);

// Seed used for repetition r of an estimate.
std::uint64_t repetition_seed(std::uint64_t base, int r);
std::vector<std::uint64_t> repetition_seeds(std::uint64_t base, int repetitions);

// mt19937_64 with hand-written variate transforms. The standard library's
// distributions are implementation-defined, so they are avoided to keep
// generated data identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int bernoulli(double p) { return uniform() < p ? 1 : 0; }
  // Box-Muller, both variates consumed in order.
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }
  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }
  // Unbiased integer in [0, n).
  std::size_t below(std::size_t n);

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace pidf
