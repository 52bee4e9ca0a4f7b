#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pidf/dataset.hpp"
#include "pidf/ksg.hpp"

namespace pidf {

struct MineConfig {
  std::size_t batch_size = 1000;
  int iterations = 20000;
  double learning_rate = 1e-4;
  std::size_t hidden = 50;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  // The reported estimate averages the minibatch bound over this trailing
  // fraction of iterations.
  double tail_fraction = 0.05;
};

// Statistics network T(x) = w2 . relu(W1 x + b1) + b2, all parameters in
// one flat vector: [W1 (hidden x input, row-major) | b1 | w2 | b2].
struct MineNetwork {
  std::size_t input_dim = 0;
  std::size_t hidden = 0;
  std::vector<double> params;

  std::size_t w1_offset() const { return 0; }
  std::size_t b1_offset() const { return hidden * input_dim; }
  std::size_t w2_offset() const { return b1_offset() + hidden; }
  std::size_t b2_offset() const { return w2_offset() + hidden; }

  double forward(const double* x, std::vector<double>& activations) const;
};

struct MineState {
  MineNetwork net;
  std::vector<double> first_moment;
  std::vector<double> second_moment;
  long step = 0;
};

// Weights and biases ~ U(-1/sqrt(fan_in), 1/sqrt(fan_in)).
MineState mine_init(std::size_t input_dim, const MineConfig& cfg, std::uint64_t seed);

// Donsker-Varadhan bound mean T(joint) - log mean exp T(marginal).
// Rows of `joint` and `marginal` are concatenated (left, right) samples.
double mine_lower_bound(const MineNetwork& net, const SampleMatrix& joint, const SampleMatrix& marginal);

// One Adam ascent step on the bound. Returns the bound at the parameters
// before the update. Throws EstimatorError on a non-finite bound.
double mine_train_step(MineState& state, const SampleMatrix& joint, const SampleMatrix& marginal,
                       const MineConfig& cfg);

struct MineRun {
  double estimate = 0.0;
  std::vector<double> bounds;  // one per iteration
  MineState state;
};

// Full training loop over standardized samples. Each iteration draws a
// minibatch of rows, pairs left with right for the joint batch and left with
// a within-batch shuffle of right for the marginal batch. With zero
// iterations the estimate is the initial network's bound on one batch.
MineRun mine_train(const SampleMatrix& left, const SampleMatrix& right, const MineConfig& cfg, std::uint64_t seed,
                   int iterations);

double mine_mi(const Dataset& data, const VarGroup& a, const VarGroup& b, const MineConfig& cfg,
               std::uint64_t seed);

}  // namespace pidf
