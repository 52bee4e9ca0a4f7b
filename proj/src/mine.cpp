#include "pidf/mine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pidf/rng.hpp"

namespace pidf {

double MineNetwork::forward(const double* x, std::vector<double>& activations) const {
  activations.resize(hidden);
  const double* w1 = params.data() + w1_offset();
  const double* b1 = params.data() + b1_offset();
  const double* w2 = params.data() + w2_offset();
  double out = params[b2_offset()];
  for (std::size_t h = 0; h < hidden; ++h) {
    double z = b1[h];
    const double* row = w1 + h * input_dim;
    for (std::size_t c = 0; c < input_dim; ++c) z += row[c] * x[c];
    activations[h] = z > 0.0 ? z : 0.0;
    out += w2[h] * activations[h];
  }
  return out;
}

MineState mine_init(std::size_t input_dim, const MineConfig& cfg, std::uint64_t seed) {
  MineState s;
  s.net.input_dim = input_dim;
  s.net.hidden = cfg.hidden;
  s.net.params.assign(s.net.b2_offset() + 1, 0.0);
  Rng rng(seed);
  const double in_bound = 1.0 / std::sqrt(static_cast<double>(input_dim));
  const double hidden_bound = 1.0 / std::sqrt(static_cast<double>(cfg.hidden));
  for (std::size_t p = 0; p < s.net.w2_offset(); ++p) s.net.params[p] = rng.uniform(-in_bound, in_bound);
  for (std::size_t p = s.net.w2_offset(); p < s.net.params.size(); ++p) {
    s.net.params[p] = rng.uniform(-hidden_bound, hidden_bound);
  }
  s.first_moment.assign(s.net.params.size(), 0.0);
  s.second_moment.assign(s.net.params.size(), 0.0);
  return s;
}

namespace {

double log_mean_exp(const std::vector<double>& t) {
  const double hi = *std::max_element(t.begin(), t.end());
  double acc = 0.0;
  for (double x : t) acc += std::exp(x - hi);
  return hi + std::log(acc / static_cast<double>(t.size()));
}

std::vector<double> scores(const MineNetwork& net, const SampleMatrix& batch) {
  std::vector<double> out(batch.rows);
  std::vector<double> act;
  for (std::size_t r = 0; r < batch.rows; ++r) out[r] = net.forward(batch.data.data() + r * batch.dim, act);
  return out;
}

// Accumulates weight * dT/dparams at sample x into grad.
void accumulate_gradient(const MineNetwork& net, const double* x, double weight, std::vector<double>& grad) {
  const std::size_t d = net.input_dim;
  const double* w1 = net.params.data() + net.w1_offset();
  const double* b1 = net.params.data() + net.b1_offset();
  const double* w2 = net.params.data() + net.w2_offset();
  double* g_w1 = grad.data() + net.w1_offset();
  double* g_b1 = grad.data() + net.b1_offset();
  double* g_w2 = grad.data() + net.w2_offset();
  for (std::size_t h = 0; h < net.hidden; ++h) {
    double z = b1[h];
    const double* row = w1 + h * d;
    for (std::size_t c = 0; c < d; ++c) z += row[c] * x[c];
    if (z <= 0.0) continue;
    g_w2[h] += weight * z;
    const double upstream = weight * w2[h];
    g_b1[h] += upstream;
    double* g_row = g_w1 + h * d;
    for (std::size_t c = 0; c < d; ++c) g_row[c] += upstream * x[c];
  }
  grad[net.b2_offset()] += weight;
}

}  // namespace

double mine_lower_bound(const MineNetwork& net, const SampleMatrix& joint, const SampleMatrix& marginal) {
  const auto tj = scores(net, joint);
  const auto tm = scores(net, marginal);
  const double mean_joint = std::accumulate(tj.begin(), tj.end(), 0.0) / static_cast<double>(tj.size());
  return mean_joint - log_mean_exp(tm);
}

double mine_train_step(MineState& state, const SampleMatrix& joint, const SampleMatrix& marginal,
                       const MineConfig& cfg) {
  auto& net = state.net;
  const auto tj = scores(net, joint);
  const auto tm = scores(net, marginal);
  const double bj = static_cast<double>(tj.size());
  const double lme = log_mean_exp(tm);
  const double bound = std::accumulate(tj.begin(), tj.end(), 0.0) / bj - lme;
  if (!std::isfinite(bound)) throw EstimatorError("MINE diverged: non-finite lower bound");

  std::vector<double> grad(net.params.size(), 0.0);
  for (std::size_t r = 0; r < joint.rows; ++r) {
    accumulate_gradient(net, joint.data.data() + r * joint.dim, 1.0 / bj, grad);
  }
  // d/dT_m of -log mean exp T = -softmax(T)_m
  const double hi = *std::max_element(tm.begin(), tm.end());
  double z = 0.0;
  for (double t : tm) z += std::exp(t - hi);
  for (std::size_t r = 0; r < marginal.rows; ++r) {
    const double w = -std::exp(tm[r] - hi) / z;
    accumulate_gradient(net, marginal.data.data() + r * marginal.dim, w, grad);
  }

  ++state.step;
  const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));
  for (std::size_t p = 0; p < grad.size(); ++p) {
    state.first_moment[p] = cfg.beta1 * state.first_moment[p] + (1.0 - cfg.beta1) * grad[p];
    state.second_moment[p] = cfg.beta2 * state.second_moment[p] + (1.0 - cfg.beta2) * grad[p] * grad[p];
    const double m_hat = state.first_moment[p] / c1;
    const double v_hat = state.second_moment[p] / c2;
    net.params[p] += cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.adam_eps);
  }
  return bound;
}

namespace {

void fill_batch(const SampleMatrix& left, const SampleMatrix& right, const std::vector<std::size_t>& left_rows,
                const std::vector<std::size_t>& right_rows, SampleMatrix& out) {
  const std::size_t d = left.dim + right.dim;
  out.rows = left_rows.size();
  out.dim = d;
  out.data.resize(out.rows * d);
  for (std::size_t r = 0; r < out.rows; ++r) {
    const auto l = left.row(left_rows[r]);
    const auto rr = right.row(right_rows[r]);
    std::copy(l.begin(), l.end(), out.data.begin() + static_cast<std::ptrdiff_t>(r * d));
    std::copy(rr.begin(), rr.end(), out.data.begin() + static_cast<std::ptrdiff_t>(r * d + left.dim));
  }
}

}  // namespace

MineRun mine_train(const SampleMatrix& left, const SampleMatrix& right, const MineConfig& cfg, std::uint64_t seed,
                   int iterations) {
  if (left.rows != right.rows) throw EstimatorError("MINE: groups have different row counts");
  if (cfg.batch_size == 0 || cfg.batch_size > left.rows) {
    throw EstimatorError("MINE: batch size " + std::to_string(cfg.batch_size) + " exceeds " +
                         std::to_string(left.rows) + " samples");
  }
  if (iterations < 0) throw ConfigError("MINE: negative iteration count");
  MineRun run;
  run.state = mine_init(left.dim + right.dim, cfg, derive_seed(seed, 1));
  Rng rng(derive_seed(seed, 2));

  std::vector<std::size_t> all(left.rows);
  std::iota(all.begin(), all.end(), std::size_t{0});
  std::vector<std::size_t> batch(cfg.batch_size), shuffled(cfg.batch_size);
  SampleMatrix joint, marginal;
  auto draw = [&] {
    // Partial Fisher-Yates: first batch_size entries become the minibatch.
    for (std::size_t i = 0; i < cfg.batch_size; ++i) std::swap(all[i], all[i + rng.below(all.size() - i)]);
    std::copy(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(cfg.batch_size), batch.begin());
    shuffled = batch;
    rng.shuffle(shuffled);
    fill_batch(left, right, batch, batch, joint);
    fill_batch(left, right, batch, shuffled, marginal);
  };

  if (iterations == 0) {
    draw();
    run.estimate = mine_lower_bound(run.state.net, joint, marginal);
    return run;
  }
  run.bounds.reserve(static_cast<std::size_t>(iterations));
  for (int it = 0; it < iterations; ++it) {
    draw();
    run.bounds.push_back(mine_train_step(run.state, joint, marginal, cfg));
  }
  const auto tail = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(cfg.tail_fraction * static_cast<double>(iterations))));
  run.estimate = std::accumulate(run.bounds.end() - static_cast<std::ptrdiff_t>(tail), run.bounds.end(), 0.0) /
                 static_cast<double>(tail);
  return run;
}

double mine_mi(const Dataset& data, const VarGroup& a, const VarGroup& b, const MineConfig& cfg,
               std::uint64_t seed) {
  if (a.empty() || b.empty()) return 0.0;
  std::vector<std::size_t> rows(data.n_samples());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  // Jitter only breaks ties; it is irrelevant at MINE's resolution.
  const SampleMatrix left = standardized_matrix(data, a, seed, rows);
  const SampleMatrix right = standardized_matrix(data, b, seed, rows);
  return mine_train(left, right, cfg, seed, cfg.iterations).estimate;
}

}  // namespace pidf
