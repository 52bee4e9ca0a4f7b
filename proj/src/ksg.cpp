#include "pidf/ksg.hpp"

#include <algorithm>
#include <boost/math/special_functions/digamma.hpp>
#include <cmath>
#include <limits>
#include <numeric>

#include "pidf/rng.hpp"

namespace pidf {

namespace {

double max_norm(std::span<const double> x, std::span<const double> y) {
  double d = 0.0;
  for (std::size_t c = 0; c < x.size(); ++c) d = std::max(d, std::abs(x[c] - y[c]));
  return d;
}

struct NeighbourCounts {
  std::size_t n_a = 0;
  std::size_t n_b = 0;
};

// Counts for point i. `scratch` holds the joint distances (size n).
NeighbourCounts count_point(const SampleMatrix& a, const SampleMatrix& b, int k, std::size_t i,
                            std::vector<double>& scratch, std::vector<double>& da, std::vector<double>& db) {
  const std::size_t n = a.rows;
  const auto ai = a.row(i);
  const auto bi = b.row(i);
  std::size_t m = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    da[j] = max_norm(ai, a.row(j));
    db[j] = max_norm(bi, b.row(j));
    scratch[m++] = std::max(da[j], db[j]);
  }
  std::nth_element(scratch.begin(), scratch.begin() + (k - 1), scratch.begin() + static_cast<std::ptrdiff_t>(m));
  const double eps = scratch[static_cast<std::size_t>(k - 1)];
  NeighbourCounts out;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    if (da[j] < eps) ++out.n_a;
    if (db[j] < eps) ++out.n_b;
  }
  return out;
}

void check_inputs(const SampleMatrix& a, const SampleMatrix& b, int k) {
  if (a.rows != b.rows) throw EstimatorError("KSG: groups have different row counts");
  if (k < 1) throw ConfigError("KSG: k must be >= 1");
  if (a.rows <= static_cast<std::size_t>(k)) throw EstimatorError("KSG: need more than k samples");
}

double combine(const std::vector<NeighbourCounts>& counts, int k) {
  using boost::math::digamma;
  const double n = static_cast<double>(counts.size());
  double acc = 0.0;
  for (const auto& c : counts) {
    acc += digamma(static_cast<double>(c.n_a) + 1.0) + digamma(static_cast<double>(c.n_b) + 1.0);
  }
  return digamma(static_cast<double>(k)) + digamma(n) - acc / n;
}

struct ConditionalCounts {
  std::size_t n_xz = 0;
  std::size_t n_yz = 0;
  std::size_t n_z = 0;
};

double distance(const SampleMatrix& m, std::size_t i, std::size_t j) {
  return m.dim == 0 ? 0.0 : max_norm(m.row(i), m.row(j));
}

ConditionalCounts count_conditional(const SampleMatrix& x, const SampleMatrix& y, const SampleMatrix& z, int k,
                                    std::size_t i, std::vector<double>& scratch, std::vector<double>& dx,
                                    std::vector<double>& dy, std::vector<double>& dz) {
  const std::size_t n = x.rows;
  std::size_t m = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    dx[j] = distance(x, i, j);
    dy[j] = distance(y, i, j);
    dz[j] = distance(z, i, j);
    scratch[m++] = std::max({dx[j], dy[j], dz[j]});
  }
  std::nth_element(scratch.begin(), scratch.begin() + (k - 1), scratch.begin() + static_cast<std::ptrdiff_t>(m));
  const double eps = scratch[static_cast<std::size_t>(k - 1)];
  ConditionalCounts out;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i || !(dz[j] < eps)) continue;
    ++out.n_z;
    if (dx[j] < eps) ++out.n_xz;
    if (dy[j] < eps) ++out.n_yz;
  }
  return out;
}

void check_conditional(const SampleMatrix& x, const SampleMatrix& y, const SampleMatrix& z, int k) {
  check_inputs(x, y, k);
  if (z.rows != x.rows) throw EstimatorError("KSG: groups have different row counts");
}

double combine_conditional(const std::vector<ConditionalCounts>& counts, int k) {
  using boost::math::digamma;
  double acc = 0.0;
  for (const auto& c : counts) {
    acc += digamma(static_cast<double>(c.n_xz) + 1.0) + digamma(static_cast<double>(c.n_yz) + 1.0) -
           digamma(static_cast<double>(c.n_z) + 1.0);
  }
  return digamma(static_cast<double>(k)) - acc / static_cast<double>(counts.size());
}

}  // namespace

double ksg_cmi_serial(const SampleMatrix& x, const SampleMatrix& y, const SampleMatrix& z, int k) {
  check_conditional(x, y, z, k);
  const std::size_t n = x.rows;
  std::vector<ConditionalCounts> counts(n);
  std::vector<double> scratch(n), dx(n), dy(n), dz(n);
  for (std::size_t i = 0; i < n; ++i) counts[i] = count_conditional(x, y, z, k, i, scratch, dx, dy, dz);
  return combine_conditional(counts, k);
}

double ksg_cmi_parallel(const SampleMatrix& x, const SampleMatrix& y, const SampleMatrix& z, int k) {
  check_conditional(x, y, z, k);
  const std::size_t n = x.rows;
  std::vector<ConditionalCounts> counts(n);
#pragma omp parallel
  {
    std::vector<double> scratch(n), dx(n), dy(n), dz(n);
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
      const auto p = static_cast<std::size_t>(i);
      counts[p] = count_conditional(x, y, z, k, p, scratch, dx, dy, dz);
    }
  }
  return combine_conditional(counts, k);
}

double ksg_mi_serial(const SampleMatrix& a, const SampleMatrix& b, int k) {
  check_inputs(a, b, k);
  const std::size_t n = a.rows;
  std::vector<NeighbourCounts> counts(n);
  std::vector<double> scratch(n), da(n), db(n);
  for (std::size_t i = 0; i < n; ++i) counts[i] = count_point(a, b, k, i, scratch, da, db);
  return combine(counts, k);
}

double ksg_mi_parallel(const SampleMatrix& a, const SampleMatrix& b, int k) {
  check_inputs(a, b, k);
  const std::size_t n = a.rows;
  std::vector<NeighbourCounts> counts(n);
#pragma omp parallel
  {
    std::vector<double> scratch(n), da(n), db(n);
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
      counts[static_cast<std::size_t>(i)] = count_point(a, b, k, static_cast<std::size_t>(i), scratch, da, db);
    }
  }
  return combine(counts, k);
}

SampleMatrix standardized_matrix(const Dataset& data, const VarGroup& group, std::uint64_t jitter_seed,
                                 std::span<const std::size_t> rows) {
  const auto cols = data.columns(group);
  SampleMatrix m;
  m.rows = rows.size();
  m.dim = cols.size();
  m.data.assign(m.rows * m.dim, 0.0);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const auto& v = cols[c]->values;
    double mean = 0.0;
    for (std::size_t r : rows) mean += v[r];
    mean /= static_cast<double>(rows.size());
    double var = 0.0;
    for (std::size_t r : rows) var += (v[r] - mean) * (v[r] - mean);
    const double sd = std::sqrt(var / static_cast<double>(rows.size()));
    const double scale = sd > 0.0 ? 1.0 / sd : 1.0;
    // Jitter stream keyed by row index so subsamples see the same noise.
    Rng rng(derive_seed(jitter_seed, hash_name(cols[c]->name)));
    std::vector<double> noise(v.size());
    for (auto& x : noise) x = 1e-10 * rng.normal();
    for (std::size_t k = 0; k < rows.size(); ++k) {
      m.data[k * m.dim + c] = (v[rows[k]] - mean) * scale + noise[rows[k]];
    }
  }
  return m;
}

namespace {

std::vector<std::size_t> sample_rows(std::size_t n, const KsgOptions& options, std::uint64_t sample_seed) {
  std::vector<std::size_t> rows(n);
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  if (options.subsample < 1.0) {
    const auto m = static_cast<std::size_t>(std::llround(options.subsample * static_cast<double>(n)));
    Rng rng(sample_seed);
    rng.shuffle(rows);
    rows.resize(std::max<std::size_t>(m, static_cast<std::size_t>(options.k) + 1));
    std::sort(rows.begin(), rows.end());
  }
  return rows;
}

}  // namespace

double ksg_cmi(const Dataset& data, const VarGroup& a, const VarGroup& b, const VarGroup& c, const KsgOptions& options,
               std::uint64_t jitter_seed, std::uint64_t sample_seed) {
  if (a.empty() || b.empty()) return 0.0;
  if (c.empty()) return ksg_mi(data, a, b, options, jitter_seed, sample_seed);
  const auto rows = sample_rows(data.n_samples(), options, sample_seed);
  const SampleMatrix mx = standardized_matrix(data, a, jitter_seed, rows);
  const SampleMatrix my = standardized_matrix(data, b, jitter_seed, rows);
  const SampleMatrix mz = standardized_matrix(data, c, jitter_seed, rows);
  return options.parallel ? ksg_cmi_parallel(mx, my, mz, options.k) : ksg_cmi_serial(mx, my, mz, options.k);
}

double ksg_mi(const Dataset& data, const VarGroup& a, const VarGroup& b, const KsgOptions& options,
              std::uint64_t jitter_seed, std::uint64_t sample_seed) {
  if (a.empty() || b.empty()) return 0.0;
  const std::size_t n = data.n_samples();
  std::vector<std::size_t> rows(n);
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  if (options.subsample < 1.0) {
    const auto m = static_cast<std::size_t>(std::llround(options.subsample * static_cast<double>(n)));
    Rng rng(sample_seed);
    rng.shuffle(rows);
    rows.resize(std::max<std::size_t>(m, static_cast<std::size_t>(options.k) + 1));
    std::sort(rows.begin(), rows.end());
  }
  const SampleMatrix ma = standardized_matrix(data, a, jitter_seed, rows);
  const SampleMatrix mb = standardized_matrix(data, b, jitter_seed, rows);
  return options.parallel ? ksg_mi_parallel(ma, mb, options.k) : ksg_mi_serial(ma, mb, options.k);
}

}  // namespace pidf
