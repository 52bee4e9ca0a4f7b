#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pidf/dataset.hpp"

namespace pidf {

// Row-major n x dim sample matrix.
struct SampleMatrix {
  std::size_t rows = 0;
  std::size_t dim = 0;
  std::vector<double> data;

  std::span<const double> row(std::size_t r) const { return {data.data() + r * dim, dim}; }
};

// Kraskov-Stögbauer-Grassberger estimator (first variant, max-norm).
//   I = psi(k) + psi(N) - < psi(n_a + 1) + psi(n_b + 1) >
// where n_a, n_b count marginal neighbours strictly inside the distance to
// the k-th joint neighbour. O(N^2 (d_a + d_b)) brute force.
double ksg_mi_serial(const SampleMatrix& a, const SampleMatrix& b, int k);
// Same kernel with the per-point loop split across OpenMP threads. The
// neighbour counts are integers and the final reduction runs in point order,
// so the result is bit-identical to the serial version.
double ksg_mi_parallel(const SampleMatrix& a, const SampleMatrix& b, int k);

// Frenzel-Pompe conditional form of the same estimator:
//   I(X;Y|Z) = psi(k) - < psi(n_xz + 1) + psi(n_yz + 1) - psi(n_z + 1) >
// with all counts taken at the k-th neighbour distance in the joint (X,Y,Z)
// space. Sharing that distance across subspaces makes the biases of the two
// MI terms of I(X;Y,Z) - I(X;Z) largely cancel. z.dim == 0 gives plain KSG.
double ksg_cmi_serial(const SampleMatrix& x, const SampleMatrix& y, const SampleMatrix& z, int k);
double ksg_cmi_parallel(const SampleMatrix& x, const SampleMatrix& y, const SampleMatrix& z, int k);

struct KsgOptions {
  int k = 3;
  // Fraction of rows drawn (without replacement) per repetition; 1 uses all.
  double subsample = 1.0;
  bool parallel = true;
};

// Standardizes each column, adds 1e-10 jitter (seeded by `jitter_seed`) to
// break ties from discrete columns, optionally subsamples rows with
// `sample_seed`, and runs the kernel.
double ksg_mi(const Dataset& data, const VarGroup& a, const VarGroup& b, const KsgOptions& options,
              std::uint64_t jitter_seed, std::uint64_t sample_seed);

// I(A;B|C) with the same preprocessing as ksg_mi.
double ksg_cmi(const Dataset& data, const VarGroup& a, const VarGroup& b, const VarGroup& c, const KsgOptions& options,
               std::uint64_t jitter_seed, std::uint64_t sample_seed);

SampleMatrix standardized_matrix(const Dataset& data, const VarGroup& group, std::uint64_t jitter_seed,
                                 std::span<const std::size_t> rows);

}  // namespace pidf
