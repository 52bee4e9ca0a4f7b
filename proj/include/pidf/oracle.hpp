#pragma once

// Brute-force reference quantities for discrete data. Nothing here calls the
// estimator or PIDF code: distributions are explicit maps from outcome tuples
// to probabilities, and every information quantity is evaluated from its
// definition.

#include <cstddef>
#include <map>
#include <vector>

#include "pidf/dataset.hpp"
#include "pidf/types.hpp"

namespace pidf {

// Joint distribution over n_vars discrete variables. By convention the last
// variable is the target Y and variables 0..n_vars-2 are the features.
class JointTable {
 public:
  using Outcome = std::vector<int>;

  // Empirical distribution of integer rows (equal weights).
  static JointTable from_rows(const std::vector<Outcome>& rows);
  // Explicit probabilities; throws DataError unless they are non-negative
  // and sum to 1 within 1e-12.
  static JointTable from_probabilities(std::map<Outcome, double> probabilities);
  // Features then target; throws DataError("oracle requires discrete
  // columns") if any column is continuous.
  static JointTable from_dataset(const Dataset& data);

  std::size_t n_vars() const { return n_vars_; }
  std::size_t n_features() const { return n_vars_ - 1; }
  std::size_t target_index() const { return n_vars_ - 1; }
  const std::map<Outcome, double>& probabilities() const { return probabilities_; }

  // Shannon entropy (nats) of the marginal over `vars`.
  double entropy(const std::vector<std::size_t>& vars) const;

 private:
  std::size_t n_vars_ = 0;
  std::map<Outcome, double> probabilities_;
};

// I(L;R) = H(L) + H(R) - H(L,R) in nats.
double oracle_mi(const JointTable& table, const std::vector<std::size_t>& left, const std::vector<std::size_t>& right);

struct OracleFeature {
  double mi = 0.0;      // I(Y;F_i)
  double fws = 0.0;     // max over P of I(Y;F_i;P)
  double ii_all = 0.0;  // I(Y;F_i;rest)
  double fwr = 0.0;     // fws - ii_all
  double mci = 0.0;     // mi + fws
  double oci = 0.0;     // I(Y;all) - I(Y;rest)
  std::vector<FeatureSubset> maximizers;  // ascending by (size, members)
};

// Definitional PIDF quantities by exhaustive search. Throws OracleCapError
// when the table has more than `cap` features.
std::vector<OracleFeature> oracle_pidf(const JointTable& table, std::size_t cap = 15, double tie_tolerance = 1e-9);

struct TheoremReport {
  // max over features of |MCI - FWR - OCI|.
  double theorem1_max_residual = 0.0;
  std::size_t triples = 0;
  // theta > 2 H(F_i) - I(F_i;F_j).
  std::size_t upper_violations = 0;
  // theta < -I(F_i;F_j) on triples where Assumption 1 holds.
  std::size_t lower_violations = 0;
  // Triples where I(F_i;C) + I(F_i;F_j) < I(F_i;C,F_j); the lower bound is
  // not claimed there and such triples are only counted.
  std::size_t assumption_failures = 0;
  // Lower-bound breaches on those triples (informational).
  std::size_t lower_breaches_without_assumption = 0;

  bool ok(double residual_tolerance = 1e-9) const {
    return theorem1_max_residual < residual_tolerance && upper_violations == 0 && lower_violations == 0;
  }
};

// Theorem 1 residuals and Theorem 2 bounds over every (i, j, context) triple
// with the context drawn from the features other than i and j. Throws
// OracleCapError above `cap` features.
TheoremReport check_theorems(const JointTable& table, std::size_t cap = 10, double tolerance = 1e-9);

}  // namespace pidf
