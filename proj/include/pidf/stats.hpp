#pragma once

#include "pidf/types.hpp"

namespace pidf {

// One-sided one-sample Student-t p-values for H1: mean < 0 and H1: mean > 0.
// Requires an ensemble with at least two estimates and nonzero spread.
double p_value_below_zero(const EstimateEnsemble& e);
double p_value_above_zero(const EstimateEnsemble& e);

// Significance of a quantity being above zero, shared by every threshold in
// the pipeline: deterministic ensembles compare the mean to eps_zero,
// stochastic ones run the one-sided t-test at level alpha.
bool significantly_positive(const EstimateEnsemble& e, double alpha, double eps_zero);
bool significantly_negative(const EstimateEnsemble& e, double alpha, double eps_zero);

// Upper-tail p-value of the G statistic 2*n*I (I in nats) against a
// chi-squared distribution with `dof` degrees of freedom.
double g_test_p_value(double mi_nats, std::size_t n_samples, double dof);

}  // namespace pidf
