#include "pidf/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>

namespace pidf {

namespace {

double t_statistic(const EstimateEnsemble& e) {
  if (e.size() < 2 || e.stddev() == 0.0) {
    throw EstimatorError("t-test needs at least two distinct estimates");
  }
  return e.mean() / (e.stddev() / std::sqrt(static_cast<double>(e.size())));
}

}  // namespace

double p_value_below_zero(const EstimateEnsemble& e) {
  boost::math::students_t dist(static_cast<double>(e.size() - 1));
  return boost::math::cdf(dist, t_statistic(e));
}

double p_value_above_zero(const EstimateEnsemble& e) {
  boost::math::students_t dist(static_cast<double>(e.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, t_statistic(e)));
}

bool significantly_positive(const EstimateEnsemble& e, double alpha, double eps_zero) {
  if (e.deterministic()) return e.mean() > eps_zero;
  return p_value_above_zero(e) < alpha;
}

bool significantly_negative(const EstimateEnsemble& e, double alpha, double eps_zero) {
  if (e.deterministic()) return e.mean() < -eps_zero;
  return p_value_below_zero(e) < alpha;
}

double g_test_p_value(double mi_nats, std::size_t n_samples, double dof) {
  if (dof <= 0.0) return 1.0;
  const double g = std::max(0.0, 2.0 * static_cast<double>(n_samples) * mi_nats);
  boost::math::chi_squared dist(dof);
  return boost::math::cdf(boost::math::complement(dist, g));
}

}  // namespace pidf
