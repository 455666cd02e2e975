#pragma once

#include <span>
#include <vector>

namespace pbit::stats {

// Total variation distance: 0.5 * sum |p_i - q_i| (the distribution metric
// used by the distribution-equality checks throughout).
double tv_distance(std::span<const double> p, std::span<const double> q);

// One-sample Kolmogorov-Smirnov p-value against Exponential(mean).
double ks_exponential_pvalue(std::vector<double> samples, double mean);

// R^2 of the least-squares line y = a + b x.
double r_squared(std::span<const double> x, std::span<const double> y);

// Standard error of a Bernoulli frequency estimate.
double binomial_sigma(double p, std::size_t n);

}  // namespace pbit::stats
