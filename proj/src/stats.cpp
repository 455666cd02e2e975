#include "pbit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pbit::stats {

double tv_distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw std::invalid_argument("tv_distance: size mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p[i] - q[i]);
    return 0.5 * acc;
}

namespace {

// Asymptotic Kolmogorov distribution complement, Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_q(double lambda) {
    if (lambda < 1e-3) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        if (term < 1e-12) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

double ks_exponential_pvalue(std::vector<double> samples, double mean) {
    if (samples.empty() || mean <= 0) throw std::invalid_argument("ks: bad input");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double cdf = 1.0 - std::exp(-samples[i] / mean);
        d = std::max(d, std::abs(cdf - (i + 1) / n));
        d = std::max(d, std::abs(cdf - i / n));
    }
    double sqrt_n = std::sqrt(n);
    return kolmogorov_q(d * (sqrt_n + 0.12 + 0.11 / sqrt_n));
}

double r_squared(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("r_squared: bad input");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    double cov = sxy - sx * sy / n;
    double vx = sxx - sx * sx / n;
    double vy = syy - sy * sy / n;
    if (vx <= 0 || vy <= 0) return 1.0;  // degenerate: all points identical
    return (cov * cov) / (vx * vy);
}

double binomial_sigma(double p, std::size_t n) {
    return std::sqrt(std::max(p * (1.0 - p), 1e-12) / static_cast<double>(n));
}

}  // namespace pbit::stats
