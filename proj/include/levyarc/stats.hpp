#pragma once

#include <functional>
#include <span>

#include "levyarc/common.hpp"

namespace levyarc {

struct KsResult {
    double stat = 0.0;     // sup-norm distance
    double p_value = 1.0;  // asymptotic Kolmogorov p-value
    std::size_t n = 0;     // effective counts
    std::size_t m = 0;     // second sample (0 for one-sample)
};

// Asymptotic Kolmogorov survival function Q(lambda) = 2 sum (-1)^(k-1) e^(-2 k^2 lambda^2).
double kolmogorov_p(double lambda);

// One-sample KS against a continuous CDF; p-value uses Stephens' small-sample
// correction (sqrt(n) + 0.12 + 0.11/sqrt(n)) * D.
KsResult ks_one_sample(std::span<const double> sample, const std::function<double(double)>& cdf);

// Two-sample KS with effective size nm/(n+m).
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

}  // namespace levyarc
