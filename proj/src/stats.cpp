#include "levyarc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace levyarc {

double kolmogorov_p(double lambda) {
    if (lambda <= 0.0) return 1.0;
    if (lambda > 10.0) return 0.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 200; ++k) {
        const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
        sum += term;
        sign = -sign;
        if (std::abs(term) < 1e-18) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_one_sample(std::span<const double> sample,
                       const std::function<double(double)>& cdf) {
    if (sample.empty()) throw DomainError("ks_one_sample: empty sample");
    std::vector<double> x(sample.begin(), sample.end());
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = cdf(x[i]);
        d = std::max(d, std::abs((i + 1.0) / n - f));
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    }
    KsResult r;
    r.stat = d;
    r.n = x.size();
    const double sn = std::sqrt(n);
    r.p_value = kolmogorov_p((sn + 0.12 + 0.11 / sn) * d);
    return r;
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw DomainError("ks_two_sample: empty sample");
    std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double n = static_cast<double>(x.size()), m = static_cast<double>(y.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= v) ++i;
        while (j < y.size() && y[j] <= v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
    }
    KsResult r;
    r.stat = d;
    r.n = x.size();
    r.m = y.size();
    const double ne = n * m / (n + m);
    const double sn = std::sqrt(ne);
    r.p_value = kolmogorov_p((sn + 0.12 + 0.11 / sn) * d);
    return r;
}

}  // namespace levyarc
