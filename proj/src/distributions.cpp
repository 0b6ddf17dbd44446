#include "levyarc/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "levyarc/parallel.hpp"
#include "levyarc/rng.hpp"
#include "levyarc/special_functions.hpp"

namespace levyarc {

namespace {

// Stream tag per law so different laws sampled under one seed decorrelate.
std::uint64_t stream_tag(const std::string& name, const std::vector<double>& params) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    auto mix = [&h](const void* p, std::size_t n) {
        const auto* b = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= b[i];
            h *= 1099511628211ULL;
        }
    };
    mix(name.data(), name.size());
    for (double v : params) mix(&v, sizeof v);
    return h;
}

std::vector<double> sample_by_index(std::size_t n, std::uint64_t seed, std::uint64_t tag,
                                    const std::function<double(Rng&)>& draw) {
    std::vector<double> out(n);
    parallel_for(n, [&](std::size_t i) {
        Rng r(seed, tag, i);
        out[i] = draw(r);
    });
    return out;
}

void require_strip(const Interval& strip, Complex z, const char* who) {
    if (!strip.contains(z.real()))
        throw StripViolation(std::string(who) + ": Mellin argument outside the moment strip");
}

}  // namespace

ClosedFormLaw gamma_law(double a) {
    if (!(a > 0.0)) throw DomainError("gamma_law: a must be positive");
    ClosedFormLaw law;
    law.name = "gamma";
    law.params = {a};
    law.mellin_strip = {1.0 - a, kInf};
    const std::uint64_t tag = stream_tag(law.name, law.params);
    law.sampler = [a, tag](std::size_t n, std::uint64_t seed) {
        return sample_by_index(n, seed, tag, [a](Rng& r) { return r.gamma(a); });
    };
    const double lga = std::lgamma(a);
    law.pdf = [a, lga](double x) {
        return x > 0.0 ? std::exp((a - 1.0) * std::log(x) - x - lga) : 0.0;
    };
    law.cdf = [a](double x) { return x > 0.0 ? inc_gamma_lower(a, x) : 0.0; };
    const Interval strip = law.mellin_strip;
    law.mellin = [a, lga, strip](Complex z) {
        require_strip(strip, z, "gamma_law");
        return std::exp(log_gamma(Complex(a, 0.0) + z - 1.0) - lga);
    };
    return law;
}

ClosedFormLaw arcsine_law(double rho) {
    if (!(rho > 0.0) || !(rho < 1.0)) throw DomainError("arcsine_law: rho must lie in (0,1)");
    ClosedFormLaw law;
    law.name = "arcsine";
    law.params = {rho};
    law.support = {0.0, 1.0};
    law.mellin_strip = {1.0 - rho, kInf};
    const std::uint64_t tag = stream_tag(law.name, law.params);
    law.sampler = [rho, tag](std::size_t n, std::uint64_t seed) {
        return sample_by_index(n, seed, tag, [rho](Rng& r) {
            const double g1 = r.gamma(rho);
            const double g2 = r.gamma(1.0 - rho);
            return g1 / (g1 + g2);
        });
    };
    const double c = std::sin(kPi * rho) / kPi;
    law.pdf = [rho, c](double x) {
        if (x <= 0.0 || x >= 1.0) return 0.0;
        return c * std::pow(x, rho - 1.0) * std::pow(1.0 - x, -rho);
    };
    law.cdf = [rho](double x) {
        if (x <= 0.0) return 0.0;
        if (x >= 1.0) return 1.0;
        return inc_beta(rho, 1.0 - rho, x);
    };
    const Interval strip = law.mellin_strip;
    const double lgr = std::lgamma(rho);
    law.mellin = [rho, lgr, strip](Complex z) {
        require_strip(strip, z, "arcsine_law");
        // B(rho+z-1, 1-rho) / B(rho, 1-rho) = Gamma(rho+z-1) / (Gamma(z) Gamma(rho))
        return std::exp(log_gamma(Complex(rho, 0.0) + z - 1.0) - log_gamma(z) - lgr);
    };
    return law;
}

ClosedFormLaw pareto_law(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("pareto_law: a, b must be positive");
    ClosedFormLaw law;
    law.name = "pareto";
    law.params = {a, b};
    law.mellin_strip = {1.0 - b, 1.0 + a};
    const std::uint64_t tag = stream_tag(law.name, law.params);
    law.sampler = [a, b, tag](std::size_t n, std::uint64_t seed) {
        return sample_by_index(n, seed, tag,
                               [a, b](Rng& r) { return r.gamma(b) / r.gamma(a); });
    };
    const double lb = std::log(beta_fn(a, b));
    law.pdf = [a, b, lb](double x) {
        if (x <= 0.0) return 0.0;
        return std::exp((b - 1.0) * std::log(x) - (a + b) * std::log1p(x) - lb);
    };
    law.cdf = [a, b](double x) { return x > 0.0 ? inc_beta(b, a, x / (1.0 + x)) : 0.0; };
    const Interval strip = law.mellin_strip;
    const double lgn = std::lgamma(a) + std::lgamma(b);
    law.mellin = [a, b, lgn, strip](Complex z) {
        require_strip(strip, z, "pareto_law");
        return std::exp(log_gamma(Complex(a + 1.0, 0.0) - z) + log_gamma(Complex(b - 1.0, 0.0) + z) -
                        lgn);
    };
    return law;
}

ClosedFormLaw positive_stable(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw DomainError("positive_stable: alpha must lie in (0,1)");
    ClosedFormLaw law;
    law.name = "positive-stable";
    law.params = {alpha};
    law.mellin_strip = {-kInf, 1.0 + alpha};
    const std::uint64_t tag = stream_tag(law.name, law.params);
    law.sampler = [alpha, tag](std::size_t n, std::uint64_t seed) {
        return sample_by_index(n, seed, tag,
                               [alpha](Rng& r) { return r.positive_stable(alpha); });
    };
    const Interval strip = law.mellin_strip;
    law.mellin = [alpha, strip](Complex z) {
        require_strip(strip, z, "positive_stable");
        const Complex s = z - 1.0;
        return std::exp(log_gamma(1.0 - s / alpha) - log_gamma(1.0 - s));
    };
    return law;
}

ClosedFormLaw length_biased_stable(double alpha, double gamma) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw DomainError("length_biased_stable: alpha must lie in (0,1)");
    if (!(gamma > 0.0)) throw DomainError("length_biased_stable: gamma must be positive");
    ClosedFormLaw law;
    law.name = "length-biased-stable";
    law.params = {alpha, gamma};
    law.mellin_strip = {-kInf, 1.0 + alpha * (1.0 + gamma)};
    const std::uint64_t tag = stream_tag(law.name, law.params);
    law.sampler = [alpha, gamma, tag](std::size_t n, std::uint64_t seed) {
        // importance resampling with weights S^(-alpha gamma)
        const std::size_t n_base = 20 * n;
        std::vector<double> base(n_base), w(n_base);
        parallel_for(n_base, [&](std::size_t i) {
            Rng r(seed, tag, i);
            base[i] = r.positive_stable(alpha);
            w[i] = std::pow(base[i], -alpha * gamma);
        });
        double wsum = 0.0, w2sum = 0.0;
        for (double v : w) {
            wsum += v;
            w2sum += v * v;
        }
        const double ess = wsum * wsum / w2sum;
        if (!(ess >= 0.01 * static_cast<double>(n_base)))
            throw SimulationError(
                "length_biased_stable: effective sample size collapsed (< 1% of base draw)");
        std::vector<double> cum(n_base);
        std::partial_sum(w.begin(), w.end(), cum.begin());
        const double total = cum.back();
        std::vector<double> out(n);
        parallel_for(n, [&](std::size_t i) {
            Rng r(seed, tag ^ 0x5ca1ab1eULL, i);
            const double u = r.uniform() * total;
            const auto it = std::lower_bound(cum.begin(), cum.end(), u);
            out[i] = base[static_cast<std::size_t>(it - cum.begin())];
        });
        return out;
    };
    const Interval strip = law.mellin_strip;
    law.mellin = [alpha, gamma, strip](Complex z) {
        require_strip(strip, z, "length_biased_stable");
        const Complex s = z - 1.0;
        // E S^s of the tilted law: Gamma(1+gamma-s/alpha) Gamma(1+alpha gamma)
        //                        / (Gamma(1+alpha gamma-s) Gamma(1+gamma))
        return std::exp(log_gamma(1.0 + gamma - s / alpha) - log_gamma(1.0 + alpha * gamma - s) +
                        std::lgamma(1.0 + alpha * gamma) - std::lgamma(1.0 + gamma));
    };
    return law;
}

ClosedFormLaw frechet_law(double alpha) {
    if (!(alpha > 0.0)) throw DomainError("frechet_law: alpha must be positive");
    ClosedFormLaw law;
    law.name = "frechet";
    law.params = {alpha};
    law.mellin_strip = {-kInf, 1.0 + 1.0 / alpha};
    const std::uint64_t tag = stream_tag(law.name, law.params);
    law.sampler = [alpha, tag](std::size_t n, std::uint64_t seed) {
        return sample_by_index(n, seed, tag,
                               [alpha](Rng& r) { return std::pow(r.exponential(), -alpha); });
    };
    law.pdf = [alpha](double x) {
        if (x <= 0.0) return 0.0;
        const double t = std::pow(x, -1.0 / alpha);
        return t / (alpha * x) * std::exp(-t);
    };
    law.cdf = [alpha](double x) { return x > 0.0 ? std::exp(-std::pow(x, -1.0 / alpha)) : 0.0; };
    const Interval strip = law.mellin_strip;
    law.mellin = [alpha, strip](Complex z) {
        require_strip(strip, z, "frechet_law");
        return std::exp(log_gamma(1.0 - alpha * (z - 1.0)));
    };
    return law;
}

ClosedFormLaw cauchy_squared() {
    ClosedFormLaw law;
    law.name = "cauchy-squared";
    law.params = {};
    law.mellin_strip = {0.5, 1.5};
    const std::uint64_t tag = stream_tag(law.name, law.params);
    law.sampler = [tag](std::size_t n, std::uint64_t seed) {
        return sample_by_index(n, seed, tag, [](Rng& r) {
            const double c = std::tan(kPi * (r.uniform() - 0.5));
            return c * c;
        });
    };
    law.pdf = [](double x) { return x > 0.0 ? 1.0 / (kPi * std::sqrt(x) * (1.0 + x)) : 0.0; };
    law.cdf = [](double x) { return x > 0.0 ? 2.0 / kPi * std::atan(std::sqrt(x)) : 0.0; };
    const Interval strip = law.mellin_strip;
    law.mellin = [strip](Complex z) {
        require_strip(strip, z, "cauchy_squared");
        // E[C^{2s}] = 1 / cos(pi s), s = z-1
        return 1.0 / std::cos(kPi * (z - 1.0));
    };
    return law;
}

}  // namespace levyarc
