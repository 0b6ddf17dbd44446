#include "levyarc/rng.hpp"

#include <algorithm>
#include <cmath>

namespace levyarc {

namespace {

constexpr std::uint64_t kPhiloxM0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kPhiloxM1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;  // golden ratio
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;  // sqrt(3) - 1

inline std::uint64_t mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t* hi) {
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    *hi = static_cast<std::uint64_t>(p >> 64);
    return static_cast<std::uint64_t>(p);
}

}  // namespace

std::array<std::uint64_t, 4> Philox4x64::block(const std::array<std::uint64_t, 4>& counter,
                                               const std::array<std::uint64_t, 2>& key) {
    std::array<std::uint64_t, 4> s = counter;
    std::uint64_t k0 = key[0], k1 = key[1];
    for (int round = 0; round < 10; ++round) {
        std::uint64_t hi0, hi1;
        const std::uint64_t lo0 = mulhilo(kPhiloxM0, s[0], &hi0);
        const std::uint64_t lo1 = mulhilo(kPhiloxM1, s[2], &hi1);
        s = {hi1 ^ s[1] ^ k0, lo1, hi0 ^ s[3] ^ k1, lo0};
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    return s;
}

std::uint64_t Rng::next_u64() {
    if (buf_pos_ == 4) {
        buf_ = Philox4x64::block(ctr_, key_);
        ++ctr_[1];  // next block within this (seed, stream, index) cell
        buf_pos_ = 0;
    }
    return buf_[buf_pos_++];
}

double Rng::uniform() {
    // 53-bit mantissa, centered: lands strictly inside (0, 1)
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::exponential() { return -std::log(uniform()); }

double Rng::normal() {
    if (have_cached_normal_) {
        have_cached_normal_ = false;
        return cached_normal_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double t = 2.0 * kPi * uniform();
    cached_normal_ = r * std::sin(t);
    have_cached_normal_ = true;
    return r * std::cos(t);
}

double Rng::gamma(double shape) {
    if (!(shape > 0.0)) throw DomainError("Rng::gamma: shape must be positive");
    if (shape < 1.0) {
        // boost: G_a = G_{a+1} * U^{1/a}
        const double u = uniform();
        return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    // Marsaglia & Tsang (2000) squeeze method
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double Rng::positive_stable(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw DomainError("Rng::positive_stable: alpha must lie in (0,1)");
    // Kanter's construction: S = (a(theta)/W)^((1-alpha)/alpha) with
    // a(theta) = sin((1-alpha)theta) sin(alpha theta)^(alpha/(1-alpha))
    //            / sin(theta)^(1/(1-alpha)),  theta ~ U(0,pi), W ~ Exp(1).
    // Laplace transform normalization: E exp(-l S) = exp(-l^alpha).
    const double theta = kPi * uniform();
    const double w = exponential();
    const double r = 1.0 / (1.0 - alpha);
    const double a = std::sin((1.0 - alpha) * theta) *
                     std::pow(std::sin(alpha * theta), alpha * r) /
                     std::pow(std::sin(theta), r);
    return std::pow(a / w, (1.0 - alpha) / alpha);
}

double Rng::skew_for_positivity(double alpha, double rho) {
    if (!(alpha > 0.0) || !(alpha <= 2.0)) throw DomainError("stable: alpha must lie in (0,2]");
    if (!(rho > 0.0) || !(rho < 1.0)) throw DomainError("stable: rho must lie in (0,1)");
    if (alpha == 2.0) {
        if (rho != 0.5) throw DomainError("stable: alpha=2 requires rho=1/2");
        return 0.0;
    }
    if (alpha == 1.0) {
        if (rho != 0.5)
            throw DomainError("stable: alpha=1 attains only rho=1/2 (strictly stable Cauchy)");
        return 0.0;
    }
    if (alpha > 1.0) {
        const double lo = 1.0 - 1.0 / alpha, hi = 1.0 / alpha;
        if (rho < lo || rho > hi)
            throw DomainError("stable: rho outside attainable range [1-1/alpha, 1/alpha]");
    }
    // rho = 1/2 + arctan(beta tan(pi alpha/2)) / (pi alpha)
    const double t = std::tan(kPi * alpha * (rho - 0.5));
    const double beta = t / std::tan(kPi * alpha / 2.0);
    return std::clamp(beta, -1.0, 1.0);
}

double Rng::stable_cms(double alpha, double beta_skew) {
    // Chambers-Mallows-Stuck with Weron's corrected scale factor; char.
    // function exp(-|t|^alpha (1 - i beta tan(pi alpha/2) sgn t)), alpha != 1.
    const double u = kPi * (uniform() - 0.5);
    const double w = exponential();
    const double tb = beta_skew * std::tan(kPi * alpha / 2.0);
    const double b = std::atan(tb) / alpha;
    const double s = std::pow(1.0 + tb * tb, 0.5 / alpha);
    return s * std::sin(alpha * (u + b)) / std::pow(std::cos(u), 1.0 / alpha) *
           std::pow(std::cos(u - alpha * (u + b)) / w, (1.0 - alpha) / alpha);
}

double Rng::stable(double alpha, double rho) {
    return stable_given_skew(alpha, skew_for_positivity(alpha, rho));
}

double Rng::stable_given_skew(double alpha, double beta_skew) {
    if (alpha == 1.0) {
        // symmetric Cauchy (the only strictly stable alpha = 1 case here)
        return std::tan(kPi * (uniform() - 0.5));
    }
    return stable_cms(alpha, beta_skew);
}

std::uint64_t Rng::poisson(double mean) {
    if (!(mean >= 0.0)) throw DomainError("Rng::poisson: mean must be nonnegative");
    std::uint64_t total = 0;
    // chunk so exp(-mean) stays representable and the loop stays short
    while (mean > 30.0) {
        double chunk = 30.0;
        const double l = std::exp(-chunk);
        std::uint64_t k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform();
        } while (p > l);
        total += k - 1;
        mean -= chunk;
    }
    const double l = std::exp(-mean);
    std::uint64_t k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= uniform();
    } while (p > l);
    return total + k - 1;
}

}  // namespace levyarc
