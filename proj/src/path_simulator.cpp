#include "levyarc/path_simulator.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <optional>

#include "levyarc/distributions.hpp"
#include "levyarc/parallel.hpp"
#include "levyarc/sample_io.hpp"

namespace levyarc {

namespace {

std::mutex cache_dir_mutex;
std::string cache_dir_value;

std::string cache_path_for(const std::string& key) {
    const std::string dir = sample_cache_dir();
    if (dir.empty()) return "";
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a_hash(key)));
    return dir + "/" + buf + ".levysmp";
}

std::optional<std::vector<double>> cache_fetch(const std::string& path, const std::string& key,
                                               std::size_t count, std::uint64_t seed) {
    if (path.empty()) return std::nullopt;
    try {
        SampleFile f = read_sample_file(path);
        if (f.samples.size() == count && f.seed == seed && f.config_hash == fnv1a_hash(key))
            return std::move(f.samples);
    } catch (const IoError&) {
        // missing or corrupt cache entries are recomputed below
    }
    return std::nullopt;
}

void cache_store(const std::string& path, const std::string& key,
                 std::span<const double> samples, std::uint64_t seed) {
    if (path.empty()) return;
    write_sample_file(path, samples, seed, fnv1a_hash(key), key);
}

std::string exp_functional_cache_key(const IncrementSampler& s, const PathConfig& cfg,
                                     std::size_t n, std::uint64_t seed) {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "exp-functional|%s|%d|%.17g|%.17g|%.17g|%.17g|%.17g|%.17g|%.17g|%.17g|%.17g|"
                  "%.17g|%.17g|%.17g|%zu|%.17g|%zu|%llu",
                  s.label.c_str(), int(s.kind), s.drift, s.sigma, s.alpha, s.rho,
                  s.small_jump_cutoff, s.gaussian_correction, s.plus.rate, s.minus.rate,
                  s.kill_rate, s.mean_drift, cfg.dt, cfg.stop_epsilon, cfg.max_steps,
                  cfg.kill_rate, n, static_cast<unsigned long long>(seed));
    return buf;
}

std::uint64_t stream_tag(const char* name, std::initializer_list<double> params) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    auto mix = [&h](const void* p, std::size_t n) {
        const auto* b = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= b[i];
            h *= 1099511628211ULL;
        }
    };
    for (const char* c = name; *c; ++c) mix(c, 1);
    for (double v : params) mix(&v, sizeof v);
    return h;
}

// Main quantile table: cdf levels k / size up to conditional tail mass
// 1/kTailStartInv, then a geometric tail table down to mass kTailFloor,
// log-spaced because power and exponential tails are near-linear in
// (log v, log y).  The tail region starts early: linear interpolation
// overshoots the convex quantile, and with thousands of jumps per unit time
// a per-jump bias of 1e-6 is visible in the moment generating function.
constexpr std::size_t kQuantileBins = 4096;
constexpr std::size_t kTailStartInv = 256;
constexpr std::size_t kTailBins = 256;
constexpr double kTailFloor = 1e-9;
constexpr std::size_t kLinearEnd = kQuantileBins - kQuantileBins / kTailStartInv;

// y >= cutoff with tail(y) = target, by bracketed bisection; lo is a known
// lower bracket (tail(lo) >= target).
double invert_tail(const std::function<double(double)>& tail, double lo, double target) {
    double hi = lo;
    double span = std::max(lo, 1.0);
    while (tail(hi) > target) {
        hi += span;
        span *= 2.0;
        if (hi > 1e15) throw QuadratureError("jump tail does not reach the quantile level");
    }
    for (int it = 0; it < 120 && hi - lo > 1e-13 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (tail(mid) > target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

void build_side(JumpSide& side, double cutoff) {
    side.quantile.resize(kLinearEnd + 1 + kTailBins);
    side.quantile[0] = cutoff;
    for (std::size_t k = 1; k <= kLinearEnd; ++k) {
        const double target = side.rate * (1.0 - double(k) / kQuantileBins);
        side.quantile[k] = invert_tail(side.tail, side.quantile[k - 1], target);
    }
    // tail entries at conditional mass (1/kTailStartInv) * r^j, log y stored;
    // the j = 0 level coincides with the last linear entry
    const double r = std::pow(kTailFloor * kTailStartInv, 1.0 / (kTailBins - 1));
    double v = 1.0 / kTailStartInv;
    double prev = side.quantile[kLinearEnd - 1];
    for (std::size_t j = 0; j < kTailBins; ++j) {
        prev = invert_tail(side.tail, prev, side.rate * v);
        side.quantile[kLinearEnd + 1 + j] = std::log(prev);
        v *= r;
    }
}

double side_magnitude(const JumpSide& side, Rng& rng) {
    const double u = rng.uniform();
    const double pos = u * kQuantileBins;
    const auto idx = static_cast<std::size_t>(pos);
    if (idx < kLinearEnd) {
        const double frac = pos - double(idx);
        return side.quantile[idx] + frac * (side.quantile[idx + 1] - side.quantile[idx]);
    }
    // conditional tail mass v <= 1/kTailStartInv; interpolate the geometric table
    const double v = std::max(1.0 - u, kTailFloor);
    const double r = std::pow(kTailFloor * kTailStartInv, 1.0 / (kTailBins - 1));
    double j = std::log(v * kTailStartInv) / std::log(r);
    j = std::clamp(j, 0.0, double(kTailBins - 1));
    const auto j0 = static_cast<std::size_t>(std::min(j, double(kTailBins - 2)));
    const double frac = j - double(j0);
    const double a = side.quantile[kLinearEnd + 1 + j0];
    const double b = side.quantile[kLinearEnd + 1 + j0 + 1];
    return std::exp(a + frac * (b - a));
}

double finite_or_throw(double v, const char* what) {
    if (!std::isfinite(v)) throw QuadratureError(std::string(what) + " is not finite");
    return v;
}

}  // namespace

double IncrementSampler::increment(Rng& rng, double dt) const {
    switch (kind) {
        case Kind::brownian_drift:
            return drift * dt + sigma * std::sqrt(dt) * rng.normal();
        case Kind::stable:
            return std::pow(dt, 1.0 / alpha) *
                   rng.stable_given_skew(alpha, Rng::skew_for_positivity(alpha, rho));
        case Kind::compound_poisson_approx: {
            double x = drift * dt;
            if (sigma > 0.0) x += sigma * std::sqrt(dt) * rng.normal();
            const std::uint64_t jumps = rng.poisson(jump_rate * dt);
            if (minus.rate == 0.0) {
                for (std::uint64_t j = 0; j < jumps; ++j) x += side_magnitude(plus, rng);
            } else if (plus.rate == 0.0) {
                for (std::uint64_t j = 0; j < jumps; ++j) x -= side_magnitude(minus, rng);
            } else {
                for (std::uint64_t j = 0; j < jumps; ++j) {
                    const bool up = rng.uniform() * jump_rate < plus.rate;
                    x += up ? side_magnitude(plus, rng) : -side_magnitude(minus, rng);
                }
            }
            return x;
        }
    }
    throw DomainError("IncrementSampler: unknown kind");
}

IncrementSampler make_sampler(const CharExponent& psi, double epsilon) {
    if (!(epsilon > 0.0)) throw DomainError("make_sampler: epsilon must be positive");
    IncrementSampler s;
    s.kill_rate = psi.killing;
    s.label = psi.label;

    if (!psi.quadruplet_complete && psi.label == "stable" && psi.params.size() == 2) {
        s.kind = IncrementSampler::Kind::stable;
        s.alpha = psi.params[0];
        s.rho = psi.params[1];
        (void)Rng::skew_for_positivity(s.alpha, s.rho);
        return s;
    }

    if (psi.has_measure()) {
        const LevyMeasureSpec& m = *psi.measure;
        s.kind = IncrementSampler::Kind::compound_poisson_approx;
        s.small_jump_cutoff = epsilon;
        boost::math::quadrature::tanh_sinh<double> quad;
        auto safe = [](const std::function<double(double)>& f) {
            return [f](double y) {
                const double v = f(y);
                return std::isfinite(v) ? v : 0.0;
            };
        };
        double correction = 0.0;
        double compensator = 0.0;
        if (m.tail_plus) {
            s.plus.rate = finite_or_throw(m.tail_plus(epsilon), "positive jump rate");
            s.plus.tail = m.tail_plus;
            correction += quad.integrate(
                safe([&m](double y) { return y * y * m.density(y); }), 0.0, epsilon);
            if (epsilon < 1.0) {
                compensator +=
                    quad.integrate([&m](double y) { return y * m.density(y); }, epsilon, 1.0);
            }
            build_side(s.plus, epsilon);
        }
        if (m.tail_minus) {
            s.minus.rate = finite_or_throw(m.tail_minus(epsilon), "negative jump rate");
            s.minus.tail = m.tail_minus;
            correction += quad.integrate(
                safe([&m](double y) { return y * y * m.density(-y); }), 0.0, epsilon);
            if (epsilon < 1.0) {
                compensator -=
                    quad.integrate([&m](double y) { return y * m.density(-y); }, epsilon, 1.0);
            }
            build_side(s.minus, epsilon);
        }
        s.gaussian_correction = finite_or_throw(correction, "small-jump variance");
        s.jump_rate = s.plus.rate + s.minus.rate;
        s.drift = psi.drift - finite_or_throw(compensator, "jump compensator");
        s.sigma = std::sqrt(psi.gaussian * psi.gaussian + correction);
        s.mean_drift = find_rho(psi).psi_prime0;
        return s;
    }

    if (!psi.quadruplet_complete) {
        throw DomainError("make_sampler: exponent '" + psi.label +
                          "' has no Levy measure or exact increment rule");
    }
    s.kind = IncrementSampler::Kind::brownian_drift;
    s.drift = psi.drift;
    s.sigma = psi.gaussian;
    s.mean_drift = psi.drift;
    return s;
}

std::vector<double> exp_functional(const IncrementSampler& sampler, const PathConfig& cfg,
                                   std::size_t n, std::uint64_t seed) {
    if (!(cfg.dt > 0.0)) throw DomainError("exp_functional: dt must be positive");
    if (!(cfg.stop_epsilon > 0.0 && cfg.stop_epsilon < 1.0))
        throw DomainError("exp_functional: stop_epsilon must be in (0,1)");
    if (cfg.max_steps == 0) throw DomainError("exp_functional: max_steps must be positive");
    if (cfg.kill_rate < 0.0) throw DomainError("exp_functional: kill_rate must be >= 0");

    const double q = sampler.kill_rate + cfg.kill_rate;
    const bool killed = q > 0.0;
    if (!killed && !(sampler.mean_drift < 0.0)) {
        throw DomainError(
            "exp_functional: exponent is outside class N (needs killing or a negative mean "
            "drift)");
    }
    const double decay = killed ? 0.0 : -sampler.mean_drift;
    const std::uint64_t tag = stream_tag("exp-functional", {cfg.dt, q});

    std::string cache_key;
    std::string cache_file;
    if (!sample_cache_dir().empty()) {
        cache_key = exp_functional_cache_key(sampler, cfg, n, seed);
        cache_file = cache_path_for(cache_key);
        if (auto hit = cache_fetch(cache_file, cache_key, n, seed)) return std::move(*hit);
    }

    std::vector<double> out(n);
    std::atomic<std::size_t> exhausted{0};
    parallel_for(n, [&](std::size_t i) {
        Rng rng(seed, tag, i);
        double w = 1.0;
        double acc = 0.0;
        if (killed) {
            const double horizon = rng.exponential() / q;
            auto steps = static_cast<std::size_t>(horizon / cfg.dt);
            bool cut = false;
            if (steps > cfg.max_steps) {
                steps = cfg.max_steps;
                cut = true;
                exhausted.fetch_add(1, std::memory_order_relaxed);
            }
            for (std::size_t k = 0; k < steps; ++k) {
                const double nw = w * std::exp(sampler.increment(rng, cfg.dt));
                acc += 0.5 * cfg.dt * (w + nw);
                w = nw;
            }
            const double rem = horizon - double(steps) * cfg.dt;
            if (!cut && rem > 0.0) {
                const double nw = w * std::exp(sampler.increment(rng, rem));
                acc += 0.5 * rem * (w + nw);
            }
        } else {
            std::size_t k = 0;
            for (; k < cfg.max_steps; ++k) {
                const double nw = w * std::exp(sampler.increment(rng, cfg.dt));
                acc += 0.5 * cfg.dt * (w + nw);
                w = nw;
                if (w < cfg.stop_epsilon * decay * acc) break;
            }
            if (k == cfg.max_steps) exhausted.fetch_add(1, std::memory_order_relaxed);
        }
        out[i] = acc;
    });
    if (exhausted.load() * 100 > n) {
        throw SimulationError("exp_functional: over 1% of paths exhausted max_steps");
    }
    cache_store(cache_file, cache_key, out, seed);
    return out;
}

std::vector<std::vector<double>> stable_supremum_ladder(double alpha, double rho,
                                                        std::size_t base_steps, int levels,
                                                        std::size_t n, std::uint64_t seed) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw DomainError("stable_supremum: alpha must be in (0,2)");
    if (!(rho > 0.0 && rho < 1.0)) throw DomainError("stable_supremum: rho must be in (0,1)");
    if (base_steps == 0) throw DomainError("stable_supremum: need at least one step");
    if (levels < 1 || levels > 16) throw DomainError("stable_supremum: levels must be 1..16");
    const double beta_skew = Rng::skew_for_positivity(alpha, rho);

    const std::size_t finest = base_steps << (levels - 1);
    const double scale = std::pow(double(finest), -1.0 / alpha);
    const std::uint64_t tag =
        stream_tag("stable-supremum", {alpha, rho, double(finest)});

    std::string cache_key;
    std::string cache_file;
    if (!sample_cache_dir().empty()) {
        char buf[192];
        std::snprintf(buf, sizeof buf, "stable-supremum|%.17g|%.17g|%zu|%d|%zu|%llu", alpha, rho,
                      base_steps, levels, n, static_cast<unsigned long long>(seed));
        cache_key = buf;
        cache_file = cache_path_for(cache_key);
        if (auto hit = cache_fetch(cache_file, cache_key, std::size_t(levels) * n, seed)) {
            std::vector<std::vector<double>> split(static_cast<std::size_t>(levels));
            for (std::size_t l = 0; l < std::size_t(levels); ++l)
                split[l].assign(hit->begin() + static_cast<std::ptrdiff_t>(l * n),
                                hit->begin() + static_cast<std::ptrdiff_t>((l + 1) * n));
            return split;
        }
    }

    std::vector<std::vector<double>> raw(levels, std::vector<double>(n));
    parallel_for(n, [&](std::size_t i) {
        Rng rng(seed, tag, i);
        double x = 0.0;
        std::array<double, 16> mx;
        mx.fill(-kInf);
        for (std::size_t j = 1; j <= finest; ++j) {
            x += scale * rng.stable_given_skew(alpha, beta_skew);
            for (int l = levels - 1; l >= 0; --l) {
                const std::size_t stride_mask = (std::size_t{1} << (levels - 1 - l)) - 1;
                if ((j & stride_mask) != 0) break;
                if (x > mx[std::size_t(l)]) mx[std::size_t(l)] = x;
            }
        }
        for (int l = 0; l < levels; ++l) raw[std::size_t(l)][i] = mx[std::size_t(l)];
    });
    if (!cache_file.empty()) {
        std::vector<double> flat;
        flat.reserve(std::size_t(levels) * n);
        for (const std::vector<double>& level : raw)
            flat.insert(flat.end(), level.begin(), level.end());
        cache_store(cache_file, cache_key, flat, seed);
    }
    return raw;
}

std::vector<double> stable_supremum(double alpha, double rho, std::size_t n_steps,
                                    std::size_t n, std::uint64_t seed) {
    std::vector<double> raw = stable_supremum_ladder(alpha, rho, n_steps, 1, n, seed).front();
    std::vector<double> kept;
    kept.reserve(raw.size());
    for (double v : raw)
        if (v > 0.0) kept.push_back(v);
    return kept;
}

std::vector<double> dufresne_oracle(double a, double sigma, std::size_t n,
                                    std::uint64_t seed) {
    if (!(a < 0.0)) throw DomainError("dufresne_oracle: drift must be negative");
    if (!(sigma > 0.0)) throw DomainError("dufresne_oracle: sigma must be positive");
    const double nu = -2.0 * a / (sigma * sigma);
    std::vector<double> out = gamma_law(nu).sample(n, seed);
    const double scale = 2.0 / (sigma * sigma);
    for (double& x : out) x = scale / x;
    return out;
}

void set_sample_cache_dir(const std::string& dir) {
    std::lock_guard<std::mutex> lock(cache_dir_mutex);
    cache_dir_value = dir;
}

std::string sample_cache_dir() {
    std::lock_guard<std::mutex> lock(cache_dir_mutex);
    return cache_dir_value;
}

}  // namespace levyarc
