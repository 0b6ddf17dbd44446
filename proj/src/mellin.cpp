#include "levyarc/mellin.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include <boost/math/quadrature/gauss.hpp>

#include "levyarc/special_functions.hpp"

namespace levyarc {

namespace {

Complex gq(std::initializer_list<Complex> num, std::initializer_list<Complex> den) {
    return gamma_quotient(std::span<const Complex>(num.begin(), num.size()),
                          std::span<const Complex>(den.begin(), den.size()));
}

void require(bool ok, const char* msg) {
    if (!ok) throw DomainError(msg);
}

// one-sided derivative of Psi at 0 from inside the strip, Richardson pair
double exponent_derivative_at_zero(const CharExponent& psi) {
    const double sign = psi.strip.hi > 1e-3 ? 1.0 : -1.0;
    const double h1 = 1e-4, h2 = 1e-5;
    const double d1 = psi.eval(Complex(sign * h1, 0.0)).real() / (sign * h1);
    const double d2 = psi.eval(Complex(sign * h2, 0.0)).real() / (sign * h2);
    return d2 + (d2 - d1) * h2 / (h1 - h2);
}

void check_grid_point(const MellinFunction& m, Complex z) {
    for (Complex w : {z, z + Complex(1.0, 0.0)}) {
        if (std::abs(w.imag()) > 1e-8) continue;
        for (const MellinPole& p : m.poles) {
            if (std::abs(w.real() - p.location) < 1e-8) {
                throw PoleError("recurrence grid point touches a pole of the transform");
            }
        }
    }
}

}  // namespace

MellinFunction pareto_mellin(double rho) {
    require(rho > 0.0 && rho < 1.0, "pareto index must lie in (0,1)");
    MellinFunction m;
    m.name = "pareto";
    m.strip = Interval{rho, rho + 1.0};
    const double n0 = std::sin(kPi * rho) / kPi;  // 1/(Gamma(rho)Gamma(1-rho))
    m.eval = [rho, n0](Complex z) {
        return n0 * gamma_fn(z - rho) * gamma_fn(1.0 + rho - z);
    };
    for (int k : {-2, -1, 0, 1, 2}) m.poles.push_back({rho + k, 1});
    return m;
}

MellinFunction arcsine_mellin(double rho) {
    require(rho > 0.0 && rho < 1.0, "arc-sine index must lie in (0,1)");
    MellinFunction m;
    m.name = "arcsine";
    m.strip = Interval{1.0 - rho, kInf};
    m.eval = [rho](Complex z) { return gq({rho + z - 1.0}, {z, Complex(rho, 0.0)}); };
    for (int k : {0, 1, 2}) m.poles.push_back({1.0 - rho - k, 1});
    return m;
}

MellinFunction gamma_mellin(double a) {
    require(a > 0.0, "gamma shape must be positive");
    MellinFunction m;
    m.name = "gamma";
    m.strip = Interval{1.0 - a, kInf};
    m.eval = [a](Complex z) { return gq({a + z - 1.0}, {Complex(a, 0.0)}); };
    for (int k : {0, 1, 2}) m.poles.push_back({1.0 - a - k, 1});
    return m;
}

MellinFunction brownian_ef_mellin(double drift, double sigma) {
    require(sigma > 0.0, "volatility must be positive");
    require(drift < 0.0, "the exponential functional needs negative drift");
    const double nu = -2.0 * drift / (sigma * sigma);
    const double scale = 2.0 / (sigma * sigma);
    MellinFunction m;
    m.name = "brownian-ef";
    m.strip = Interval{-kInf, nu + 1.0};
    m.eval = [nu, scale](Complex z) {
        return std::exp((z - 1.0) * std::log(scale)) * gq({nu + 1.0 - z}, {Complex(nu, 0.0)});
    };
    for (int k : {0, 1, 2}) m.poles.push_back({nu + 1.0 + k, 1});
    return m;
}

MellinFunction tilted_stable_ef_mellin(double alpha, double rho) {
    require(alpha > 0.0 && alpha < 1.0, "stability index must lie in (0,1)");
    require(rho > 0.0 && rho < 1.0, "positivity parameter must lie in (0,1)");
    MellinFunction m;
    m.name = "tilted-stable-ef";
    m.strip = Interval{rho - 1.0, rho + 1.0};
    const Complex n0 = gq({Complex(alpha * (1.0 - rho), 0.0)},
                          {Complex(1.0 - rho, 0.0), Complex(rho, 0.0)});
    m.eval = [alpha, rho, n0](Complex z) {
        Complex w = z - rho;
        // Gamma(w)/Gamma(alpha w) has a removable point at w = 0 with limit alpha
        if (std::abs(w) < 1e-8) return n0 * alpha * gamma_fn(1.0 + rho - z);
        return n0 * gq({w, 1.0 + rho - z}, {alpha * w});
    };
    for (int k : {1, 2}) {
        m.poles.push_back({rho - k, 1});
        m.poles.push_back({rho + k, 1});
    }
    return m;
}

MellinFunction tilted_stable_dual_ef_mellin(double alpha, double rho) {
    require(alpha > 0.0 && alpha < 1.0, "stability index must lie in (0,1)");
    require(rho > 0.0 && rho < 1.0, "positivity parameter must lie in (0,1)");
    MellinFunction m;
    m.name = "tilted-stable-dual-ef";
    m.strip = Interval{-kInf, 2.0 - rho};
    m.eval = [alpha, rho](Complex z) {
        return gq({alpha * (2.0 - rho - z)}, {Complex(alpha * (1.0 - rho), 0.0)});
    };
    for (int k : {0, 1, 2}) m.poles.push_back({2.0 - rho + k / alpha, 1});
    return m;
}

MellinFunction frechet_ef_mellin(double alpha) {
    require(alpha > 0.0, "Frechet index must be positive");
    MellinFunction m;
    m.name = "frechet-ef";
    m.strip = Interval{-kInf, 1.0 + 1.0 / alpha};
    m.eval = [alpha](Complex z) { return gamma_fn(1.0 - alpha * (z - 1.0)); };
    for (int k : {1, 2, 3}) m.poles.push_back({1.0 + k / alpha, 1});
    return m;
}

MellinFunction mellin_registry(const std::string& name,
                               const std::map<std::string, double>& params) {
    auto take = [&](std::initializer_list<const char*> keys) {
        std::vector<double> out;
        for (const char* k : keys) {
            auto it = params.find(k);
            if (it == params.end()) {
                throw ConfigError("mellin form '" + name + "' needs parameter '" + k + "'");
            }
            out.push_back(it->second);
        }
        if (params.size() != keys.size()) {
            for (const auto& [k, v] : params) {
                if (std::find_if(keys.begin(), keys.end(), [&](const char* want) {
                        return k == want;
                    }) == keys.end()) {
                    throw ConfigError("mellin form '" + name + "' has no parameter '" + k + "'");
                }
            }
        }
        return out;
    };

    if (name == "pareto") return pareto_mellin(take({"rho"})[0]);
    if (name == "arcsine") return arcsine_mellin(take({"rho"})[0]);
    if (name == "gamma") return gamma_mellin(take({"a"})[0]);
    if (name == "brownian-ef") {
        auto v = take({"a", "sigma"});
        return brownian_ef_mellin(v[0], v[1]);
    }
    if (name == "lamperti-ef" || name == "tilted-stable-ef") {
        auto v = take({"alpha", "rho"});
        return tilted_stable_ef_mellin(v[0], v[1]);
    }
    if (name == "tilted-stable-dual-ef") {
        auto v = take({"alpha", "rho"});
        return tilted_stable_dual_ef_mellin(v[0], v[1]);
    }
    if (name == "frechet-ef") return frechet_ef_mellin(take({"alpha"})[0]);
    throw ConfigError("unknown mellin form: " + name);
}

RecurrenceSpec recurrence_from_exponent(const CharExponent& psi) {
    RecurrenceSpec rec;
    rec.valid = psi.strip;
    rec.valid_desc = "Re z in [" + std::to_string(psi.strip.lo) + ", " +
                     std::to_string(psi.strip.hi) + "]";
    const double psi0 = psi.eval(Complex(0.0, 0.0)).real();
    double d0 = kNaN;
    if (std::abs(psi0) < 1e-12) d0 = exponent_derivative_at_zero(psi);
    CharExponent p = psi;
    rec.ratio = [p, psi0, d0](Complex z) -> Complex {
        if (std::abs(psi0) < 1e-12 && std::abs(z) < 1e-8) {
            if (!std::isfinite(d0) || d0 == 0.0) {
                throw PoleError("recurrence ratio undefined at 0");
            }
            return Complex(-1.0 / d0, 0.0);
        }
        Complex ps = p.eval(z);
        if (std::abs(ps) < 1e-13 * (1.0 + std::abs(z))) {
            throw PoleError("recurrence ratio singular at a zero of the exponent");
        }
        return -z / ps;
    };
    return rec;
}

double verify_recurrence(const MellinFunction& m, const CharExponent& psi,
                         const std::vector<Complex>& grid) {
    double worst = 0.0;
    for (Complex z : grid) {
        if (std::abs(z) < 1e-9) {
            throw PoleError("recurrence grid point at the origin zero of the exponent");
        }
        check_grid_point(m, z);
        Complex ps = psi.eval(z);
        if (std::abs(ps) < 1e-12 * (1.0 + std::abs(z))) {
            throw PoleError("recurrence grid point at a zero of the exponent");
        }
        Complex lhs = m.eval(z + 1.0) * ps;
        Complex rhs = z * m.eval(z);
        double res = std::abs(lhs + rhs) / (std::abs(lhs) + std::abs(rhs) + 1e-300);
        worst = std::max(worst, res);
    }
    return worst;
}

double verify_recurrence(const MellinFunction& m, const RecurrenceSpec& rec,
                         const std::vector<Complex>& grid) {
    double worst = 0.0;
    for (Complex z : grid) {
        check_grid_point(m, z);
        Complex lhs = m.eval(z + 1.0);
        Complex rhs = rec.ratio(z) * m.eval(z);
        double res = std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1e-300);
        worst = std::max(worst, res);
    }
    return worst;
}

Complex extend_by_recurrence(const MellinFunction& m, const RecurrenceSpec& rec, Complex z) {
    auto touches_pole = [&](Complex w) {
        if (std::abs(w.imag()) > 1e-9) return false;
        for (const MellinPole& p : m.poles) {
            if (std::abs(w.real() - p.location) < 1e-9) return true;
        }
        return false;
    };

    Complex acc(1.0, 0.0);
    Complex w = z;
    int steps = 0;
    while (w.real() >= m.strip.hi) {
        if (++steps > 64) throw DomainError("target not reachable by integer shifts");
        w -= 1.0;
        if (touches_pole(w) || touches_pole(w + 1.0)) {
            throw PoleError("recurrence path crosses a pole of the transform");
        }
        acc *= rec.ratio(w);
    }
    while (w.real() <= m.strip.lo) {
        if (++steps > 64) throw DomainError("target not reachable by integer shifts");
        if (touches_pole(w) || touches_pole(w + 1.0)) {
            throw PoleError("recurrence path crosses a pole of the transform");
        }
        Complex r = rec.ratio(w);
        if (std::abs(r) < 1e-300) throw PoleError("recurrence ratio vanishes on the path");
        acc /= r;
        w += 1.0;
    }
    if (touches_pole(w)) throw PoleError("recurrence lands on a pole of the transform");
    return acc * m.eval(w);
}

Complex extend_by_recurrence(const MellinFunction& m, const CharExponent& psi, Complex z) {
    return extend_by_recurrence(m, recurrence_from_exponent(psi), z);
}

MellinEstimate mc_mellin(std::span<const double> samples, Complex z) {
    if (samples.empty()) throw DomainError("mc_mellin needs a nonempty sample");
    const std::size_t n = samples.size();
    std::vector<Complex> vals(n);
    std::vector<double> mags(n);
    Complex sum(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = samples[i];
        if (!(x > 0.0)) throw DomainError("mc_mellin samples must be positive");
        vals[i] = std::exp((z - 1.0) * std::log(x));
        mags[i] = std::abs(vals[i]);
        sum += vals[i];
    }
    MellinEstimate out;
    out.estimate = sum / static_cast<double>(n);
    if (n > 1) {
        double vr = 0.0, vi = 0.0;
        for (const Complex& v : vals) {
            vr += (v.real() - out.estimate.real()) * (v.real() - out.estimate.real());
            vi += (v.imag() - out.estimate.imag()) * (v.imag() - out.estimate.imag());
        }
        out.standard_error = std::sqrt((vr + vi) / (static_cast<double>(n) * (n - 1.0)));
    }
    const std::size_t top = std::max<std::size_t>(1, n / 1000);
    std::nth_element(mags.begin(), mags.begin() + (top - 1), mags.end(), std::greater<>());
    const double top_mass = std::accumulate(mags.begin(), mags.begin() + top, 0.0);
    const double total = top_mass + std::accumulate(mags.begin() + top, mags.end(), 0.0);
    out.heavy_tail = total > 0.0 && top_mass > 0.5 * total;
    return out;
}

BernsteinGamma wiener_hopf_bernstein_gamma(double alpha, double rho) {
    require(alpha > 0.0 && alpha < 1.0, "stability index must lie in (0,1)");
    require(rho > 0.0 && rho < 1.0, "positivity parameter must lie in (0,1)");
    BernsteinGamma w;
    w.name = "wiener-hopf";
    w.phi = [alpha, rho](Complex z) {
        return alpha * z *
               gq({alpha * (1.0 - rho) + alpha * z}, {1.0 - alpha * rho + alpha * z});
    };
    const Complex n0 = gq({Complex(1.0 - rho, 0.0)}, {Complex(alpha * (1.0 - rho), 0.0)});
    w.closed_form = [alpha, rho, n0](Complex z) {
        return n0 * gq({z, alpha * (z - rho)}, {z - rho});
    };
    return w;
}

Complex bernstein_gamma_eval(const BernsteinGamma& w, Complex z) {
    if (!w.closed_form) {
        throw DomainError("no closed form registered for this Bernstein-gamma function");
    }
    return w.closed_form(z);
}

double bernstein_gamma_residual(const BernsteinGamma& w, const std::vector<Complex>& grid) {
    double worst = 0.0;
    for (Complex z : grid) {
        Complex lhs = bernstein_gamma_eval(w, z + 1.0);
        Complex rhs = w.phi(z) * bernstein_gamma_eval(w, z);
        worst = std::max(worst,
                         std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1e-300));
    }
    return worst;
}

namespace {

struct EnvelopeFit {
    double log_k = 0.0;
    double p = 0.0;
    double b = 0.0;
    int used = 0;
    double last_finite_t = 0.0;
};

// least squares of log|g(t)| = log_k + p log t - b t on a doubling grid
EnvelopeFit fit_decay_envelope(const std::function<double(double)>& log_abs) {
    std::vector<std::pair<double, double>> pts;
    double last_finite = 0.0;
    for (double t : {3.0, 6.0, 12.0, 24.0, 48.0, 96.0}) {
        double y;
        try {
            y = log_abs(t);
        } catch (const std::exception&) {
            continue;
        }
        if (!std::isfinite(y)) continue;
        last_finite = t;
        pts.push_back({t, y});
    }
    EnvelopeFit f;
    f.used = static_cast<int>(pts.size());
    f.last_finite_t = last_finite;
    if (f.used < 3) return f;
    double a[3][3] = {};
    double rhs[3] = {};
    for (auto [t, y] : pts) {
        const double row[3] = {1.0, std::log(t), -t};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) a[i][j] += row[i] * row[j];
            rhs[i] += row[i] * y;
        }
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        }
        std::swap(a[col], a[piv]);
        std::swap(rhs[col], rhs[piv]);
        for (int r = col + 1; r < 3; ++r) {
            const double m = a[r][col] / a[col][col];
            for (int j = col; j < 3; ++j) a[r][j] -= m * a[col][j];
            rhs[r] -= m * rhs[col];
        }
    }
    double sol[3];
    for (int r = 2; r >= 0; --r) {
        double s = rhs[r];
        for (int j = r + 1; j < 3; ++j) s -= a[r][j] * sol[j];
        sol[r] = s / a[r][r];
    }
    f.log_k = sol[0];
    f.p = sol[1];
    f.b = sol[2];
    return f;
}

// largest t where the envelope tail integral K t^p e^{-bt} / b stays above
// pi * 1e-9; the returned truncation carries a 30% safety margin
double solve_truncation(const EnvelopeFit& f) {
    const double target = std::log(kPi * 1e-9);
    double t = 30.0;
    for (int i = 0; i < 80; ++i) {
        double next = (f.log_k - std::log(f.b) + f.p * std::log(std::max(t, 2.0)) - target) / f.b;
        next = std::clamp(next, 5.0, 2e5);
        if (std::abs(next - t) < 1e-6 * t) {
            t = next;
            break;
        }
        t = next;
    }
    if (t >= 1.9e5) throw InsufficientDecay("truncation point exceeds the supported range");
    return 1.3 * t;
}

}  // namespace

double invert_to_density(const MellinFunction& m, double c, double x) {
    if (!(x > 0.0)) throw DomainError("density argument must be positive");
    if (!m.strip.contains(c)) {
        throw StripViolation("inversion line must lie inside the transform strip");
    }
    const double lx = std::log(x);

    auto line_log_abs = [&](double t) {
        const double a = std::abs(m.eval(Complex(c, t)));
        return a > 0.0 ? std::log(a) - c * lx : -kInf;
    };
    EnvelopeFit line = fit_decay_envelope(line_log_abs);

    if (line.used < 3 || line.b >= 0.02) {
        // straight-line trapezoid; an unusable fit means the transform
        // underflowed before t = 12, so any modest truncation is enough
        const double t_max = line.used < 3 ? std::max(15.0, line.last_finite_t + 5.0)
                                           : solve_truncation(line);
        const double h = std::min(0.05, kPi / (4.0 * std::abs(lx) + 4.0));
        const std::size_t n = static_cast<std::size_t>(std::ceil(t_max / h));
        double sum = 0.0;
        for (std::size_t k = 0; k <= n; ++k) {
            const double t = static_cast<double>(k) * h;
            const Complex g = Complex(0.0, 1.0) * m.eval(Complex(c, t)) *
                              std::exp(Complex(-c * lx, -t * lx));
            sum += (k == 0 || k == n) ? 0.5 * g.imag() : g.imag();
        }
        return sum * h / kPi;
    }

    if (line.p >= -0.05) {
        throw InsufficientDecay("transform does not decay along the inversion line");
    }
    if (std::abs(lx) < 1e-3) {
        throw InsufficientDecay("no contour decay available this close to x = 1");
    }

    // algebraic decay: tilt the rays into the wedge where x^{-z} decays
    const double phi = x < 1.0 ? 2.0 * kPi / 3.0 : kPi / 3.0;
    const Complex dir = std::polar(1.0, phi);
    auto ray_value = [&](double t) {
        const Complex z = Complex(c, 0.0) + t * dir;
        return dir * m.eval(z) * std::exp(-z * lx);
    };
    auto ray_log_abs = [&](double t) {
        const double a = std::abs(ray_value(t));
        return a > 0.0 ? std::log(a) : -kInf;
    };
    EnvelopeFit ray = fit_decay_envelope(ray_log_abs);
    if (ray.used < 3 || ray.b < 1e-3) {
        throw InsufficientDecay("tilted contour does not reach the truncation bound");
    }
    const double t_max = solve_truncation(ray);
    const double omega = std::abs(std::sin(phi) * lx);
    const double panel = std::min(2.0, kPi / std::max(omega, 0.5));
    const std::size_t n_panels = static_cast<std::size_t>(std::ceil(t_max / panel));
    if (n_panels > 200000) throw InsufficientDecay("tilted contour needs too many panels");
    using gauss = boost::math::quadrature::gauss<double, 16>;
    double sum = 0.0;
    for (std::size_t k = 0; k < n_panels; ++k) {
        const double a = static_cast<double>(k) * panel;
        const double b = std::min(a + panel, t_max);
        sum += gauss::integrate([&](double t) { return ray_value(t).imag(); }, a, b);
        if (b >= t_max) break;
    }
    return sum / kPi;
}

}  // namespace levyarc
