#include "levyarc/levy_exponent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "levyarc/rng.hpp"
#include "levyarc/special_functions.hpp"

namespace levyarc {

namespace {

constexpr double kQuadTol = 1e-11;

// e^w - 1 - w; Taylor series inside |w| < 1/2 to avoid cancellation against
// the y^2-scale Levy mass near the origin
Complex expm1m(Complex w) {
    if (std::abs(w) < 0.5) {
        Complex term = w * w / 2.0;
        Complex sum = term;
        for (int k = 3; k <= 48; ++k) {
            term *= w / static_cast<double>(k);
            sum += term;
            if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
        }
        return sum;
    }
    return std::exp(w) - 1.0 - w;
}

double integrate_unit(const std::function<double(double)>& f, const char* what) {
    static thread_local boost::math::quadrature::tanh_sinh<double> ts;
    double err = 0.0, l1 = 0.0;
    std::size_t levels = 0;
    double v = 0.0;
    try {
        v = ts.integrate(f, 0.0, 1.0, kQuadTol, &err, &l1, &levels);
    } catch (const QuadratureError&) {
        throw;
    } catch (const std::exception& ex) {
        throw QuadratureError(std::string(what) + ": " + ex.what());
    }
    if (!std::isfinite(v) || err > 1e-6 * std::max(l1, 1e-12)) {
        throw QuadratureError(std::string(what) + ": quadrature on (0,1) did not converge");
    }
    return v;
}

double integrate_past_unit(const std::function<double(double)>& f, const char* what) {
    static thread_local boost::math::quadrature::exp_sinh<double> es;
    double err = 0.0, l1 = 0.0;
    std::size_t levels = 0;
    double v = 0.0;
    try {
        v = es.integrate([&f](double t) { return f(1.0 + t); }, kQuadTol, &err, &l1, &levels);
    } catch (const QuadratureError&) {
        throw;
    } catch (const std::exception& ex) {
        throw QuadratureError(std::string(what) + ": " + ex.what());
    }
    if (!std::isfinite(v) || err > 1e-6 * std::max(l1, 1e-12)) {
        throw QuadratureError(std::string(what) + ": quadrature on (1,inf) did not converge");
    }
    return v;
}

Complex jump_integral(const LevyMeasureSpec& m, Complex z) {
    const bool imag_needed = z.imag() != 0.0;
    Complex out{0.0, 0.0};

    auto dens = [&m](double y) -> double {
        double v = m.density ? m.density(y) : 0.0;
        if (!std::isfinite(v)) {
            // below 1e-30 the true contribution y^2 pi(y) of any admissible
            // measure is void at tolerance even though pi overflows a double
            if (std::abs(y) < 1e-30) return 0.0;
            throw QuadratureError("Levy density evaluates non-finite away from the origin");
        }
        return v;
    };

    auto add_side = [&](double sign, const std::function<double(double)>& tail) {
        auto near_part = [&](double y) { return expm1m(z * (sign * y)) * dens(sign * y); };
        // e^{zy} pi(y) composed through logs: the quadrature probes y far past
        // the point where either factor alone leaves the double range
        auto far_part = [&](double y) -> Complex {
            double d = dens(sign * y);
            if (d == 0.0) return Complex(0.0, 0.0);
            if (d > 0.0) {
                double logmag = z.real() * sign * y + std::log(d);
                if (logmag < -745.0) return Complex(0.0, 0.0);
                double mag = std::exp(logmag);
                double ph = z.imag() * sign * y;
                return Complex(mag * std::cos(ph), mag * std::sin(ph));
            }
            return std::exp(z * (sign * y)) * d;
        };
        double re = integrate_unit([&](double y) { return near_part(y).real(); }, "compensated jump integral");
        re += integrate_past_unit([&](double y) { return far_part(y).real(); }, "jump tail integral");
        re -= tail(1.0);
        double im = 0.0;
        if (imag_needed) {
            im = integrate_unit([&](double y) { return near_part(y).imag(); }, "compensated jump integral");
            im += integrate_past_unit([&](double y) { return far_part(y).imag(); }, "jump tail integral");
        }
        out += Complex(re, im);
    };

    if (m.tail_plus) add_side(1.0, m.tail_plus);
    if (m.tail_minus) add_side(-1.0, m.tail_minus);
    return out;
}

Complex lk_eval(const CharExponent& e, Complex z) {
    Complex acc = e.drift * z + 0.5 * e.gaussian * e.gaussian * z * z - e.killing;
    if (e.measure) acc += jump_integral(*e.measure, z);
    return acc;
}

void check_strip(const CharExponent& e, Complex z) {
    double re = z.real();
    if (re == 0.0) return;
    if (re < e.strip.lo || re > e.strip.hi) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "evaluation at Re z = %.6g outside strip (%.6g, %.6g)", re,
                      e.strip.lo, e.strip.hi);
        throw StripViolation(buf);
    }
}

// one-sided derivative at 0+, first-order Richardson over h = 1e-4, 1e-5
double derivative_at_zero(const CharExponent& psi) {
    const double h1 = 1e-4, h2 = 1e-5;
    double f0 = psi.eval(Complex(0.0, 0.0)).real();
    double d1 = (psi.eval(Complex(h1, 0.0)).real() - f0) / h1;
    double d2 = (psi.eval(Complex(h2, 0.0)).real() - f0) / h2;
    return d2 + (d2 - d1) * h2 / (h1 - h2);
}

// lim_{u -> 0-} (u/(u+beta)) Psi(u+beta); equals minus the killing rate of the
// tilted process (nonzero only when Psi has a pole at beta)
double tilt_killing_limit(const CharExponent& psi, double beta) {
    auto value = [&](double u) {
        return u / (u + beta) * psi.eval(Complex(u + beta, 0.0)).real();
    };
    const double h = std::min(1e-3, beta / 4.0);
    const double u1 = -h, u2 = -h / 10.0, u3 = -h / 100.0;
    double g1 = value(u1), g2 = value(u2), g3 = value(u3);
    // quadratic extrapolation to u = 0; a linear one leaves an O(u2 u3)
    // curvature bias large enough to masquerade as a killing rate
    double l1 = (u2 * u3) / ((u1 - u2) * (u1 - u3));
    double l2 = (u1 * u3) / ((u2 - u1) * (u2 - u3));
    double l3 = (u1 * u2) / ((u3 - u1) * (u3 - u2));
    return g1 * l1 + g2 * l2 + g3 * l3;
}

std::string format_param(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

}  // namespace

Complex CharExponent::eval(Complex z) const {
    check_strip(*this, z);
    if (closed_form) return closed_form(z);
    if (!quadruplet_complete) {
        throw DomainError("exponent has neither a closed form nor a complete quadruplet");
    }
    return lk_eval(*this, z);
}

Complex CharExponent::eval_quadrature(Complex z) const {
    check_strip(*this, z);
    if (!quadruplet_complete) {
        throw DomainError("quadrature evaluation requires a complete quadruplet");
    }
    return lk_eval(*this, z);
}

CharExponent from_quadruplet(double killing, double drift, double gaussian,
                             std::optional<LevyMeasureSpec> measure, Interval strip,
                             std::string label) {
    if (killing < 0.0) throw DomainError("killing rate must be >= 0");
    if (gaussian < 0.0) throw DomainError("gaussian coefficient must be >= 0");
    CharExponent e;
    e.killing = killing;
    e.drift = drift;
    e.gaussian = gaussian;
    e.measure = std::move(measure);
    e.strip = strip;
    e.label = std::move(label);
    return e;
}

CharExponent brownian(double a, double sigma) {
    if (sigma < 0.0) throw DomainError("brownian: sigma must be >= 0");
    CharExponent e;
    e.drift = a;
    e.gaussian = sigma;
    e.strip = Interval{-kInf, kInf};
    e.closed_form = [a, sigma](Complex z) { return a * z + 0.5 * sigma * sigma * z * z; };
    e.label = "brownian";
    e.params = {a, sigma};
    return e;
}

CharExponent lamperti_stable(double alpha, double rho) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("lamperti_stable: alpha must be in (0,2]");
    if (!(rho > 0.0 && rho < 1.0)) throw DomainError("lamperti_stable: rho must be in (0,1)");
    if (alpha * rho > 1.0 + 1e-12 || alpha * (1.0 - rho) > 1.0 + 1e-12) {
        throw DomainError("lamperti_stable: need alpha*rho <= 1 and alpha*(1-rho) <= 1");
    }
    CharExponent e;
    e.closed_form = [alpha, rho](Complex z) {
        const Complex num[] = {1.0 + alpha * z, alpha - alpha * z};
        const Complex den[] = {1.0 - alpha * rho + alpha * z, alpha * rho - alpha * z};
        return -gamma_quotient(num, den);
    };
    e.killing = -e.closed_form(Complex(0.0, 0.0)).real();
    e.strip = Interval{-1.0 / alpha, 1.0};
    e.label = "lamperti-stable";
    e.params = {alpha, rho};
    e.quadruplet_complete = false;
    return e;
}

CharExponent spectrally_positive(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("spectrally_positive: alpha must be in (0,1)");
    CharExponent e;
    e.label = "spectrally-positive";
    e.params = {alpha};
    e.strip = Interval{-kInf, 1.0 + 1.0 / alpha};
    e.closed_form = [alpha](Complex z) {
        const Complex num[] = {1.0 + alpha - alpha * z};
        const Complex den[] = {-alpha * z};
        return gamma_quotient(num, den) / alpha;
    };
    const double c = std::exp(-log_gamma(Complex(1.0 - alpha, 0.0)).real());
    const double rate = (alpha + 1.0) / alpha;
    LevyMeasureSpec m;
    m.density = [c, rate, alpha](double y) {
        if (y <= 0.0) return 0.0;
        double one_minus = -std::expm1(-y / alpha);
        return c * rate * std::exp(-rate * y) * std::pow(one_minus, -(alpha + 2.0));
    };
    m.tail_plus = [c, rate, alpha](double y) {
        double one_minus = -std::expm1(-y / alpha);
        return c * std::exp(-rate * y) * std::pow(one_minus, -(alpha + 1.0));
    };
    m.exp_barrier = rate;
    e.measure = std::move(m);
    const double u0 = 0.8;
    double target = e.closed_form(Complex(u0, 0.0)).real();
    double j = jump_integral(*e.measure, Complex(u0, 0.0)).real();
    e.drift = (target - j) / u0;
    return e;
}

CharExponent tilted_stable(double alpha, double rho) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("tilted_stable: alpha must be in (0,1)");
    if (!(rho > 0.0 && rho < 1.0)) throw DomainError("tilted_stable: rho must be in (0,1)");
    CharExponent e;
    e.closed_form = [alpha, rho](Complex z) {
        const Complex num[] = {alpha * (1.0 - rho) + alpha * z};
        const Complex den[] = {-alpha * rho + alpha * z};
        return z * gamma_quotient(num, den);
    };
    e.strip = Interval{-(1.0 - rho), kInf};
    e.label = "tilted-stable";
    e.params = {alpha, rho};
    e.quadruplet_complete = false;
    return e;
}

CharExponent stable_process(double alpha, double rho) {
    const double beta_skew = Rng::skew_for_positivity(alpha, rho);
    CharExponent e;
    e.label = "stable";
    e.params = {alpha, rho};
    e.strip = Interval{0.0, 0.0};
    e.quadruplet_complete = false;
    const double tan_half = alpha == 1.0 ? 0.0 : std::tan(kPi * alpha / 2.0);
    e.closed_form = [alpha, beta_skew, tan_half](Complex z) -> Complex {
        if (z.real() != 0.0) {
            throw StripViolation("stable increment exponent is defined on the imaginary axis only");
        }
        double theta = z.imag();
        if (theta == 0.0) return Complex(0.0, 0.0);
        double mag = std::pow(std::abs(theta), alpha);
        double sgn = theta > 0.0 ? 1.0 : -1.0;
        return Complex(-mag, mag * beta_skew * tan_half * sgn);
    };
    return e;
}

RootInfo find_rho(const CharExponent& psi, double search_hi) {
    RootInfo info;
    try {
        info.psi_prime0 = derivative_at_zero(psi);
    } catch (const std::exception&) {
        // derivative unavailable (e.g. empty strip); root scan may still apply
    }
    double hi = std::min(search_hi, psi.strip.hi);
    if (!(hi > 0.0)) return info;
    const double cap = std::min(hi, 1e3);
    const int n = 240;

    double prev_u = 0.0;
    double prev_f;
    try {
        prev_f = psi.eval(Complex(0.0, 0.0)).real();
    } catch (const std::exception&) {
        prev_f = -psi.killing;
    }
    double blo = kNaN, bhi = kNaN;
    for (int k = 1; k <= n; ++k) {
        double frac = static_cast<double>(k) / n;
        double u = cap * frac * frac;
        if (k == n) u = cap * (1.0 - 1e-9);
        double f;
        try {
            f = psi.eval(Complex(u, 0.0)).real();
        } catch (const std::exception&) {
            continue;
        }
        if (!std::isfinite(f)) continue;
        if (prev_f <= 0.0 && f > 0.0) {
            blo = prev_u;
            bhi = u;
        }
        prev_u = u;
        prev_f = f;
    }
    if (!std::isfinite(blo)) return info;

    double lo_b = blo, hi_b = bhi;
    for (int it = 0; it < 200 && hi_b - lo_b > 1e-16 * std::max(1.0, hi_b); ++it) {
        double mid = 0.5 * (lo_b + hi_b);
        double fm;
        try {
            fm = psi.eval(Complex(mid, 0.0)).real();
        } catch (const std::exception&) {
            break;
        }
        if (fm > 0.0) {
            hi_b = mid;
        } else {
            lo_b = mid;
        }
    }
    double root = 0.5 * (lo_b + hi_b);
    // a conservative exponent always vanishes at 0; only roots properly inside
    // the half-line count
    if (root < 1e-10) return info;
    info.rho = root;
    try {
        info.psi_at_rho = psi.eval(Complex(root, 0.0)).real();
    } catch (const std::exception&) {
        info.psi_at_rho = kNaN;
    }
    return info;
}

Classification classify(const CharExponent& psi, double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("classify: beta must be positive and finite");
    Classification c;
    c.beta = beta;

    double psi0 = 0.0;
    try {
        psi0 = psi.eval(Complex(0.0, 0.0)).real();
        c.psi_prime0 = derivative_at_zero(psi);
    } catch (const std::exception& ex) {
        c.notes = std::string("exponent not evaluable near 0: ") + ex.what();
        return c;
    }
    double q_eff = std::max(psi.killing, std::max(0.0, -psi0));
    c.in_n = q_eff > 1e-14 || c.psi_prime0 < 0.0;

    bool moments = beta <= psi.strip.hi &&
                   (!psi.measure || beta <= psi.measure->exp_barrier + 1e-12);
    c.in_n_beta = c.in_n && moments;

    c.rho = find_rho(psi, std::min(beta, psi.strip.hi)).rho;
    if (!c.in_n_beta) return c;

    double limit = kNaN;
    try {
        limit = tilt_killing_limit(psi, beta);
        c.q_beta = limit;
    } catch (const std::exception& ex) {
        c.notes += std::string("killing limit not evaluable: ") + ex.what() + "; ";
    }

    if (psi.measure) {
        c.tail_checked = true;
        if (psi.measure->tail_plus) {
            c.tail_nonincreasing = true;
            const int pts = 200;
            const double y_lo = 1e-4, y_hi = 50.0;
            double prev = kInf;
            for (int i = 0; i < pts; ++i) {
                double y = y_lo * std::pow(y_hi / y_lo, static_cast<double>(i) / (pts - 1));
                double t = psi.measure->tail_plus(y);
                double m;
                if (t > 0.0) {
                    m = beta * y + std::log(t);
                } else if (t == 0.0) {
                    m = -kInf;
                } else {
                    c.tail_nonincreasing = false;
                    c.notes += "upper tail takes negative values; ";
                    break;
                }
                if (i > 0 && m > prev + 1e-10 * std::max(1.0, std::abs(prev))) {
                    c.tail_nonincreasing = false;
                    break;
                }
                prev = m;
            }
        } else {
            c.tail_nonincreasing = true;  // no positive jumps at all
        }
    } else {
        c.tail_nonincreasing = true;
        c.notes += "tail monotonicity not testable without an explicit measure; ";
    }

    c.in_n_beta_rho = c.in_n_beta && c.rho < kInf && c.tail_nonincreasing &&
                      std::isfinite(limit) && limit <= 1e-6;
    return c;
}

CharExponent tilt(const CharExponent& p, double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw InadmissibleTilt("tilt rate must be positive and finite");
    }
    if (beta > p.strip.hi) {
        throw InadmissibleTilt("tilt rate exceeds the analyticity strip");
    }
    if (p.measure && beta > p.measure->exp_barrier + 1e-12) {
        throw InadmissibleTilt("tilt rate exceeds the exponential moment barrier");
    }
    double limit;
    try {
        limit = tilt_killing_limit(p, beta);
    } catch (const std::exception& ex) {
        throw InadmissibleTilt(std::string("killing limit not evaluable: ") + ex.what());
    }
    if (!std::isfinite(limit) || limit > 1e-6) {
        throw InadmissibleTilt("tilted killing limit must be nonpositive");
    }
    double q_new = std::max(0.0, -limit);
    if (q_new < 1e-9) q_new = 0.0;

    if (!p.measure && p.killing == 0.0 && p.quadruplet_complete && q_new == 0.0) {
        CharExponent out = brownian(p.drift + p.gaussian * p.gaussian * beta / 2.0, p.gaussian);
        out.strip = Interval{p.strip.lo - beta, p.strip.hi - beta};
        return out;
    }

    CharExponent out;
    out.killing = q_new;
    out.gaussian = p.gaussian;
    // a killed base turns its killing mass into negative jumps with rate
    // beta, so the tilted exponent keeps a genuine pole at z = -beta
    double lo_new = p.strip.lo - beta;
    if (p.killing > 0.0) lo_new = std::max(lo_new, -beta);
    out.strip = Interval{lo_new, p.strip.hi - beta};
    out.label = "tilt(" + p.label + "," + format_param(beta) + ")";
    out.params = p.params;
    out.params.push_back(beta);
    out.quadruplet_complete = p.quadruplet_complete;

    {
        const CharExponent base = p;
        double d0 = kNaN;
        if (p.killing == 0.0) {
            try {
                d0 = derivative_at_zero(p);
            } catch (const std::exception&) {
            }
        }
        const double neg_q = -q_new;
        const double q0 = p.killing;
        out.closed_form = [base, beta, neg_q, d0, q0](Complex z) -> Complex {
            if (std::abs(z) < 1e-9) return Complex(neg_q, 0.0);
            Complex w = z + beta;
            if (std::abs(w) < 1e-9) {
                if (q0 > 0.0) throw PoleError("tilted exponent has a pole at z = -beta");
                return z * d0;
            }
            return (z / w) * base.eval(w);
        };
    }

    if (p.measure || p.killing > 0.0) {
        LevyMeasureSpec src = p.measure ? *p.measure : LevyMeasureSpec{};
        const double q = p.killing;
        const bool pos = static_cast<bool>(src.tail_plus);
        const bool neg = static_cast<bool>(src.tail_minus) || q > 0.0;
        auto dens_src = src.density;
        auto tp_src = src.tail_plus;
        auto tm_src = src.tail_minus;
        // e^{beta y} times a decaying factor, composed through logs so the
        // product stays finite where either factor alone leaves double range
        auto exp_scale = [](double exponent, double v) {
            if (v <= 0.0) return 0.0;
            double le = exponent + std::log(v);
            return le < -745.0 ? 0.0 : std::exp(le);
        };
        LevyMeasureSpec md;
        md.density = [dens_src, tp_src, tm_src, q, beta, pos, exp_scale](double y) -> double {
            if (y > 0.0) {
                if (!pos) return 0.0;
                double v = exp_scale(beta * y, dens_src(y)) - beta * exp_scale(beta * y, tp_src(y));
                return std::max(0.0, v);
            }
            double d = dens_src ? dens_src(y) : 0.0;
            double tm = tm_src ? tm_src(-y) : 0.0;
            return std::exp(beta * y) * (d + beta * (tm + q));
        };
        if (pos) {
            // when beta sits exactly at the tail's decay rate, e^{beta y} times
            // the source tail levels off at the escaped mass q_new instead of
            // vanishing; the tilted tail is the excess over that constant
            const double escaped = q_new;
            md.tail_plus = [tp_src, beta, exp_scale, escaped](double y) {
                return std::max(0.0, exp_scale(beta * y, tp_src(y)) - escaped);
            };
        }
        if (neg) {
            md.tail_minus = [tm_src, q, beta](double y) {
                double tm = tm_src ? tm_src(y) : 0.0;
                return std::exp(-beta * y) * (tm + q);
            };
        }
        md.exp_barrier = pos ? src.exp_barrier - beta : kInf;
        md.exp_barrier_neg = q > 0.0 ? beta : (neg ? src.exp_barrier_neg + beta : kInf);
        out.measure = std::move(md);
    }

    if (out.quadruplet_complete) {
        double u0;
        if (out.strip.hi > 0.04) {
            u0 = std::min(0.5, out.strip.hi / 2.0);
        } else if (out.strip.lo < -0.04) {
            u0 = std::max(-0.5, out.strip.lo / 2.0);
        } else {
            throw InadmissibleTilt("tilted strip too thin to calibrate a drift");
        }
        double target = out.closed_form(Complex(u0, 0.0)).real();
        double jj = out.measure ? jump_integral(*out.measure, Complex(u0, 0.0)).real() : 0.0;
        out.drift = (target - 0.5 * out.gaussian * out.gaussian * u0 * u0 + out.killing - jj) / u0;
    }
    return out;
}

CharExponent dual(const CharExponent& p) {
    CharExponent d;
    d.killing = p.killing;
    d.drift = -p.drift;
    d.gaussian = p.gaussian;
    if (p.measure) {
        const LevyMeasureSpec m = *p.measure;
        LevyMeasureSpec md;
        if (m.density) {
            auto dens = m.density;
            md.density = [dens](double y) { return dens(-y); };
        }
        md.tail_plus = m.tail_minus;
        md.tail_minus = m.tail_plus;
        md.exp_barrier = m.exp_barrier_neg;
        md.exp_barrier_neg = m.exp_barrier;
        d.measure = std::move(md);
    }
    d.strip = Interval{-p.strip.hi, -p.strip.lo};
    if (p.closed_form) {
        auto f = p.closed_form;
        d.closed_form = [f](Complex z) { return f(-z); };
    }
    d.label = "dual(" + p.label + ")";
    d.params = p.params;
    d.quadruplet_complete = p.quadruplet_complete;
    return d;
}

FactorizationPair factorization_pair(const CharExponent& psi) {
    Classification c = classify(psi, 1.0);
    if (!c.in_n_beta_rho) {
        throw DomainError(
            "factorization requires a killed or negatively drifting exponent with exponential "
            "moments up to 1, a root in (0,1), and an admissible unit tilt");
    }
    if (!(c.rho > 0.0 && c.rho < 1.0)) {
        throw DomainError("factorization requires the root to lie in (0,1)");
    }
    FactorizationPair out;
    out.psi = psi;
    out.psi_hat1 = dual(tilt(psi, 1.0));
    out.rho = c.rho;
    double resid = std::abs(out.psi_hat1.eval(Complex(1.0 - c.rho, 0.0)));
    if (!(resid < 1e-6)) {
        throw DomainError("dual tilted exponent fails to vanish at 1 - rho");
    }
    return out;
}

NegDefResult check_negative_definite(const CharExponent& psi, int k, int trials,
                                     std::uint64_t seed, double tol) {
    if (k < 2 || trials < 1) throw DomainError("check_negative_definite: need k >= 2 and trials >= 1");
    NegDefResult res;
    res.trials = trials;
    Rng rng(seed, 0x6e656764, 0);
    std::vector<double> th(static_cast<std::size_t>(k));
    std::vector<Complex> c(static_cast<std::size_t>(k));
    std::vector<Complex> f(static_cast<std::size_t>(k) * k);
    for (int t = 0; t < trials; ++t) {
        for (auto& x : th) x = (rng.uniform() * 2.0 - 1.0) * 3.0;
        Complex mean{0.0, 0.0};
        for (auto& v : c) {
            v = Complex(rng.normal(), rng.normal());
            mean += v;
        }
        mean /= static_cast<double>(k);
        for (auto& v : c) v -= mean;

        for (int i = 0; i < k; ++i) {
            for (int j = i; j < k; ++j) {
                Complex val = -psi.eval(Complex(0.0, -(th[i] - th[j])));
                f[static_cast<std::size_t>(i) * k + j] = val;
                f[static_cast<std::size_t>(j) * k + i] = std::conj(val);
            }
        }
        Complex s{0.0, 0.0};
        double scale = 1e-30;
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
                Complex fij = f[static_cast<std::size_t>(i) * k + j];
                s += fij * c[static_cast<std::size_t>(i)] * std::conj(c[static_cast<std::size_t>(j)]);
                scale += std::abs(fij) * std::abs(c[static_cast<std::size_t>(i)]) *
                         std::abs(c[static_cast<std::size_t>(j)]);
            }
        }
        res.worst_relative_excess = std::max(res.worst_relative_excess, s.real() / scale);
    }
    res.ok = res.worst_relative_excess <= tol;
    return res;
}

}  // namespace levyarc
