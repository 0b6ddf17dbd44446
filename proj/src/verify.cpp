#include "levyarc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "levyarc/distributions.hpp"
#include "levyarc/mellin.hpp"
#include "levyarc/path_simulator.hpp"
#include "levyarc/stats.hpp"

namespace levyarc {
namespace {

constexpr double kPassP = 1e-3;

std::string describe(const CharExponent& psi) {
    std::ostringstream os;
    os << psi.label << "(";
    for (std::size_t i = 0; i < psi.params.size(); ++i) {
        if (i) os << ", ";
        os << psi.params[i];
    }
    os << ")";
    return os.str();
}

SubTest ks_sub(std::string label, const KsResult& ks, double threshold = kPassP) {
    return SubTest{std::move(label), ks.stat, ks.p_value, ks.p_value >= threshold};
}

void set_headline(IdentityReport& r) {
    if (r.subtests.empty()) return;
    r.ks_statistic = r.subtests.front().statistic;
    r.p_value = r.subtests.front().p_value;
}

Verdict aggregate(const IdentityReport& r) {
    for (const SubTest& s : r.subtests)
        if (!s.pass) return Verdict::fail;
    for (const MellinCheck& m : r.mellin_checks)
        if (!(m.sigma_distance <= 4.0)) return Verdict::fail;
    return Verdict::pass;
}

std::vector<double> arc_ratio(const std::vector<double>& top, const std::vector<double>& other) {
    std::vector<double> t(top.size());
    for (std::size_t i = 0; i < top.size(); ++i) t[i] = top[i] / (top[i] + other[i]);
    return t;
}

std::vector<double> divide(const std::vector<double>& num, const std::vector<double>& den) {
    std::vector<double> t(num.size());
    for (std::size_t i = 0; i < num.size(); ++i) t[i] = num[i] / den[i];
    return t;
}

// Five real Mellin spots of the ratio sample against the Pareto closed form.
// The window keeps E[R^{2(z-1)}] finite (strip (rho, 1+rho) for the true
// law), so the jackknife standard error is meaningful; the fractions avoid
// the degenerate point z = 1.
void pareto_spots(IdentityReport& r, const std::vector<double>& ratio, double true_rho,
                  double ref_rho) {
    const MellinFunction mf = pareto_mellin(ref_rho);
    const double lo = (1.0 + true_rho) / 2.0;
    const double hi = 1.0 + true_rho / 2.0;
    for (double f : {0.10, 0.30, 0.45, 0.65, 0.90}) {
        const Complex z(lo + f * (hi - lo), 0.0);
        const MellinEstimate est = mc_mellin(ratio, z);
        const Complex closed = mf.eval(z);
        const double diff = std::abs(est.estimate - closed);
        double sigma = 0.0;
        if (est.standard_error > 0.0) {
            sigma = diff / est.standard_error;
        } else if (diff > 0.0) {
            sigma = kInf;
        }
        r.mellin_checks.push_back(MellinCheck{z, est.estimate, closed, est.standard_error, sigma});
        if (est.heavy_tail) {
            std::ostringstream os;
            os << "heavy tail flagged by the moment estimator at z = " << z.real();
            r.notes.push_back(os.str());
        }
    }
}

// Simulates the two exponential functionals of the factorization pair with
// decorrelated seeds: (I for psi, I for the tilted dual).
std::pair<std::vector<double>, std::vector<double>> functional_pair(const CharExponent& psi,
                                                                    const FactorizationPair& pair,
                                                                    Method method, std::size_t n,
                                                                    std::uint64_t seed) {
    if (method == Method::oracle) {
        if (psi.label != "brownian")
            throw DomainError("verify: oracle method covers brownian exponents only");
        const double a = psi.params[0];
        const double sigma = psi.params[1];
        return {dufresne_oracle(a, sigma, n, seed),
                dufresne_oracle(-(a + 0.5 * sigma * sigma), sigma, n, seed + 1)};
    }
    PathConfig cfg;
    return {exp_functional(make_sampler(pair.psi), cfg, n, seed),
            exp_functional(make_sampler(pair.psi_hat1), cfg, n, seed + 1)};
}

bool bits_equal(const KsResult& a, const KsResult& b) {
    return a.stat == b.stat && a.p_value == b.p_value;
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

IdentityReport check_main_theorem(const CharExponent& psi, Method method, std::size_t n,
                                  std::uint64_t seed, std::optional<double> reference_rho) {
    if (n < 100) throw DomainError("check_main_theorem: need n >= 100");
    IdentityReport r;
    r.identity = "main-theorem";
    r.notes.push_back("exponent: " + describe(psi));
    const RootInfo root = find_rho(psi);
    if (!(root.rho > 0.0 && root.rho < 1.0)) {
        if (std::isfinite(root.rho)) r.params["rho"] = root.rho;
        r.verdict = Verdict::inconclusive;
        r.notes.push_back("root rho lies outside (0,1); the arc-sine and Pareto laws of the "
                          "factorization are undefined there");
        return r;
    }
    const FactorizationPair pair = factorization_pair(psi);
    r.params["rho"] = pair.rho;
    const double rho = pair.rho;
    const double ref = reference_rho.value_or(rho);
    if (reference_rho) {
        r.params["reference_rho"] = ref;
        r.notes.push_back("control run: closed-form laws use the reference rho, not the root");
    }
    r.sample_sizes = {n, n};
    r.seeds = {seed, seed + 1};
    r.notes.push_back(method == Method::oracle
                          ? "method: oracle (inverse-gamma representation of both functionals)"
                          : "method: paths (compound-Poisson discretization, dt = 1e-3)");

    auto [fwd, dual_f] = functional_pair(psi, pair, method, n, seed);

    const std::vector<double> arc1 = arc_ratio(dual_f, fwd);
    const std::vector<double> arc2 = arc_ratio(fwd, dual_f);
    const std::vector<double> rat = divide(fwd, dual_f);
    const ClosedFormLaw a_ref = arcsine_law(ref);
    const ClosedFormLaw a_comp = arcsine_law(1.0 - ref);
    const ClosedFormLaw p_ref = pareto_law(ref);

    const KsResult k1 = ks_one_sample(arc1, a_ref.cdf);
    const KsResult k2 = ks_one_sample(arc2, a_comp.cdf);
    const KsResult k3 = ks_one_sample(rat, p_ref.cdf);
    r.subtests.push_back(ks_sub("arcsine-ratio", k1));
    r.subtests.push_back(ks_sub("complement-arcsine-ratio", k2));
    const double comp_diff = std::abs(k1.stat - k2.stat);
    r.subtests.push_back(SubTest{"complementarity-identical", comp_diff, 1.0, comp_diff <= 1e-10});
    r.subtests.push_back(ks_sub("pareto-ratio", k3));
    pareto_spots(r, rat, rho, ref);

    // common rescaling by a power of two is exact in floating point, so the
    // ratio statistics must come out bit-identical
    std::vector<double> fwd_c = fwd, dual_c = dual_f;
    for (double& x : fwd_c) x *= 4.0;
    for (double& x : dual_c) x *= 4.0;
    const KsResult k1c = ks_one_sample(arc_ratio(dual_c, fwd_c), a_ref.cdf);
    const KsResult k2c = ks_one_sample(arc_ratio(fwd_c, dual_c), a_comp.cdf);
    const KsResult k3c = ks_one_sample(divide(fwd_c, dual_c), p_ref.cdf);
    const bool scale_ok = bits_equal(k1, k1c) && bits_equal(k2, k2c) && bits_equal(k3, k3c);
    const double scale_diff = std::max({std::abs(k1.stat - k1c.stat), std::abs(k2.stat - k2c.stat),
                                        std::abs(k3.stat - k3c.stat)});
    r.subtests.push_back(SubTest{"scale-invariance-bitwise", scale_diff, 1.0, scale_ok});

    set_headline(r);
    r.verdict = aggregate(r);
    return r;
}

IdentityReport check_doney(double alpha, double rho, std::size_t n_steps, std::size_t n,
                           std::uint64_t seed, std::optional<double> reference_rho) {
    if (n < 100) throw DomainError("check_doney: need n >= 100");
    IdentityReport r;
    r.identity = "doney";
    const double ref = reference_rho.value_or(rho);
    r.params["alpha"] = alpha;
    r.params["rho"] = rho;
    r.params["n_steps"] = double(n_steps);
    if (reference_rho) {
        r.params["reference_rho"] = ref;
        r.notes.push_back("control run: closed-form laws use the reference rho, not the "
                          "simulation rho");
    }
    r.sample_sizes = {n, n};
    r.seeds = {seed, seed + 1};

    const auto m = stable_supremum_ladder(alpha, rho, n_steps, 2, n, seed);
    const auto mh = stable_supremum_ladder(alpha, 1.0 - rho, n_steps, 2, n, seed + 1);
    const ClosedFormLaw arc = arcsine_law(ref);
    const ClosedFormLaw par = pareto_law(ref);

    KsResult arc_ks[2], par_ks[2];
    std::size_t kept[2];
    for (int l = 0; l < 2; ++l) {
        std::vector<double> t, ratio;
        t.reserve(n);
        ratio.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (!(m[std::size_t(l)][i] > 0.0) || !(mh[std::size_t(l)][i] > 0.0)) continue;
            const double ma = std::pow(m[std::size_t(l)][i], alpha);
            const double mha = std::pow(mh[std::size_t(l)][i], alpha);
            t.push_back(ma / (ma + mha));
            ratio.push_back(mha / ma);
        }
        kept[l] = t.size();
        arc_ks[l] = ks_one_sample(t, arc.cdf);
        par_ks[l] = ks_one_sample(ratio, par.cdf);
    }

    r.subtests.push_back(ks_sub("arcsine-ratio", arc_ks[0]));
    r.subtests.push_back(ks_sub("arcsine-ratio-doubled-grid", arc_ks[1]));
    r.subtests.push_back(SubTest{"arcsine-distance-non-increasing", arc_ks[1].stat - arc_ks[0].stat,
                                 1.0, arc_ks[1].stat <= arc_ks[0].stat});
    r.subtests.push_back(ks_sub("pareto-ratio", par_ks[0]));
    r.subtests.push_back(ks_sub("pareto-ratio-doubled-grid", par_ks[1]));

    {
        std::ostringstream os;
        os << "grids " << n_steps << " and " << 2 * n_steps << " coupled per path; kept "
           << kept[0] << " / " << kept[1] << " of " << n
           << " pairs after per-level positivity conditioning";
        r.notes.push_back(os.str());
    }
    r.notes.push_back("the doubling gate applies to the arc-sine distance only: the "
                      "first-order discretization errors of the two maxima cancel in the "
                      "ratios, so past coarse grids level differences are dominated by the "
                      "shrinking conditioning distortion, which the coupled estimator isolates");

    set_headline(r);
    r.verdict = aggregate(r);
    return r;
}

IdentityReport check_self_reciprocal(const CharExponent& psi, Method method, std::size_t n,
                                     std::uint64_t seed) {
    if (n < 100) throw DomainError("check_self_reciprocal: need n >= 100");
    const FactorizationPair pair = factorization_pair(psi);
    if (!(std::abs(pair.rho - 0.5) <= 1e-9)) {
        std::ostringstream os;
        os << "check_self_reciprocal: requires root 1/2, got rho = " << pair.rho;
        throw DomainError(os.str());
    }
    IdentityReport r;
    r.identity = "self-reciprocal";
    r.notes.push_back("exponent: " + describe(psi));
    r.params["rho"] = pair.rho;
    r.sample_sizes = {n, n, n, n};
    r.seeds = {seed, seed + 1, seed + 2, seed + 3, seed + 4, seed + 5, seed + 6};
    r.notes.push_back(method == Method::oracle
                          ? "method: oracle (inverse-gamma representation of both functionals)"
                          : "method: paths (compound-Poisson discretization, dt = 1e-3)");

    auto [fwd, dual_f] = functional_pair(psi, pair, method, n, seed);
    auto [fwd2, dual2] = functional_pair(psi, pair, method, n, seed + 2);
    const std::vector<double> ratio = divide(fwd, dual_f);
    std::vector<double> recip = divide(dual2, fwd2);

    const KsResult k1 = ks_two_sample(ratio, recip);
    const KsResult k2 = ks_two_sample(ratio, cauchy_squared().sample(n, seed + 4));
    const KsResult k3 = ks_two_sample(pareto_law(0.5).sample(n, seed + 5),
                                      cauchy_squared().sample(n, seed + 6));
    r.subtests.push_back(ks_sub("ratio-vs-reciprocal-copy", k1));
    r.subtests.push_back(ks_sub("ratio-vs-cauchy-squared", k2));
    r.subtests.push_back(ks_sub("pareto-half-vs-cauchy-squared", k3));

    set_headline(r);
    r.verdict = aggregate(r);
    return r;
}

IdentityReport check_cor_s2(double alpha, double rho, std::size_t n, std::uint64_t seed,
                            std::optional<double> reference_rho) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("check_cor_s2: alpha must be in (0,1)");
    if (!(rho > 0.0 && rho < 1.0)) throw DomainError("check_cor_s2: rho must be in (0,1)");
    if (n < 100) throw DomainError("check_cor_s2: need n >= 100");
    IdentityReport r;
    r.identity = "gamma-stable";
    const double ref = reference_rho.value_or(rho);
    r.params["alpha"] = alpha;
    r.params["rho"] = rho;
    if (reference_rho) {
        r.params["reference_rho"] = ref;
        r.notes.push_back("control run: closed-form laws use the reference rho");
    }
    r.sample_sizes = {n};
    r.seeds = {seed, seed + 1, seed + 2};
    const ClosedFormLaw arc = arcsine_law(ref);

    const std::vector<double> num_g = gamma_law(alpha * (1.0 - rho)).sample(n, seed);
    std::vector<double> num(n);
    for (std::size_t i = 0; i < n; ++i) num[i] = std::pow(num_g[i], -alpha);

    // Adjudicated variant space: the gamma-leg index and the length-bias
    // index each read rho in one source and 1-rho in the other, and one
    // source carries a 1/alpha scale on the stable term; samples are shared
    // across scales so the comparison isolates the disputed choices.
    struct Variant {
        std::string label;
        double d = kInf;
        double p = 0.0;
        std::vector<double> t;
    };
    std::vector<Variant> variants;
    double best_fit_c = 1.0, best_fit_d = kInf;
    std::string best_fit_label;

    auto index_name = [&](double v) { return v == rho ? "rho" : "1-rho"; };
    for (double g : {rho, 1.0 - rho}) {
        const std::vector<double> gam = gamma_law(g).sample(n, seed + 1);
        for (double bias : {rho, 1.0 - rho}) {
            const std::vector<double> st = length_biased_stable(alpha, bias).sample(n, seed + 2);
            std::vector<double> leg(n);
            for (std::size_t i = 0; i < n; ++i) leg[i] = std::pow(st[i], -alpha) / gam[i];

            auto ratio_at = [&](double c) {
                const double f = std::pow(c, -alpha);
                std::vector<double> t(n);
                for (std::size_t i = 0; i < n; ++i) t[i] = num[i] / (num[i] + f * leg[i]);
                return t;
            };
            for (double c : {1.0, 1.0 / alpha}) {
                Variant v;
                std::ostringstream os;
                os << "variant[g-index=" << index_name(g) << "|bias=" << index_name(bias)
                   << "|scale=" << (c == 1.0 ? "1" : "1/alpha") << "]";
                v.label = os.str();
                v.t = ratio_at(c);
                const KsResult ks = ks_one_sample(v.t, arc.cdf);
                v.d = ks.stat;
                v.p = ks.p_value;
                variants.push_back(std::move(v));
            }

            // best scale for this index pair by golden-section on log c
            const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
            double a = std::log(0.2), b = std::log(std::max(5.0, 2.0 / alpha));
            auto dist = [&](double lc) {
                return ks_one_sample(ratio_at(std::exp(lc)), arc.cdf).stat;
            };
            double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
            double f1 = dist(x1), f2 = dist(x2);
            for (int it = 0; it < 40; ++it) {
                if (f1 < f2) {
                    b = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = b - phi * (b - a);
                    f1 = dist(x1);
                } else {
                    a = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = a + phi * (b - a);
                    f2 = dist(x2);
                }
            }
            const double lc = 0.5 * (a + b);
            const double dmin = dist(lc);
            if (dmin < best_fit_d) {
                best_fit_d = dmin;
                best_fit_c = std::exp(lc);
                std::ostringstream os;
                os << "g-index=" << index_name(g) << "|bias=" << index_name(bias);
                best_fit_label = os.str();
            }
        }
    }

    std::size_t best_idx = 0;
    std::string winners;
    for (std::size_t i = 0; i < variants.size(); ++i) {
        const bool pass = variants[i].p >= kPassP;
        r.subtests.push_back(SubTest{variants[i].label, variants[i].d, variants[i].p, pass});
        if (pass) {
            if (!winners.empty()) winners += ", ";
            winners += variants[i].label;
        }
        if (variants[i].d < variants[best_idx].d) best_idx = i;
    }
    r.notes.push_back(winners.empty() ? "no variant matches the arc-sine law"
                                      : "passing variant(s): " + winners);
    {
        std::ostringstream os;
        os << "best fitted scale: c = " << best_fit_c << " at " << best_fit_label
           << " (distance " << best_fit_d << ")";
        r.notes.push_back(os.str());
    }
    r.calibration_constant = best_fit_c;

    bool control_ok = true;
    if (std::abs(ref - 0.5) > 0.02) {
        const KsResult kc = ks_one_sample(variants[best_idx].t, arcsine_law(1.0 - ref).cdf);
        control_ok = kc.p_value < 1e-6;
        r.subtests.push_back(
            SubTest{"complement-arcsine-rejected", kc.stat, kc.p_value, control_ok});
    } else {
        r.notes.push_back("complement control skipped: the arc-sine law is its own complement "
                          "at rho = 1/2");
    }

    set_headline(r);
    r.ks_statistic = variants[best_idx].d;
    r.p_value = variants[best_idx].p;
    r.verdict = (!winners.empty() && control_ok) ? Verdict::pass : Verdict::fail;
    return r;
}

IdentityReport check_mellin_product(double alpha, double rho) {
    IdentityReport r;
    r.identity = "mellin-product";
    r.params["alpha"] = alpha;
    r.params["rho"] = rho;
    const MellinFunction ts = tilted_stable_ef_mellin(alpha, rho);
    const MellinFunction du = tilted_stable_dual_ef_mellin(alpha, rho);
    const MellinFunction pa = pareto_mellin(rho);

    std::vector<Complex> grid;
    std::vector<double> reals;
    for (int k = 0; k <= 8; ++k) reals.push_back(rho - 0.9 + 0.1 * k);
    if (rho > 0.1 && rho < 0.9) reals.push_back(0.0);
    for (double x : reals)
        for (double y : {0.0, 0.37, -0.37}) grid.emplace_back(x, y);

    auto product_over_pareto = [&](Complex z) {
        return ts.eval(z + 1.0) * du.eval(1.0 - z) / pa.eval(z + 1.0);
    };

    // fit the a^{-z} calibration factor by least squares on log g(z) = -z log a
    Complex num_acc = 0.0;
    double den_acc = 0.0;
    for (double x : reals) {
        if (x == 0.0) continue;
        num_acc += x * std::log(product_over_pareto(Complex(x, 0.0)));
        den_acc += x * x;
    }
    const double log_a = -(num_acc / den_acc).real();
    const double a_fit = std::exp(log_a);
    r.calibration_constant = a_fit;

    double residual = 0.0;
    for (Complex z : grid) {
        const Complex g = product_over_pareto(z) * std::exp(z * log_a);
        residual = std::max(residual, std::abs(g - 1.0));
    }
    r.subtests.push_back(
        SubTest{"product-matches-pareto-transform", residual, 1.0, residual <= 1e-9});

    const double trivial = std::abs(product_over_pareto(Complex(0.0, 0.0)) - 1.0);
    r.subtests.push_back(SubTest{"unit-at-origin", trivial, 1.0, trivial <= 1e-12});

    if (std::abs(rho - 0.5) < 1e-12) {
        double sym = 0.0;
        for (double x : reals) {
            const Complex p1 = ts.eval(Complex(1.0 + x, 0.0)) * du.eval(Complex(1.0 - x, 0.0));
            const Complex p2 = ts.eval(Complex(1.0 - x, 0.0)) * du.eval(Complex(1.0 + x, 0.0));
            sym = std::max(sym, std::abs(p1 - p2));
        }
        r.subtests.push_back(SubTest{"symmetric-under-negation", sym, 1.0, sym <= 1e-11});
    }

    {
        std::ostringstream os;
        os << "fitted calibration a = " << a_fit << "; max deviation of the calibrated product "
           << residual;
        r.notes.push_back(os.str());
    }
    set_headline(r);
    r.ks_statistic = residual;
    r.verdict = aggregate(r);
    return r;
}

IdentityReport median_p_gate(const std::function<IdentityReport(std::uint64_t)>& run,
                             std::uint64_t seed) {
    std::vector<IdentityReport> runs;
    for (int k = 0; k < 5; ++k) runs.push_back(run(seed + 16 * std::uint64_t(k)));

    IdentityReport r;
    r.identity = runs.front().identity + "/median-p-gate";
    r.params = runs.front().params;
    r.sample_sizes = runs.front().sample_sizes;
    std::vector<double> ps, ds;
    int failed = 0;
    bool inconclusive = false;
    for (int k = 0; k < 5; ++k) {
        const IdentityReport& run_r = runs[std::size_t(k)];
        r.seeds.push_back(seed + 16 * std::uint64_t(k));
        ps.push_back(run_r.p_value);
        ds.push_back(run_r.ks_statistic);
        std::ostringstream os;
        os << "seed " << seed + 16 * std::uint64_t(k);
        r.subtests.push_back(SubTest{os.str(), run_r.ks_statistic, run_r.p_value,
                                     run_r.verdict == Verdict::pass});
        if (run_r.verdict == Verdict::fail) ++failed;
        inconclusive = inconclusive || run_r.verdict == Verdict::inconclusive;
    }
    std::sort(ps.begin(), ps.end());
    std::sort(ds.begin(), ds.end());
    r.p_value = ps[2];
    r.ks_statistic = ds[2];
    r.notes.push_back("median headline p over five seeds; gate requires 0.01; single-seed "
                      "failures are tolerated as the false-alarm cost of the per-run gate, a "
                      "majority is not");
    r.verdict =
        (!inconclusive && failed <= 2 && r.p_value >= 0.01) ? Verdict::pass : Verdict::fail;
    return r;
}

}  // namespace levyarc
