#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <complex>
#include <vector>

#include "levyarc/distributions.hpp"
#include "levyarc/levy_exponent.hpp"
#include "levyarc/mellin.hpp"

// reference values from tools/gen_reference_values.py
namespace {

using levyarc::Complex;

void check_rel(Complex got, Complex want, double tol) {
    CAPTURE(got.real());
    CAPTURE(got.imag());
    CAPTURE(want.real());
    CAPTURE(want.imag());
    CHECK(std::abs(got - want) <= tol * std::max(1.0, std::abs(want)));
}

}  // namespace

TEST_CASE("registered mellin forms are normalized, positive, and conjugate symmetric") {
    const std::vector<levyarc::MellinFunction> forms = {
        levyarc::pareto_mellin(0.35),
        levyarc::arcsine_mellin(0.3),
        levyarc::gamma_mellin(2.5),
        levyarc::brownian_ef_mellin(-0.25, 1.0),
        levyarc::tilted_stable_ef_mellin(0.6, 0.3),
        levyarc::tilted_stable_dual_ef_mellin(0.6, 0.3),
        levyarc::frechet_ef_mellin(0.7),
    };
    for (const auto& m : forms) {
        CAPTURE(m.name);
        check_rel(m.eval(Complex(1.0, 0.0)), Complex(1.0, 0.0), 1e-12);
        for (double u : {0.9, 1.05, 1.2}) {
            Complex v = m.eval(Complex(u, 0.0));
            CHECK(v.real() > 0.0);
            CHECK(std::abs(v.imag()) <= 1e-12 * v.real());
        }
        const Complex z(0.9, 0.7);
        Complex up = m.eval(z);
        Complex dn = m.eval(std::conj(z));
        check_rel(dn, std::conj(up), 1e-12);
    }
}

TEST_CASE("pareto mellin: moments, frozen value, and edge poles") {
    levyarc::MellinFunction m = levyarc::pareto_mellin(0.5);
    check_rel(m.eval(Complex(1.25, 0.0)), Complex(std::sqrt(2.0), 0.0), 1e-13);

    levyarc::MellinFunction m3 = levyarc::pareto_mellin(0.3);
    check_rel(m3.eval(Complex(0.8, 0.4)), Complex(0.42600074965684968423, 0.0), 1e-13);

    // 1/eval vanishes at the poles rho and rho - 1; bisect the sign changes,
    // taking the continuous extension 0 when a probe lands on the pole itself
    auto recip = [&](double u) {
        try {
            return (1.0 / m3.eval(Complex(u, 0.0))).real();
        } catch (const levyarc::PoleError&) {
            return 0.0;
        }
    };
    for (double target : {0.3, -0.7}) {
        double lo = target - 0.04, hi = target + 0.04;
        REQUIRE(recip(lo) * recip(hi) < 0.0);
        while (hi - lo > 1e-8) {
            double mid = 0.5 * (lo + hi);
            (recip(lo) * recip(mid) <= 0.0 ? hi : lo) = mid;
        }
        CHECK(0.5 * (lo + hi) == doctest::Approx(target).epsilon(1e-6));
    }
}

TEST_CASE("closed forms match their frozen references") {
    check_rel(levyarc::gamma_mellin(2.5).eval(Complex(1.7, 0.3)),
              Complex(1.7134371376237456765, 0.53049237902760025137), 1e-13);
    check_rel(levyarc::gamma_mellin(2.5).eval(Complex(2.0, 0.0)), Complex(2.5, 0.0), 1e-13);
    check_rel(levyarc::brownian_ef_mellin(-0.25, 1.0).eval(Complex(0.3, 0.2)),
              Complex(0.30510137396176629248, 0.060099943719241875637), 1e-13);
    check_rel(levyarc::tilted_stable_ef_mellin(0.6, 0.3).eval(Complex(1.2, 0.0)),
              Complex(3.359139123276856357, 0.0), 1e-13);
    check_rel(levyarc::tilted_stable_ef_mellin(0.6, 0.3).eval(Complex(0.6, 0.5)),
              Complex(0.24216182832422152807, 0.14197193709382503017), 1e-13);
    check_rel(levyarc::tilted_stable_dual_ef_mellin(0.6, 0.3).eval(Complex(1.35, 0.0)),
              Complex(2.0659344785401117779, 0.0), 1e-13);
    check_rel(levyarc::frechet_ef_mellin(0.7).eval(Complex(1.9, 0.0)),
              Complex(2.4035500200786532485, 0.0), 1e-13);
}

TEST_CASE("mellin registry resolves names, aliases, and rejects bad keys") {
    levyarc::MellinFunction a =
        levyarc::mellin_registry("lamperti-ef", {{"alpha", 0.6}, {"rho", 0.3}});
    levyarc::MellinFunction b =
        levyarc::mellin_registry("tilted-stable-ef", {{"alpha", 0.6}, {"rho", 0.3}});
    check_rel(a.eval(Complex(1.2, 0.0)), b.eval(Complex(1.2, 0.0)), 1e-15);

    CHECK_NOTHROW((void)levyarc::mellin_registry("pareto", {{"rho", 0.4}}));
    CHECK_THROWS_AS((void)levyarc::mellin_registry("cauchy", {}), levyarc::ConfigError);
    CHECK_THROWS_AS((void)levyarc::mellin_registry("pareto", {{"rho", 0.4}, {"beta", 1.0}}),
                    levyarc::ConfigError);
    CHECK_THROWS_AS((void)levyarc::mellin_registry("pareto", {}), levyarc::ConfigError);
    CHECK_THROWS_AS((void)levyarc::mellin_registry("pareto", {{"rho", 1.4}}),
                    levyarc::DomainError);
}

TEST_CASE("functional equation residuals for registered forms") {
    const std::vector<Complex> grid = {
        {0.05, 0.0}, {0.1, 0.3}, {0.2, -0.2}, {0.25, 0.1}, {-0.3, 0.5}};

    levyarc::CharExponent ts = levyarc::tilted_stable(0.6, 0.3);
    CHECK(levyarc::verify_recurrence(levyarc::tilted_stable_ef_mellin(0.6, 0.3), ts, grid) <=
          1e-10);

    levyarc::FactorizationPair fp = levyarc::factorization_pair(ts);
    CHECK(levyarc::verify_recurrence(levyarc::tilted_stable_dual_ef_mellin(0.6, 0.3),
                                     fp.psi_hat1, grid) <= 1e-10);

    const std::vector<Complex> bgrid = {{0.3, 0.4}, {-0.6, 0.0}, {0.2, -0.7}, {0.45, 0.0}};
    levyarc::MellinFunction duf = levyarc::brownian_ef_mellin(-0.25, 1.0);
    CHECK(levyarc::verify_recurrence(duf, levyarc::brownian(-0.25, 1.0), bgrid) <= 1e-10);

    levyarc::MellinFunction bad = duf;
    auto base = duf.eval;
    bad.eval = [base](Complex z) { return base(z) * (1.0 + 1e-3 * z); };
    CHECK(levyarc::verify_recurrence(bad, levyarc::brownian(-0.25, 1.0), bgrid) > 1e-4);
}

TEST_CASE("constant-ratio recurrence of the pareto transform") {
    levyarc::MellinFunction m = levyarc::pareto_mellin(0.4);
    levyarc::RecurrenceSpec flip{[](Complex) { return Complex(-1.0, 0.0); },
                                 levyarc::Interval{-levyarc::kInf, levyarc::kInf},
                                 "all of C"};
    const std::vector<Complex> grid = {{0.55, 0.0}, {0.7, 0.8}, {1.1, -0.3}, {0.9, 0.0}};
    CHECK(levyarc::verify_recurrence(m, flip, grid) <= 1e-12);

    for (Complex z : grid) {
        check_rel(levyarc::extend_by_recurrence(m, flip, z + 1.0), -m.eval(z), 1e-12);
        check_rel(levyarc::extend_by_recurrence(m, flip, z), m.eval(z), 1e-15);
    }
}

TEST_CASE("recurrence guards: origin, exponent zeros, and transform poles") {
    levyarc::MellinFunction duf = levyarc::brownian_ef_mellin(-0.25, 1.0);
    levyarc::CharExponent bm = levyarc::brownian(-0.25, 1.0);
    CHECK_THROWS_AS((void)levyarc::verify_recurrence(duf, bm, {Complex(0.0, 0.0)}),
                    levyarc::PoleError);
    CHECK_THROWS_AS((void)levyarc::verify_recurrence(duf, bm, {Complex(0.5, 0.0)}),
                    levyarc::PoleError);

    levyarc::MellinFunction par = levyarc::pareto_mellin(0.4);
    CHECK_THROWS_AS((void)levyarc::verify_recurrence(par, bm, {Complex(1.4, 0.0)}),
                    levyarc::PoleError);

    // stepping down from 2.5 lands on the exponent zero at 0.5
    CHECK_THROWS_AS((void)levyarc::extend_by_recurrence(duf, bm, Complex(2.5, 0.0)),
                    levyarc::PoleError);
    // stepping up from the pareto strip lands on the transform pole at rho + 1
    levyarc::RecurrenceSpec flip{[](Complex) { return Complex(-1.0, 0.0); },
                                 levyarc::Interval{-levyarc::kInf, levyarc::kInf},
                                 "all of C"};
    CHECK_THROWS_AS((void)levyarc::extend_by_recurrence(par, flip, Complex(2.4, 0.0)),
                    levyarc::PoleError);
}

TEST_CASE("monte carlo mellin estimates with jackknife errors") {
    levyarc::ClosedFormLaw expo = levyarc::gamma_law(1.0);
    std::vector<double> es = expo.sample(40000, 101);
    levyarc::MellinEstimate e1 = levyarc::mc_mellin(es, Complex(2.0, 0.0));
    CHECK(e1.standard_error > 0.0);
    CHECK(std::abs(e1.estimate.real() - 1.0) <= 4.0 * e1.standard_error);
    CHECK_FALSE(e1.heavy_tail);

    std::vector<double> constant(500, 1.7);
    levyarc::MellinEstimate e2 = levyarc::mc_mellin(constant, Complex(1.6, 0.4));
    check_rel(e2.estimate, std::exp(Complex(0.6, 0.4) * std::log(1.7)), 1e-13);
    CHECK(e2.standard_error <= 1e-14);

    levyarc::ClosedFormLaw par = levyarc::pareto_law(0.5);
    std::vector<double> ps = par.sample(40000, 102);
    Complex z(1.25, 0.0);
    levyarc::MellinEstimate e3 = levyarc::mc_mellin(ps, z);
    Complex want = levyarc::pareto_mellin(0.5).eval(z);
    CHECK(std::abs(e3.estimate.real() - want.real()) <= 4.0 * e3.standard_error);

    levyarc::MellinEstimate e4 = levyarc::mc_mellin(ps, Complex(1.9, 0.0));
    CHECK(e4.heavy_tail);

    CHECK_THROWS_AS((void)levyarc::mc_mellin(std::vector<double>{}, z), levyarc::DomainError);
    CHECK_THROWS_AS((void)levyarc::mc_mellin(std::vector<double>{1.0, -2.0}, z),
                    levyarc::DomainError);
}

TEST_CASE("forward extension from a monte carlo base strip matches the closed form") {
    // exponential functional of brownian(-1.5, sqrt 2) is 1/Gamma(1.5) distributed
    levyarc::ClosedFormLaw g = levyarc::gamma_law(1.5);
    std::vector<double> samples = g.sample(200000, 21);
    for (double& s : samples) s = 1.0 / s;

    levyarc::MellinFunction mc;
    mc.name = "mc-base";
    mc.strip = levyarc::Interval{0.2, 0.8};
    mc.eval = [&samples](Complex z) { return levyarc::mc_mellin(samples, z).estimate; };

    const double sigma = std::sqrt(2.0);
    levyarc::CharExponent bm = levyarc::brownian(-1.5, sigma);
    levyarc::RecurrenceSpec rec = levyarc::recurrence_from_exponent(bm);

    const Complex target(2.3, 0.0);
    Complex got = levyarc::extend_by_recurrence(mc, rec, target);
    Complex want = levyarc::brownian_ef_mellin(-1.5, sigma).eval(target);

    double amplification = std::abs(rec.ratio(Complex(1.3, 0.0)) * rec.ratio(Complex(0.3, 0.0)));
    double se = levyarc::mc_mellin(samples, Complex(0.3, 0.0)).standard_error;
    CHECK(std::abs(got - want) <= 6.0 * se * amplification + 1e-9);
}

TEST_CASE("wiener-hopf bernstein gamma function") {
    levyarc::BernsteinGamma w = levyarc::wiener_hopf_bernstein_gamma(0.6, 0.3);
    check_rel(levyarc::bernstein_gamma_eval(w, Complex(1.0, 0.0)), Complex(1.0, 0.0), 1e-13);
    check_rel(levyarc::bernstein_gamma_eval(w, Complex(2.0, 0.0)),
              Complex(0.66937738650088428937, 0.0), 1e-13);
    check_rel(levyarc::bernstein_gamma_eval(w, Complex(2.0, 0.0)), w.phi(Complex(1.0, 0.0)),
              1e-13);

    const std::vector<Complex> grid = {
        {0.4, 0.0}, {0.8, 0.5}, {1.3, -0.7}, {2.1, 0.2}, {0.6, 1.5}};
    CHECK(levyarc::bernstein_gamma_residual(w, grid) <= 1e-11);

    // the factor assembles the tilted stable exponent: Psi(z) = -(rho - z) phi(z)
    levyarc::CharExponent ts = levyarc::tilted_stable(0.6, 0.3);
    for (Complex z : grid) {
        check_rel(-(Complex(0.3, 0.0) - z) * w.phi(z), ts.eval(z), 1e-12);
    }

    levyarc::BernsteinGamma empty{w.phi, nullptr, "no-form"};
    CHECK_THROWS_AS((void)levyarc::bernstein_gamma_eval(empty, Complex(1.0, 0.0)),
                    levyarc::DomainError);
}

TEST_CASE("mellin product of the factor pair reproduces the pareto transform") {
    const double alpha = 0.6, rho = 0.3;
    levyarc::MellinFunction mts = levyarc::tilted_stable_ef_mellin(alpha, rho);
    levyarc::MellinFunction mdual = levyarc::tilted_stable_dual_ef_mellin(alpha, rho);
    levyarc::MellinFunction par = levyarc::pareto_mellin(rho);
    const std::vector<Complex> grid = {
        {0.25, 0.6}, {0.1, 0.0}, {-0.15, 0.4}, {0.2, -1.1}, {0.05, 2.0}};
    for (Complex z : grid) {
        Complex lhs = mts.eval(z + 1.0) * mdual.eval(-z + 1.0);
        check_rel(lhs, par.eval(z + 1.0), 1e-12);
    }
}

TEST_CASE("mellin inversion recovers closed densities on a straight line") {
    levyarc::MellinFunction par = levyarc::pareto_mellin(0.5);
    auto pareto_pdf = [](double x) {
        return (1.0 / levyarc::kPi) * std::pow(x, -0.5) / (1.0 + x);
    };
    for (double x : {0.4, 1.0, 2.5}) {
        double got = levyarc::invert_to_density(par, 1.0, x);
        CAPTURE(x);
        CHECK(std::abs(got - pareto_pdf(x)) <= 1e-6);
    }

    levyarc::MellinFunction g2 = levyarc::gamma_mellin(2.0);
    double got = levyarc::invert_to_density(g2, 1.5, 1.0);
    CHECK(std::abs(got - std::exp(-1.0)) <= 1e-6);
}

TEST_CASE("mellin inversion recovers the arc-sine density on a tilted contour") {
    const double rho = 0.3;
    levyarc::MellinFunction m = levyarc::arcsine_mellin(rho);
    auto pdf = [rho](double x) {
        return std::sin(levyarc::kPi * rho) / levyarc::kPi * std::pow(x, rho - 1.0) *
               std::pow(1.0 - x, -rho);
    };
    double worst = 0.0;
    for (double x : {0.05, 0.25, 0.5, 0.75, 0.95}) {
        double got = levyarc::invert_to_density(m, 1.3, x);
        worst = std::max(worst, std::abs(got - pdf(x)));
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("inverted densities reproduce the mass of wide windows") {
    boost::math::quadrature::tanh_sinh<double> ts;

    // the tilted contour loses all decay as x -> 1, so integrate the
    // inverted arc-sine density over a window and compare with its cdf
    levyarc::MellinFunction arc = levyarc::arcsine_mellin(0.3);
    levyarc::ClosedFormLaw arc_law = levyarc::arcsine_law(0.3);
    double arc_mass = ts.integrate(
        [&](double x) { return levyarc::invert_to_density(arc, 1.3, x); }, 0.01, 0.99, 1e-8);
    CHECK(std::abs(arc_mass - (arc_law.cdf(0.99) - arc_law.cdf(0.01))) <= 1e-6);

    // far outside [1e-4, 1e4] the integrand x^{-c} dwarfs the density and
    // the fixed line c = 0.8 is ill-conditioned, so window this one as well
    levyarc::MellinFunction par = levyarc::pareto_mellin(0.3);
    levyarc::ClosedFormLaw par_law = levyarc::pareto_law(0.3);
    auto pf = [&](double x) { return levyarc::invert_to_density(par, 0.8, x); };
    double par_mass = ts.integrate(pf, 1e-4, 1.0, 1e-8) + ts.integrate(pf, 1.0, 1e4, 1e-8);
    CHECK(std::abs(par_mass - (par_law.cdf(1e4) - par_law.cdf(1e-4))) <= 1e-6);
}

TEST_CASE("inversion rejects lines without usable decay") {
    levyarc::MellinFunction flat;
    flat.name = "flat";
    flat.strip = levyarc::Interval{0.0, 2.0};
    flat.eval = [](Complex) { return Complex(1.0, 0.0); };
    CHECK_THROWS_AS((void)levyarc::invert_to_density(flat, 1.0, 0.5),
                    levyarc::InsufficientDecay);

    levyarc::MellinFunction arc = levyarc::arcsine_mellin(0.3);
    CHECK_THROWS_AS((void)levyarc::invert_to_density(arc, 1.3, 1.0),
                    levyarc::InsufficientDecay);
    CHECK_THROWS_AS((void)levyarc::invert_to_density(arc, 0.2, 0.5), levyarc::StripViolation);
    CHECK_THROWS_AS((void)levyarc::invert_to_density(arc, 1.3, -0.5), levyarc::DomainError);
}
