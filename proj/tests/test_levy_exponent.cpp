#include <cmath>
#include <complex>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <doctest.h>

#include "levyarc/levy_exponent.hpp"
#include "levyarc/special_functions.hpp"

using namespace levyarc;

// Reference values in this file were frozen from an independent
// arbitrary-precision implementation; see tools/gen_reference_values.py.

namespace {

void check_rel(Complex got, Complex want, double tol) {
    CAPTURE(got.real());
    CAPTURE(got.imag());
    CAPTURE(want.real());
    CAPTURE(want.imag());
    CHECK(std::abs(got - want) <= tol * std::max(1.0, std::abs(want)));
}

LevyMeasureSpec exp_jump_measure() {
    LevyMeasureSpec m;
    m.density = [](double y) { return y > 0.0 ? std::exp(-y) : 0.0; };
    m.tail_plus = [](double y) { return std::exp(-y); };
    m.exp_barrier = 1.0;
    return m;
}

// Psi of the exponential jump measure with drift a:
// a z + z/(1-z) - z (1 - 2/e), the linear part from the |y| < 1 compensation
Complex exp_jump_psi(Complex z, double a) {
    return a * z + z / (1.0 - z) - z * (1.0 - 2.0 / std::exp(1.0));
}

}  // namespace

TEST_CASE("brownian exponent evaluates its quadratic and matches quadrature") {
    CharExponent e = brownian(-0.3, 1.2);
    const Complex pts[] = {{0.3, 0.0}, {-1.2, 0.0}, {2.5, 0.0}, {0.4, 1.1}, {-0.7, -2.3}};
    for (Complex z : pts) {
        Complex want = -0.3 * z + 0.72 * z * z;
        check_rel(e.eval(z), want, 1e-14);
        check_rel(e.eval_quadrature(z), want, 1e-14);
    }
    CHECK(e.strip.hi == kInf);
    CHECK(e.strip.lo == -kInf);
    CHECK(e.killing == 0.0);
}

TEST_CASE("quadrature of an exponential jump density matches closed formulas") {
    CharExponent e = from_quadruplet(0.0, 0.0, 0.0, exp_jump_measure(),
                                     Interval{-kInf, 1.0}, "exp-jumps");
    // frozen reference for the compensated integral at z = 0.3
    CHECK(e.eval_quadrature(Complex(0.3, 0.0)).real() ==
          doctest::Approx(0.34929909327429396439).epsilon(1e-11));
    const Complex pts[] = {{0.3, 0.0}, {-0.8, 0.0}, {0.3, 0.5}, {-0.2, -1.4}, {0.9, 2.0}};
    for (Complex z : pts) {
        check_rel(e.eval_quadrature(z), exp_jump_psi(z, 0.0), 1e-10);
    }
    CHECK_THROWS_AS((void)e.eval(Complex(1.2, 0.0)), StripViolation);
}

TEST_CASE("killed drift converts its killing mass into jumps under tilting") {
    CharExponent e = from_quadruplet(1.0, 0.0, 0.0, std::nullopt,
                                     Interval{-kInf, kInf}, "pure-killing");
    check_rel(e.eval(Complex(0.7, -0.4)), Complex(-1.0, 0.0), 1e-14);

    Classification c = classify(e, 1.0);
    CHECK(c.in_n);
    CHECK(c.in_n_beta);
    CHECK(c.rho == kInf);
    CHECK_FALSE(c.in_n_beta_rho);

    CharExponent t = tilt(e, 0.9);
    CHECK(t.killing == 0.0);
    CHECK(t.measure.has_value());
    CHECK(t.measure->tail_minus(1.3) == doctest::Approx(std::exp(-0.9 * 1.3)).epsilon(1e-12));
    CHECK(t.strip.lo == doctest::Approx(-0.9));
    const Complex pts[] = {{0.4, 0.0}, {-0.3, 0.0}, {1.5, 0.0}, {0.2, 0.8}};
    for (Complex z : pts) {
        Complex want = -z / (z + 0.9);
        check_rel(t.eval(z), want, 1e-12);
        check_rel(t.eval_quadrature(z), want, 1e-8);
    }
}

TEST_CASE("lamperti stable exponent: killing, root, frozen values") {
    CharExponent e = lamperti_stable(0.8, 0.4);
    CHECK(e.killing == doctest::Approx(0.31289596309510670519).epsilon(1e-13));
    check_rel(e.eval(Complex(0.3, 0.7)),
              Complex(-0.51823215089205321148, 0.42695574977138601247), 1e-13);
    CHECK(std::abs(e.eval(Complex(0.4, 0.0))) <= 1e-13);

    RootInfo r = find_rho(e);
    CHECK(r.rho == doctest::Approx(0.4).epsilon(1e-10));
    CHECK(std::abs(r.psi_at_rho) <= 1e-10);

    CHECK_THROWS_AS((void)e.eval(Complex(1.5, 0.0)), StripViolation);
    CHECK_THROWS_AS((void)e.eval(Complex(-2.0, 0.0)), StripViolation);
    CHECK_THROWS_AS((void)e.eval(Complex(1.0, 0.0)), PoleError);

    CHECK_THROWS_AS(lamperti_stable(1.5, 0.2), DomainError);
    CHECK_THROWS_AS(lamperti_stable(0.5, 1.1), DomainError);

    // alpha = 2 collapses to the quadratic 2z(2z-1)
    CharExponent b = lamperti_stable(2.0, 0.5);
    CHECK(b.eval(Complex(0.25, 0.0)).real() == doctest::Approx(-0.25).epsilon(1e-12));
    CHECK(b.eval(Complex(0.7, 0.0)).real() == doctest::Approx(0.56).epsilon(1e-12));
}

TEST_CASE("spectrally positive exponent: calibrated drift and quadrature agreement") {
    CharExponent e = spectrally_positive(0.5);
    CHECK(e.drift == doctest::Approx(-0.93182337072139498845).epsilon(1e-8));
    CHECK(e.measure->exp_barrier == doctest::Approx(3.0));
    check_rel(e.eval(Complex(0.8, 0.0)), Complex(-0.51106941800175996044, 0.0), 1e-12);
    check_rel(e.eval(Complex(-1.5, 0.0)), Complex(1.8491719494928993077, 0.0), 1e-12);

    RootInfo r = find_rho(e);
    CHECK(r.rho == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(r.psi_prime0 == doctest::Approx(-0.88622692545275801365).epsilon(1e-6));

    const Complex pts[] = {{-1.5, 0.0}, {-0.5, 0.0}, {0.3, 0.0},  {0.9, 0.0},
                           {1.3, 0.0},  {2.2, 0.0},  {0.4, 1.1},  {-0.8, -0.6},
                           {2.5, 0.35}};
    for (Complex z : pts) {
        Complex cf = e.eval(z);
        Complex qd = e.eval_quadrature(z);
        CHECK(std::abs(cf - qd) <= 1e-8 * std::max(1.0, std::abs(cf)));
    }

    CHECK(spectrally_positive(0.6).drift ==
          doctest::Approx(-0.9517051134294846373).epsilon(1e-8));

    // density integrates to the tail increment
    boost::math::quadrature::tanh_sinh<double> ts;
    double mass = ts.integrate(e.measure->density, 0.3, 1.7);
    CHECK(mass == doctest::Approx(e.measure->tail_plus(0.3) - e.measure->tail_plus(1.7))
                      .epsilon(1e-10));
}

TEST_CASE("tilting a brownian exponent shifts its drift") {
    CharExponent p = brownian(-0.3, 1.2);
    CharExponent t = tilt(p, 0.9);
    CHECK(t.label == "brownian");
    CHECK(t.drift == doctest::Approx(-0.3 + 1.44 * 0.45).epsilon(1e-14));
    CHECK(t.gaussian == doctest::Approx(1.2));
    const Complex pts[] = {{0.5, 0.0}, {-1.7, 0.0}, {0.4, -1.1}};
    for (Complex z : pts) {
        Complex want = (z / (z + 0.9)) * p.eval(z + 0.9);
        check_rel(t.eval(z), want, 1e-13);
    }
}

TEST_CASE("unit tilt of the lamperti exponent lands on the dual index") {
    CharExponent p = lamperti_stable(0.7, 0.35);
    CharExponent t1 = tilt(p, 1.0);
    CHECK(t1.killing == doctest::Approx(0.40906178172964938795).epsilon(1e-7));
    CHECK(t1.strip.lo == doctest::Approx(-1.0));
    CHECK(t1.strip.hi == doctest::Approx(0.0));

    CharExponent d = dual(t1);
    CharExponent want = lamperti_stable(0.7, 0.65);
    const Complex pts[] = {{0.15, 0.0}, {0.5, 0.0}, {0.85, 0.0}, {0.3, 0.8}, {0.6, -1.2}};
    for (Complex z : pts) {
        check_rel(d.eval(z), want.eval(z), 1e-12);
    }
    RootInfo r = find_rho(d, 1.0);
    CHECK(r.rho == doctest::Approx(0.65).epsilon(1e-9));
}

TEST_CASE("factorization pair wires tilt, dual, and root together") {
    FactorizationPair fp = factorization_pair(lamperti_stable(0.7, 0.35));
    CHECK(fp.rho == doctest::Approx(0.35).epsilon(1e-9));
    CHECK(std::abs(fp.psi_hat1.eval(Complex(0.65, 0.0))) <= 1e-10);
    CHECK(fp.psi.label == "lamperti-stable");

    FactorizationPair fb = factorization_pair(brownian(-0.35, 1.0));
    CHECK(fb.rho == doctest::Approx(0.7).epsilon(1e-10));
    // dual tilted brownian is brownian with drift -(a + sigma^2/2)
    CHECK(fb.psi_hat1.drift == doctest::Approx(-0.15).epsilon(1e-12));
    CHECK(std::abs(fb.psi_hat1.eval(Complex(0.3, 0.0))) <= 1e-12);

    CHECK_THROWS_AS(factorization_pair(brownian(0.5, 1.0)), DomainError);
    CHECK_THROWS_AS(factorization_pair(spectrally_positive(0.5)), DomainError);
}

TEST_CASE("tilted stable exponent matches its frozen references") {
    CharExponent ts3 = tilted_stable(0.6, 0.3);
    check_rel(ts3.eval(Complex(0.55, 0.0)), Complex(0.10835202892265323532, 0.0), 1e-13);
    RootInfo r3 = find_rho(ts3);
    CHECK(r3.rho == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(r3.psi_prime0 == doctest::Approx(-0.33248906835417239274).epsilon(1e-6));
}

TEST_CASE("tilting the spectrally positive exponent reaches the tilted-stable family") {
    const double alpha = 0.6, rho = 0.2;
    CharExponent ts = tilted_stable(alpha, rho);
    RootInfo r = find_rho(ts);
    CHECK(r.rho == doctest::Approx(rho).epsilon(1e-9));

    CharExponent chain = dual(tilt(spectrally_positive(alpha), rho + 1.0 / alpha));
    const Complex pts[] = {{0.15, 0.0}, {0.35, 0.2}, {0.7, -0.4}, {0.9, 0.0}};
    for (Complex z : pts) {
        check_rel(chain.eval(z), ts.eval(z), 1e-11);
    }

    // interior tilt carries a complete quadruplet that still matches the
    // composed closed form
    CharExponent tq = tilt(spectrally_positive(alpha), rho + 1.0 / alpha);
    CHECK(tq.killing == 0.0);
    CHECK(tq.quadruplet_complete);
    const Complex qpts[] = {{-1.0, 0.0}, {-0.3, 0.0}, {0.2, 0.0}, {0.5, 0.0}, {0.2, 0.9}};
    for (Complex z : qpts) {
        Complex cf = tq.eval(z);
        Complex qd = tq.eval_quadrature(z);
        CHECK(std::abs(cf - qd) <= 1e-8 * std::max(1.0, std::abs(cf)));
    }
}

TEST_CASE("edge tilt at the exponent pole produces a killed process") {
    CharExponent tq = tilt(spectrally_positive(0.5), 3.0);
    CHECK(tq.killing > 0.1);
    CHECK(tq.strip.hi == doctest::Approx(0.0));
    const Complex pts[] = {{-1.2, 0.0}, {-0.5, 0.0}, {-0.1, 0.0}, {0.0, 0.7}};
    for (Complex z : pts) {
        Complex cf = tq.eval(z);
        Complex qd = tq.eval_quadrature(z);
        CHECK(std::abs(cf - qd) <= 1e-8 * std::max(1.0, std::abs(cf)));
    }
}

TEST_CASE("dual mirrors the exponent and its measure") {
    CharExponent sp = spectrally_positive(0.5);
    CharExponent d = dual(sp);
    CHECK(d.strip.lo == doctest::Approx(-3.0));
    CHECK(d.strip.hi == kInf);
    CHECK(d.measure->tail_minus(0.7) == doctest::Approx(sp.measure->tail_plus(0.7)));
    CHECK(!d.measure->tail_plus);
    CHECK(d.measure->density(-1.3) == doctest::Approx(sp.measure->density(1.3)));
    check_rel(d.eval(Complex(-0.8, 0.4)), sp.eval(Complex(0.8, -0.4)), 1e-14);
    check_rel(d.eval_quadrature(Complex(-0.8, 0.0)), sp.eval_quadrature(Complex(0.8, 0.0)),
              1e-12);
    CharExponent dd = dual(d);
    check_rel(dd.eval(Complex(0.6, 1.1)), sp.eval(Complex(0.6, 1.1)), 1e-14);
}

TEST_CASE("negative definiteness holds for exponents and fails for an impostor") {
    NegDefResult r1 = check_negative_definite(brownian(-0.3, 1.1), 6, 40, 11);
    CHECK(r1.ok);
    NegDefResult r2 = check_negative_definite(lamperti_stable(0.8, 0.4), 6, 40, 12);
    CHECK(r2.ok);
    NegDefResult r3 = check_negative_definite(spectrally_positive(0.5), 6, 40, 13);
    CHECK(r3.ok);
    NegDefResult r4 = check_negative_definite(
        from_quadruplet(1.0, -0.2, 0.0, std::nullopt, Interval{-kInf, kInf}, "killed-drift"),
        6, 40, 14);
    CHECK(r4.ok);

    CharExponent imp;
    imp.closed_form = [](Complex z) { return z * z * z * z; };
    imp.strip = Interval{-kInf, kInf};
    imp.label = "impostor";
    imp.quadruplet_complete = false;
    NegDefResult bad = check_negative_definite(imp, 8, 40, 15);
    CHECK_FALSE(bad.ok);
    CHECK(bad.worst_relative_excess > 1e-8);

    NegDefResult again = check_negative_definite(brownian(-0.3, 1.1), 6, 40, 11);
    CHECK(again.worst_relative_excess == r1.worst_relative_excess);
}

TEST_CASE("classification distinguishes the admissible classes") {
    Classification up = classify(brownian(0.5, 1.0), 1.0);
    CHECK_FALSE(up.in_n);
    CHECK_FALSE(up.in_n_beta_rho);
    CHECK(up.rho == kInf);

    Classification bm = classify(brownian(-0.25, 1.0), 1.0);
    CHECK(bm.in_n);
    CHECK(bm.in_n_beta);
    CHECK(bm.in_n_beta_rho);
    CHECK(bm.rho == doctest::Approx(0.5).epsilon(1e-10));
    CHECK_FALSE(bm.tail_checked);
    CHECK(std::abs(bm.q_beta) <= 1e-8);

    Classification s1 = classify(spectrally_positive(0.6), 1.0);
    CHECK(s1.in_n_beta);
    CHECK(s1.rho == kInf);
    CHECK_FALSE(s1.in_n_beta_rho);

    Classification s2 = classify(spectrally_positive(0.6), 1.8);
    CHECK(s2.in_n_beta);
    CHECK(s2.tail_checked);
    CHECK(s2.tail_nonincreasing);
    CHECK(s2.rho == doctest::Approx(1.0 / 0.6).epsilon(1e-9));
    CHECK(s2.in_n_beta_rho);

    Classification s3 = classify(spectrally_positive(0.6), 2.8);
    CHECK_FALSE(s3.in_n_beta);

    CharExponent cp = from_quadruplet(0.0, -1.0, 0.0, exp_jump_measure(),
                                      Interval{-kInf, 1.0}, "exp-jumps-drift");
    Classification c1 = classify(cp, 0.9);
    CHECK(c1.in_n);
    CHECK(c1.psi_prime0 == doctest::Approx(-0.26424111765711535681).epsilon(1e-6));
    CHECK(c1.rho == doctest::Approx(0.20901164656533678781).epsilon(1e-7));
    CHECK(c1.tail_checked);
    CHECK(c1.in_n_beta_rho);
    Classification c2 = classify(cp, 2.0);
    CHECK_FALSE(c2.in_n_beta);

    LevyMeasureSpec wob = exp_jump_measure();
    wob.tail_plus = [](double y) { return std::exp(-y) * (1.0 + 0.9 * std::sin(3.0 * y)); };
    CharExponent cw = from_quadruplet(0.0, -1.0, 0.0, wob, Interval{-kInf, 1.0}, "wobbly-tail");
    Classification c3 = classify(cw, 0.9);
    CHECK(c3.tail_checked);
    CHECK_FALSE(c3.tail_nonincreasing);
    CHECK_FALSE(c3.in_n_beta_rho);
}

TEST_CASE("root finder sentinels and wide scans") {
    RootInfo r1 = find_rho(brownian(0.5, 1.0));
    CHECK(r1.rho == kInf);
    CHECK(r1.psi_prime0 == doctest::Approx(0.5).epsilon(1e-8));

    RootInfo r2 = find_rho(brownian(-0.25, 1.0));
    CHECK(r2.rho == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(r2.psi_at_rho) <= 1e-12);

    RootInfo r3 = find_rho(lamperti_stable(0.5, 0.3));
    CHECK(r3.rho == doctest::Approx(0.3).epsilon(1e-10));

    RootInfo r4 = find_rho(brownian(-40.0, 1.0));
    CHECK(r4.rho == doctest::Approx(80.0).epsilon(1e-10));

    RootInfo r5 = find_rho(brownian(-0.25, 1.0), 0.3);
    CHECK(r5.rho == kInf);
}

TEST_CASE("stable increment exponent lives on the imaginary axis") {
    CharExponent st = stable_process(1.3, 0.55);
    check_rel(st.eval(Complex(0.0, 1.7)),
              Complex(-1.9933501712633213621, 0.41280297552736044541), 1e-13);
    Complex conj_pt = st.eval(Complex(0.0, -1.7));
    check_rel(conj_pt, Complex(-1.9933501712633213621, -0.41280297552736044541), 1e-13);
    CHECK_THROWS_AS((void)st.eval(Complex(0.2, 0.0)), StripViolation);

    CharExponent cauchy = stable_process(1.0, 0.5);
    CHECK(cauchy.eval(Complex(0.0, -2.5)).real() == doctest::Approx(-2.5));
    CHECK(cauchy.eval(Complex(0.0, -2.5)).imag() == doctest::Approx(0.0));

    CHECK_NOTHROW(stable_process(0.5, 0.9));
    CHECK_THROWS_AS(stable_process(1.6, 0.9), DomainError);
}

TEST_CASE("tilt rejects inadmissible rates") {
    CHECK_THROWS_AS(tilt(lamperti_stable(0.8, 0.4), 1.5), InadmissibleTilt);
    CHECK_THROWS_AS(tilt(spectrally_positive(0.5), 3.2), InadmissibleTilt);
    CHECK_THROWS_AS(tilt(brownian(-0.3, 1.0), 0.0), InadmissibleTilt);
    CHECK_THROWS_AS(tilt(brownian(-0.3, 1.0), -0.5), InadmissibleTilt);
    CHECK_THROWS_AS(tilt(stable_process(1.3, 0.55), 0.5), InadmissibleTilt);
}
