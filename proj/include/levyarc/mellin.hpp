#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "levyarc/common.hpp"
#include "levyarc/levy_exponent.hpp"

namespace levyarc {

struct MellinPole {
    double location = 0.0;
    int order = 1;
};

// Mellin transform M(z) = E[X^{z-1}] of a positive law.  The strip is the
// open interval of real parts where the defining integral converges; closed
// forms continue meromorphically beyond it and eval follows the formula
// wherever the gamma factors allow.  Invariants: eval(1) = 1, positivity on
// the real strip segment, eval(conj z) = conj(eval(z)).
struct MellinFunction {
    std::function<Complex(Complex)> eval;
    Interval strip;
    std::vector<MellinPole> poles;
    std::string name;

    Complex operator()(Complex z) const { return eval(z); }
};

// Registered closed forms, each normalized so eval(1) = 1 exactly.
//
// pareto_mellin:  P_rho with density (sin(pi rho)/pi) x^{-rho} (1+x)^{-1};
//                 M(z) = Gamma(z-rho) Gamma(1+rho-z) / (Gamma(rho) Gamma(1-rho)).
// arcsine_mellin: Beta(rho, 1-rho); M(z) = Gamma(rho+z-1) / (Gamma(z) Gamma(rho)).
// gamma_mellin:   Gamma(a), unit scale; M(z) = Gamma(a+z-1) / Gamma(a).
// brownian_ef_mellin: exponential functional of a Brownian motion with
//                 drift a < 0 and volatility sigma, distributed as
//                 2 / (sigma^2 G_nu) with nu = -2a/sigma^2;
//                 M(z) = (2/sigma^2)^{z-1} Gamma(nu+1-z) / Gamma(nu).
// tilted_stable_ef_mellin: exponential functional of the tilted stable
//                 exponent z Gamma(alpha(1-rho)+alpha z)/Gamma(-alpha rho+alpha z);
//                 M(z) = [Gamma(z-rho)/Gamma(alpha(z-rho))]
//                        [Gamma(alpha(1-rho))/Gamma(1-rho)]
//                        [Gamma(1+rho-z)/Gamma(rho)].
// tilted_stable_dual_ef_mellin: functional of the dual factor exponent
//                 -z Gamma(alpha(2-rho-z))/Gamma(alpha(1-rho-z));
//                 M(z) = Gamma(alpha(2-rho-z)) / Gamma(alpha(1-rho)).
// frechet_ef_mellin: Frechet law E^{-alpha}; M(z) = Gamma(1-alpha(z-1)).
MellinFunction pareto_mellin(double rho);
MellinFunction arcsine_mellin(double rho);
MellinFunction gamma_mellin(double a);
MellinFunction brownian_ef_mellin(double drift, double sigma);
MellinFunction tilted_stable_ef_mellin(double alpha, double rho);
MellinFunction tilted_stable_dual_ef_mellin(double alpha, double rho);
MellinFunction frechet_ef_mellin(double alpha);

// Name-based lookup used by the CLI: "pareto", "arcsine", "gamma",
// "brownian-ef", "lamperti-ef" (alias "tilted-stable-ef"),
// "tilted-stable-dual-ef", "frechet-ef".  Unknown names or parameter keys
// throw ConfigError; out-of-range parameters throw DomainError.
MellinFunction mellin_registry(const std::string& name,
                               const std::map<std::string, double>& params);

// The functional-equation ratio z -> -z / Psi(z); the removable singularity
// at 0 evaluates to -1/Psi'(0).  valid is the real-part interval on which the
// ratio can be formed from the exponent.
struct RecurrenceSpec {
    std::function<Complex(Complex)> ratio;
    Interval valid;
    std::string valid_desc;
};

RecurrenceSpec recurrence_from_exponent(const CharExponent& psi);

// Max over the grid of |m(z+1) Psi(z) + z m(z)| / (|m(z+1) Psi(z)| + |z m(z)|).
// Grid points must keep z and z+1 clear of the listed poles of m and clear of
// zeros of Psi (including z = 0); violations throw PoleError.
double verify_recurrence(const MellinFunction& m, const CharExponent& psi,
                         const std::vector<Complex>& grid);

// Same residual with an explicit ratio: |m(z+1) - r(z) m(z)| scaled.
double verify_recurrence(const MellinFunction& m, const RecurrenceSpec& rec,
                         const std::vector<Complex>& grid);

// Telescopes m(z+1) = ratio(z) m(z) forwards or backwards until the argument
// falls inside m's strip; backward steps divide by the ratio.  Throws
// PoleError when a step lands on a pole of m or on a zero of the exponent,
// DomainError when the target is not reachable by integer shifts.
Complex extend_by_recurrence(const MellinFunction& m, const RecurrenceSpec& rec, Complex z);
Complex extend_by_recurrence(const MellinFunction& m, const CharExponent& psi, Complex z);

struct MellinEstimate {
    Complex estimate;
    double standard_error = 0.0;  // jackknife, combined over real and imaginary parts
    bool heavy_tail = false;      // top 0.1% of samples carry over half the magnitude mass
};

// Sample mean of x^{z-1} over positive samples.
MellinEstimate mc_mellin(std::span<const double> samples, Complex z);

// Bernstein-gamma function W with W(z+1) = phi(z) W(z), W(1) = 1, held as a
// registered closed form; no generic product construction is attempted.
struct BernsteinGamma {
    std::function<Complex(Complex)> phi;
    std::function<Complex(Complex)> closed_form;
    std::string name;
};

// W for the Wiener-Hopf factor phi(z) = alpha z Gamma(alpha(1-rho) + alpha z)
// / Gamma(1 - alpha rho + alpha z) of the tilted stable exponent:
// W(z) = Gamma(1-rho) Gamma(z) Gamma(alpha(z-rho)) / (Gamma(z-rho) Gamma(alpha(1-rho))).
BernsteinGamma wiener_hopf_bernstein_gamma(double alpha, double rho);

// Evaluates the registered closed form; DomainError when none is registered.
Complex bernstein_gamma_eval(const BernsteinGamma& w, Complex z);

// Max scaled recurrence residual |W(z+1) - phi(z) W(z)| over the grid.
double bernstein_gamma_residual(const BernsteinGamma& w, const std::vector<Complex>& grid);

struct InsufficientDecay : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mellin inversion f(x) = (1/2pi) int m(c+it) x^{-c-it} dt.  The decay of the
// integrand is fitted with a Stirling-form envelope K t^p e^{-bt}; with
// exponential decay the line is truncated where the envelope tail drops below
// 1e-9 and summed by trapezoid with step h = min(0.05, pi/(4|log x|+4)).
// With only algebraic decay the contour is tilted into the analyticity wedge
// (rays at 120 degrees for x < 1, 60 degrees for x > 1) where x^{-z} decays
// exponentially, and the rays are integrated by composite Gauss-Legendre
// panels.  Throws InsufficientDecay when neither route meets the tail bound
// and StripViolation when c is outside the strip.
double invert_to_density(const MellinFunction& m, double c, double x);

}  // namespace levyarc
