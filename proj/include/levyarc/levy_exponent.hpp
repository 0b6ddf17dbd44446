#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "levyarc/common.hpp"

namespace levyarc {

// Levy measure given by a density on R \ {0} together with its integrated
// tails; tail_plus(y) = Pi((y, inf)) and tail_minus(y) = Pi((-inf, -y)), both
// for y > 0.  Either side may be absent (empty std::function) for spectrally
// one-sided measures.  exp_barrier / exp_barrier_neg are the suprema of u
// with finite exponential moments int_{|y|>1} e^{u|y|} Pi(dy) on the positive
// and negative side respectively.
struct LevyMeasureSpec {
    std::function<double(double)> density;
    std::function<double(double)> tail_plus;
    std::function<double(double)> tail_minus;
    double exp_barrier = kInf;
    double exp_barrier_neg = kInf;
};

// Characteristic exponent Psi(z) = log E exp(z xi_1) of a (possibly killed)
// Levy process, in the quadruplet form
//
//   Psi(z) = drift*z + gaussian^2 z^2/2
//          + int (e^{zy} - 1 - zy 1_{|y|<1}) Pi(dy) - killing.
//
// closed_form, when present, is authoritative for evaluation; the quadruplet
// is kept alongside for simulation and cross-validation.  strip is the real
// interval on which Psi extends analytically (purely imaginary arguments are
// always allowed).
struct CharExponent {
    double killing = 0.0;
    double drift = 0.0;
    double gaussian = 0.0;
    std::optional<LevyMeasureSpec> measure;
    Interval strip{-kInf, kInf};
    std::function<Complex(Complex)> closed_form;
    std::string label;
    std::vector<double> params;
    // false for exponents known only through a closed form, whose drift /
    // measure fields do not reconstruct Psi
    bool quadruplet_complete = true;

    // closed form if present, else Levy-Khintchine quadrature
    Complex eval(Complex z) const;
    // always via quadrature (requires quadruplet_complete); used to
    // cross-validate closed forms
    Complex eval_quadrature(Complex z) const;

    bool has_measure() const { return measure.has_value(); }
};

// General quadruplet constructor (also used by config parsing).
CharExponent from_quadruplet(double killing, double drift, double gaussian,
                             std::optional<LevyMeasureSpec> measure, Interval strip,
                             std::string label = "quadruplet");

// ---- built-in exponents -------------------------------------------------

// Psi(z) = a z + sigma^2 z^2 / 2
CharExponent brownian(double a, double sigma);

// Gamma-quotient exponent of the stable Lamperti family:
// Psi(z) = -Gamma(1+alpha z) Gamma(alpha - alpha z)
//        / (Gamma(1 - alpha rho + alpha z) Gamma(alpha rho - alpha z)),
// strip (-1/alpha, 1), unique root at rho, killing Psi(0) < 0.
CharExponent lamperti_stable(double alpha, double rho);

// Spectrally positive exponent Psi(z) = Gamma(1+alpha-alpha z)/(alpha Gamma(-alpha z)),
// alpha in (0,1): conservative, mean -Gamma(1+alpha), root at 1/alpha, strip
// (-inf, 1+1/alpha).  Carries its explicit Levy density
//   (1/Gamma(1-alpha)) ((alpha+1)/alpha) e^{-(alpha+1)y/alpha} (1-e^{-y/alpha})^{-(alpha+2)}
// with the linear drift calibrated against the closed form at construction.
CharExponent spectrally_positive(double alpha);

// Psi(z) = z Gamma(alpha(1-rho) + alpha z) / Gamma(-alpha rho + alpha z),
// alpha in (0,1): conservative with Psi'(0+) < 0 and root at rho.
CharExponent tilted_stable(double alpha, double rho);

// Strictly stable increment exponent with positivity parameter rho; defined
// on the imaginary axis only (empty real strip), used by the path simulator.
CharExponent stable_process(double alpha, double rho);

// ---- analysis ------------------------------------------------------------

struct RootInfo {
    double rho = kInf;            // +inf when no root in the window
    double psi_prime0 = kNaN;     // one-sided derivative at 0+, Richardson
    double psi_at_rho = kNaN;     // residual at the reported root
    bool has_root() const { return rho < kInf; }
};

// Largest zero of Psi on (0, min(strip.hi, search_hi)); +inf sentinel when
// the zero set is empty.  Convexity of Psi on the strip means the zero is the
// unique sign change past the origin.
RootInfo find_rho(const CharExponent& psi, double search_hi = kInf);

struct Classification {
    bool in_n = false;            // killed, or transient with Psi'(0+) < 0
    bool in_n_beta = false;       // + exponential moments up to beta
    bool in_n_beta_rho = false;   // + finite rho, tilt-admissible tail, q_beta <= 0
    double beta = 0.0;
    double rho = kInf;
    double psi_prime0 = kNaN;
    double q_beta = kNaN;         // lim_{u downarrow 0} T_beta Psi(u)
    bool tail_checked = false;    // measure present, grid test executed
    bool tail_nonincreasing = false;
    std::string notes;
};

Classification classify(const CharExponent& psi, double beta);

// Exponential change of measure at rate beta:
// (T_beta Psi)(z) = (z/(z+beta)) Psi(z+beta), with the transformed quadruplet
// carried along when a measure is present.  Throws InadmissibleTilt if beta
// exceeds the strip / exponential-moment barrier or the killing limit q_beta
// comes out positive.
CharExponent tilt(const CharExponent& psi, double beta);

// Dual process -xi: Psi_hat(z) = Psi(-z), measure mirrored.
CharExponent dual(const CharExponent& psi);

// The pair (Psi, dual of T_1 Psi) whose exponential functionals realize the
// arc-sine and Pareto factorizations, together with the root rho of Psi.
struct FactorizationPair {
    CharExponent psi;
    CharExponent psi_hat1;
    double rho = kNaN;
};

FactorizationPair factorization_pair(const CharExponent& psi);

// Random quadratic-form test of the continuous-negative-definiteness of
// theta -> -Psi(-i theta): draws k points and k weights summing to zero and
// checks Re sum f(theta_j - theta_l) c_j conj(c_l) <= tol * scale.
struct NegDefResult {
    bool ok = true;
    double worst_relative_excess = 0.0;  // max over trials of Re S / scale
    int trials = 0;
};

NegDefResult check_negative_definite(const CharExponent& psi, int k, int trials,
                                     std::uint64_t seed, double tol = 1e-8);

}  // namespace levyarc
