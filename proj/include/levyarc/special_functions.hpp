#pragma once

#include <span>

#include "levyarc/common.hpp"

namespace levyarc {

// Principal branch of log Gamma(z), Lanczos approximation (g = 7, 9
// coefficients) with the reflection formula for Re z < 1/2.  Throws PoleError
// within 1e-12 of a non-positive integer.
Complex log_gamma(Complex z);

// Gamma(z) = exp(log_gamma(z)).  Overflows to +-inf for large |Re z| rather
// than throwing; poles still throw.
Complex gamma_fn(Complex z);

// Entire reciprocal 1/Gamma(z); returns 0 at (and within 1e-12 of) the poles
// of Gamma instead of throwing.
Complex gamma_recip(Complex z);

// prod Gamma(num[i]) / prod Gamma(den[j]) evaluated in log space.  A pole in a
// denominator factor zeroes the quotient; a pole in a numerator factor throws
// unless it is cancelled by a denominator pole, which is not attempted here.
Complex gamma_quotient(std::span<const Complex> num, std::span<const Complex> den);

// Euler beta function B(a, b) for a, b > 0.
double beta_fn(double a, double b);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation
// (Lentz), symmetric switch at x = (a+1)/(a+b+2).
double inc_beta(double a, double b, double x);

// Regularized lower incomplete gamma P(a, x): series for x < a+1, continued
// fraction otherwise.
double inc_gamma_lower(double a, double x);

// Envelope |Gamma(a+ib)| <= scale * |b|^(a-1/2) * exp(-rate*|b|) for
// |b| >= b_min, with rate = pi/2 and scale fitted on a log grid.  As
// |b| -> inf the tight constant is sqrt(2*pi); the fitted scale stays within
// a small factor of it.  Work in log space: the bound underflows quickly.
struct DecayEnvelope {
    double a = 0;
    double b_min = 1;
    double scale = 0;        // multiplicative constant
    double rate = kPi / 2;   // exponential decay rate in |b|

    double log_bound(double b) const;
};

DecayEnvelope stirling_envelope(double a, double b_min);

}  // namespace levyarc
