#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "levyarc/common.hpp"

namespace levyarc {

// A law with enough closed-form structure to be used as a verification
// oracle: a deterministic counter-based sampler plus whichever of pdf / cdf /
// Mellin transform exist in closed form (null otherwise).
//
// mellin(z) = E[X^{z-1}] and enforces the finite-moment strip strictly: a
// request outside mellin_strip throws StripViolation (the analytic
// continuation belongs to the Mellin engine, not to the law).
struct ClosedFormLaw {
    std::string name;
    std::vector<double> params;
    Interval support{0.0, kInf};
    Interval mellin_strip;

    std::function<std::vector<double>(std::size_t, std::uint64_t)> sampler;
    std::function<double(double)> pdf;    // may be empty
    std::function<double(double)> cdf;    // may be empty
    std::function<Complex(Complex)> mellin;  // may be empty

    std::vector<double> sample(std::size_t n, std::uint64_t seed) const {
        return sampler(n, seed);
    }
};

// Gamma(a), unit scale.
ClosedFormLaw gamma_law(double a);

// Generalized arc-sine law Beta(rho, 1-rho) on (0,1).
ClosedFormLaw arcsine_law(double rho);

// Pareto-type law P_{a,b} =d G_b / G_a with density
// x^{b-1}(1+x)^{-a-b} / B(a,b); pareto_law(rho) below is the arc-sine
// companion P_{rho, 1-rho}.
ClosedFormLaw pareto_law(double a, double b);
inline ClosedFormLaw pareto_law(double rho) { return pareto_law(rho, 1.0 - rho); }

// Positive alpha-stable, alpha in (0,1), E exp(-s X) = exp(-s^alpha).
// No closed-form pdf/cdf in general (alpha = 1/2 is Levy(1/2), tested
// against erfc directly).
ClosedFormLaw positive_stable(double alpha);

// Positive stable length-biased by S^(-alpha*gamma) (normalized).  Sampled by
// importance resampling from a 20x base sample; throws SimulationError if the
// effective sample size collapses below 1% of the base draw.
ClosedFormLaw length_biased_stable(double alpha, double gamma);

// Frechet law of E^{-alpha} for a unit exponential E: CDF exp(-x^{-1/alpha}).
ClosedFormLaw frechet_law(double alpha);

// Square of a standard Cauchy; coincides with P_{1/2,1/2}.
ClosedFormLaw cauchy_squared();

}  // namespace levyarc
