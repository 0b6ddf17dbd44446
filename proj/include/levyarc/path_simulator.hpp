#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "levyarc/common.hpp"
#include "levyarc/levy_exponent.hpp"
#include "levyarc/rng.hpp"

namespace levyarc {

// Discretization parameters for exponential-functional paths.  kill_rate adds
// an exponential clock on top of any killing the exponent already carries, so
// a conservative process can be killed without rebuilding it.
//
// The transient stopping rule truncates a path once e^{xi} falls below
// stop_epsilon * |drift| * (integral so far).  The neglected remainder is
// e^{xi} times a fresh copy of the functional, whose law has tail index
// rho < 1, so exceedances of the deterministic drift bound shrink only like
// stop_epsilon^rho; the default is small enough to push the truncation
// distortion below Monte Carlo noise for roots down to about 0.3.
struct PathConfig {
    double dt = 1e-3;
    double stop_epsilon = 1e-6;   // relative expected-residual threshold
    std::size_t max_steps = 2000000;
    double kill_rate = 0.0;
};

// One side of a truncated jump measure: total rate beyond the cutoff, a
// quantile table for the normalized restriction (levels k / table size), and
// the side tail kept for exact inversion inside the last table bin.
struct JumpSide {
    double rate = 0.0;
    std::vector<double> quantile;
    std::function<double(double)> tail;
};

// Samples increments of xi over an arbitrary time step.  Brownian and stable
// kinds are exact; general quadruplets use a compound Poisson approximation:
// jumps of size |y| >= cutoff at their exact rate, the compensator of the
// removed window [cutoff, 1) folded into the drift, and the small jumps
// |y| < cutoff replaced by a Gaussian of matching variance.
struct IncrementSampler {
    enum class Kind { brownian_drift, stable, compound_poisson_approx };
    Kind kind = Kind::brownian_drift;

    double drift = 0.0;    // per unit time; compensator-adjusted for compound
    double sigma = 0.0;    // per sqrt unit time; includes the small-jump term

    double alpha = 0.0;    // stable kind: increment = dt^{1/alpha} S(alpha,rho)
    double rho = 0.5;

    double small_jump_cutoff = 0.0;
    double gaussian_correction = 0.0;  // int_{|y|<cutoff} y^2 Pi(dy)
    JumpSide plus, minus;
    double jump_rate = 0.0;            // plus.rate + minus.rate

    double kill_rate = 0.0;
    double mean_drift = kNaN;          // Psi'(0+); decay proxy for stopping
    std::string label;

    double increment(Rng& rng, double dt) const;
};

// Builds the increment sampler for an exponent: exact for Brownian-with-drift
// quadruplets and for stable increment exponents, compound Poisson with
// small-jump Gaussian correction when a Levy density is available.  Throws
// DomainError for exponents known only through a closed form.
IncrementSampler make_sampler(const CharExponent& psi, double epsilon = 1e-3);

// Monte Carlo draws of the exponential functional I = int_0^{e_q} e^{xi_t} dt
// by trapezoid accumulation.  Killed case (kill_rate > 0 on sampler or
// config) draws the clock first and integrates exactly to it; the transient
// case stops once the expected remaining mass e^{xi}/(|mean_drift| I) falls
// below stop_epsilon.  Paths hitting max_steps keep their partial integral;
// if more than 1% of the batch does, the batch is rejected with
// SimulationError.  Path i draws only from stream (seed, i), so results are
// independent of the worker count.
std::vector<double> exp_functional(const IncrementSampler& sampler, const PathConfig& cfg,
                                   std::size_t n, std::uint64_t seed);

// Running maxima of a strictly stable path on [0,1] observed on a ladder of
// nested grids: level l uses base_steps * 2^l steps, the finest level is
// simulated and coarser levels read the same path on every 2^(levels-1-l)-th
// point, so per path the maxima increase with the level.  Raw values are
// returned index-aligned across levels, including the rare nonpositive ones
// (the continuous supremum is a.s. positive; an n-point grid misses that
// with probability ~ n^(rho-1)).  Callers condition per level on positivity;
// the grid maximum underestimates the supremum, so identity checks compare
// levels instead of extrapolating.
std::vector<std::vector<double>> stable_supremum_ladder(double alpha, double rho,
                                                        std::size_t base_steps, int levels,
                                                        std::size_t n, std::uint64_t seed);

// Single grid, conditioned on a positive maximum (size may be below n).
std::vector<double> stable_supremum(double alpha, double rho, std::size_t n_steps,
                                    std::size_t n, std::uint64_t seed);

// Exact sampler for the exponential functional of brownian(a, sigma), a < 0:
// I = 2 / (sigma^2 G_nu) with nu = -2a/sigma^2 (Dufresne's identity).  The
// inverse-gamma mean is infinite when nu <= 1.
std::vector<double> dufresne_oracle(double a, double sigma, std::size_t n,
                                    std::uint64_t seed);

// Directory for binary caches of exp_functional and stable_supremum_ladder
// batches, keyed by a hash of every parameter entering the simulation; empty
// (the default) disables caching.  Cached batches are bit-identical to fresh
// ones, so hits preserve determinism; unreadable cache files are silently
// regenerated, write failures raise IoError.
void set_sample_cache_dir(const std::string& dir);
std::string sample_cache_dir();

}  // namespace levyarc
