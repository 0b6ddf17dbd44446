#pragma once

#include <array>
#include <cstdint>

#include "levyarc/common.hpp"

namespace levyarc {

// Philox4x64-10 block function (Salmon, Moraes, Dror, Shaw, SC'11).
// Counter-based: the output block is a pure function of (counter, key), so
// any sample index can be generated independently of the rest of the stream.
// Verified against numpy.random.Philox known-answer vectors.
struct Philox4x64 {
    static std::array<std::uint64_t, 4> block(const std::array<std::uint64_t, 4>& counter,
                                              const std::array<std::uint64_t, 2>& key);
};

// One logical random stream, addressed as (seed, stream, index).  Parallel
// workers slicing an index range [0, n) by any chunking produce identical
// per-index draws, which is what makes reports worker-count independent.
//
// Layout: key = (seed, stream), counter = (index, draw_block, 0, 0).
class Rng {
  public:
    Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
        : key_{seed, stream}, ctr_{index, 0, 0, 0} {}

    std::uint64_t next_u64();

    // Uniform on the open interval (0, 1); never returns an endpoint, so
    // log(u) and tan(pi(u-1/2)) are always finite.
    double uniform();

    double exponential() ;      // rate 1
    double normal();            // standard, Box-Muller (pairs cached)
    double gamma(double shape); // unit scale, Marsaglia-Tsang
    // Positive alpha-stable, alpha in (0,1), Laplace transform exp(-lambda^alpha)
    // (Kanter's single-uniform/single-exponential construction).
    double positive_stable(double alpha);
    // Strictly stable increment with positivity parameter rho, unit CMS scale;
    // alpha in (0,2], for alpha == 1 only rho == 1/2 is attainable.
    double stable(double alpha, double rho);
    // Same law with the skewness already resolved; avoids recomputing the
    // rho -> beta map in per-increment loops.
    double stable_given_skew(double alpha, double beta_skew);
    std::uint64_t poisson(double mean);

    // Skewness beta in the (alpha, beta) parametrization realizing a given
    // positivity parameter rho; throws DomainError when unattainable.
    static double skew_for_positivity(double alpha, double rho);

  private:
    std::array<std::uint64_t, 2> key_;
    std::array<std::uint64_t, 4> ctr_;
    std::array<std::uint64_t, 4> buf_{};
    int buf_pos_ = 4;
    double cached_normal_ = 0.0;
    bool have_cached_normal_ = false;

    double stable_cms(double alpha, double beta_skew);
};

}  // namespace levyarc
