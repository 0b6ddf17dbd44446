#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace levyarc {

using Complex = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
inline constexpr double kPi = 3.14159265358979323846;

// Open interval of real parts, used for analyticity / moment strips.
// lo == -inf or hi == +inf encode half-lines; lo >= hi encodes the empty set.
struct Interval {
    double lo = -kInf;
    double hi = kInf;

    bool contains(double x) const { return x > lo && x < hi; }
    bool empty() const { return !(lo < hi); }
};

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Evaluation requested at (or too close to) a pole of a gamma factor.
struct PoleError : DomainError {
    using DomainError::DomainError;
};

// Mellin/exponent evaluation outside the guaranteed strip.
struct StripViolation : DomainError {
    using DomainError::DomainError;
};

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InadmissibleTilt : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SimulationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File reading or writing failed, or a sample cache file is malformed.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace levyarc
