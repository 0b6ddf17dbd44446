#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "levyarc/levy_exponent.hpp"
#include "levyarc/mellin.hpp"
#include "levyarc/report.hpp"

namespace levyarc {

// "key=value,key=value" -> numeric parameter map.  Throws ConfigError on
// malformed pairs or non-numeric values.
std::map<std::string, double> parse_param_list(const std::string& text);

// Exponent spec strings, "name" or "name:key=value,...".  Builtins:
//   brownian:a=...,sigma=...          lamperti:alpha=...,rho=...
//   spectrally-positive:alpha=...     stable:alpha=...,rho=...
//   tilted-stable:alpha=...,rho=...   quadruplet:q=...,a=...,sigma=...
// Unknown names or parameter keys throw ConfigError; out-of-range values
// surface as DomainError from the constructors.
CharExponent parse_exponent_spec(const std::string& spec);

// Mellin spec strings with the same shape, resolved through mellin_registry
// ("pareto:rho=0.5", "lamperti-ef:alpha=0.6,rho=0.3", ...).
MellinFunction parse_mellin_spec(const std::string& spec);

// A fully resolved verification run.  Assembled from command-line flags
// and/or a key=value config file; every key is schema-checked, unknown keys
// are rejected.
struct ExperimentConfig {
    std::string identity;
    std::string exponent;             // spec string; empty when not needed
    double alpha = kNaN;
    double rho = kNaN;
    std::optional<double> reference_rho;
    std::size_t n = 100000;
    std::size_t n_steps = 32768;
    std::uint64_t seed = 1;
    std::string method = "paths";     // "paths" or "oracle"
    bool median_gate = false;
    int workers = 0;                  // 0 keeps the library default
    std::string out;                  // report path prefix; empty = stdout only
    std::string cache_dir;            // sample cache directory; empty disables

    // canonical serialization (also the cache key material)
    std::string canonical() const;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// Parses "key = value" lines; '#' starts a comment, blank lines are skipped.
KeyValues parse_config_file(const std::string& text);

// Folds key/value pairs (file entries first, then flag overrides) into a
// validated config.  Throws ConfigError listing every violation.
ExperimentConfig make_experiment_config(const KeyValues& entries);

// The schema make_experiment_config validates against.
Json experiment_config_schema();

}  // namespace levyarc
