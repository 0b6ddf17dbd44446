#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace levyarc {

// FNV-1a; used to key sample caches by their generating configuration.
std::uint64_t fnv1a_hash(const std::string& text);

struct SampleFile {
    std::vector<double> samples;
    std::uint64_t seed = 0;
    std::uint64_t config_hash = 0;
};

// Flat little-endian binary sample cache: 8-byte magic "LEVYSMP1", then
// count, seed and config hash as 64-bit words, then count doubles.  A sidecar
// "<path>.meta.json" records the same header fields (plus the configuration
// text when given) for humans and external tools.  Throws IoError on write
// failure, read failure, or a malformed/truncated file.
void write_sample_file(const std::string& path, std::span<const double> samples,
                       std::uint64_t seed, std::uint64_t config_hash,
                       const std::string& config_text = "");

SampleFile read_sample_file(const std::string& path);

}  // namespace levyarc
