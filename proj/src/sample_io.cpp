#include "levyarc/sample_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "levyarc/common.hpp"
#include "levyarc/report.hpp"

namespace levyarc {
namespace {

constexpr char kMagic[8] = {'L', 'E', 'V', 'Y', 'S', 'M', 'P', '1'};

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out += char((v >> (8 * i)) & 0xFF);
}

void put_f64(std::string& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t get_u64(const char* p) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | std::uint64_t(static_cast<unsigned char>(p[i]));
    return v;
}

}  // namespace

std::uint64_t fnv1a_hash(const std::string& text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

void write_sample_file(const std::string& path, std::span<const double> samples,
                       std::uint64_t seed, std::uint64_t config_hash,
                       const std::string& config_text) {
    std::string blob;
    blob.reserve(32 + 8 * samples.size());
    blob.append(kMagic, sizeof kMagic);
    put_u64(blob, samples.size());
    put_u64(blob, seed);
    put_u64(blob, config_hash);
    for (double v : samples) put_f64(blob, v);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("sample cache: cannot open '" + path + "' for writing");
    out.write(blob.data(), std::streamsize(blob.size()));
    if (!out) throw IoError("sample cache: short write to '" + path + "'");

    Json meta = Json::object();
    meta["config_hash"] = Json::integer(std::int64_t(config_hash));
    meta["count"] = Json::integer(std::int64_t(samples.size()));
    meta["seed"] = Json::integer(std::int64_t(seed));
    if (!config_text.empty()) meta["config"] = Json::string(config_text);
    std::ofstream side(path + ".meta.json", std::ios::trunc);
    if (!side) throw IoError("sample cache: cannot open sidecar for '" + path + "'");
    side << meta.dump(2) << "\n";
    if (!side) throw IoError("sample cache: short write to sidecar for '" + path + "'");
}

SampleFile read_sample_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("sample cache: cannot open '" + path + "'");
    std::string blob((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (blob.size() < 32) throw IoError("sample cache: '" + path + "' is truncated");
    if (std::memcmp(blob.data(), kMagic, sizeof kMagic) != 0)
        throw IoError("sample cache: '" + path + "' has a wrong magic header");
    SampleFile f;
    const std::uint64_t count = get_u64(blob.data() + 8);
    f.seed = get_u64(blob.data() + 16);
    f.config_hash = get_u64(blob.data() + 24);
    if (blob.size() != 32 + 8 * count)
        throw IoError("sample cache: '" + path + "' length disagrees with its header count");
    f.samples.resize(count);
    for (std::uint64_t i = 0; i < count; ++i)
        f.samples[i] = std::bit_cast<double>(get_u64(blob.data() + 32 + 8 * i));
    return f;
}

}  // namespace levyarc
