#include "levyarc/config.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "levyarc/common.hpp"

namespace levyarc {
namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parse_number(const std::string& text, double& out) {
    if (text.empty()) return false;
    char* end = nullptr;
    out = std::strtod(text.c_str(), &end);
    return end == text.c_str() + text.size();
}

bool parse_integer(const std::string& text, std::int64_t& out) {
    if (text.empty()) return false;
    char* end = nullptr;
    out = std::strtoll(text.c_str(), &end, 10);
    return end == text.c_str() + text.size();
}

// exactly the given keys, no more, no fewer
void require_keys(const std::string& name, const std::map<std::string, double>& params,
                  std::initializer_list<const char*> keys) {
    for (const char* k : keys) {
        if (!params.count(k))
            throw ConfigError("exponent spec '" + name + "': missing parameter '" + k + "'");
    }
    for (const auto& [k, v] : params) {
        (void)v;
        bool known = false;
        for (const char* want : keys) known = known || k == want;
        if (!known) throw ConfigError("exponent spec '" + name + "': unknown parameter '" + k + "'");
    }
}

std::string format_short(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

std::map<std::string, double> parse_param_list(const std::string& text) {
    std::map<std::string, double> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string pair = trim(text.substr(pos, comma - pos));
        pos = comma + 1;
        if (pair.empty()) throw ConfigError("parameter list: empty entry");
        const std::size_t eq = pair.find('=');
        if (eq == std::string::npos)
            throw ConfigError("parameter list: '" + pair + "' is not key=value");
        const std::string key = trim(pair.substr(0, eq));
        const std::string val = trim(pair.substr(eq + 1));
        double num = 0.0;
        if (key.empty() || !parse_number(val, num))
            throw ConfigError("parameter list: '" + pair + "' has no numeric value");
        if (out.count(key)) throw ConfigError("parameter list: duplicate key '" + key + "'");
        out[key] = num;
    }
    return out;
}

CharExponent parse_exponent_spec(const std::string& spec) {
    const std::size_t colon = spec.find(':');
    const std::string name = trim(spec.substr(0, colon));
    const std::map<std::string, double> params =
        colon == std::string::npos ? std::map<std::string, double>{}
                                   : parse_param_list(spec.substr(colon + 1));
    if (name == "brownian") {
        require_keys(name, params, {"a", "sigma"});
        return brownian(params.at("a"), params.at("sigma"));
    }
    if (name == "lamperti") {
        require_keys(name, params, {"alpha", "rho"});
        return lamperti_stable(params.at("alpha"), params.at("rho"));
    }
    if (name == "spectrally-positive") {
        require_keys(name, params, {"alpha"});
        return spectrally_positive(params.at("alpha"));
    }
    if (name == "stable") {
        require_keys(name, params, {"alpha", "rho"});
        return stable_process(params.at("alpha"), params.at("rho"));
    }
    if (name == "tilted-stable") {
        require_keys(name, params, {"alpha", "rho"});
        return tilted_stable(params.at("alpha"), params.at("rho"));
    }
    if (name == "quadruplet") {
        require_keys(name, params, {"q", "a", "sigma"});
        return from_quadruplet(params.at("q"), params.at("a"), params.at("sigma"), std::nullopt,
                               Interval{-kInf, kInf});
    }
    throw ConfigError("exponent spec: unknown family '" + name + "'");
}

MellinFunction parse_mellin_spec(const std::string& spec) {
    const std::size_t colon = spec.find(':');
    const std::string name = trim(spec.substr(0, colon));
    const std::map<std::string, double> params =
        colon == std::string::npos ? std::map<std::string, double>{}
                                   : parse_param_list(spec.substr(colon + 1));
    return mellin_registry(name, params);
}

KeyValues parse_config_file(const std::string& text) {
    KeyValues out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << "config line " << lineno << ": expected key = value, got '" << line << "'";
            throw ConfigError(os.str());
        }
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

Json experiment_config_schema() {
    const std::string text = R"SCHEMA({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "verification run configuration",
  "type": "object",
  "additionalProperties": false,
  "required": ["identity"],
  "properties": {
    "identity": {"type": "string",
                 "enum": ["main-theorem", "doney", "self-reciprocal",
                          "gamma-stable", "mellin-product"]},
    "exponent": {"type": "string"},
    "alpha": {"type": "number"},
    "rho": {"type": "number"},
    "reference-rho": {"type": "number"},
    "n": {"type": "integer", "minimum": 100},
    "nsteps": {"type": "integer", "minimum": 1},
    "seed": {"type": "integer", "minimum": 0},
    "method": {"type": "string", "enum": ["paths", "oracle"]},
    "median-gate": {"type": "boolean"},
    "workers": {"type": "integer", "minimum": 0},
    "out": {"type": "string"},
    "cache-dir": {"type": "string"}
  }
})SCHEMA";
    return Json::parse(text);
}

ExperimentConfig make_experiment_config(const KeyValues& entries) {
    Json doc = Json::object();
    for (const auto& [key, raw] : entries) {
        std::int64_t iv = 0;
        double dv = 0.0;
        if (raw == "true" || raw == "false") {
            doc[key] = Json::boolean(raw == "true");
        } else if (parse_integer(raw, iv)) {
            doc[key] = Json::integer(iv);
        } else if (parse_number(raw, dv)) {
            doc[key] = Json::number(dv);
        } else {
            doc[key] = Json::string(raw);
        }
    }
    const std::vector<std::string> violations = validate_schema(experiment_config_schema(), doc);
    if (!violations.empty()) {
        std::string what = "config rejected:";
        for (const std::string& v : violations) what += "\n  " + v;
        throw ConfigError(what);
    }

    ExperimentConfig cfg;
    cfg.identity = doc.find("identity")->as_string();
    if (const Json* v = doc.find("exponent")) cfg.exponent = v->as_string();
    if (const Json* v = doc.find("alpha")) cfg.alpha = v->as_number();
    if (const Json* v = doc.find("rho")) cfg.rho = v->as_number();
    if (const Json* v = doc.find("reference-rho")) cfg.reference_rho = v->as_number();
    if (const Json* v = doc.find("n")) cfg.n = std::size_t(v->as_int());
    if (const Json* v = doc.find("nsteps")) cfg.n_steps = std::size_t(v->as_int());
    if (const Json* v = doc.find("seed")) cfg.seed = std::uint64_t(v->as_int());
    if (const Json* v = doc.find("method")) cfg.method = v->as_string();
    if (const Json* v = doc.find("median-gate")) cfg.median_gate = v->as_bool();
    if (const Json* v = doc.find("workers")) cfg.workers = int(v->as_int());
    if (const Json* v = doc.find("out")) cfg.out = v->as_string();
    if (const Json* v = doc.find("cache-dir")) cfg.cache_dir = v->as_string();
    return cfg;
}

std::string ExperimentConfig::canonical() const {
    Json doc = Json::object();
    doc["identity"] = Json::string(identity);
    doc["exponent"] = Json::string(exponent);
    if (std::isfinite(alpha)) doc["alpha"] = Json::string(format_short(alpha));
    if (std::isfinite(rho)) doc["rho"] = Json::string(format_short(rho));
    if (reference_rho) doc["reference-rho"] = Json::string(format_short(*reference_rho));
    doc["n"] = Json::integer(std::int64_t(n));
    doc["nsteps"] = Json::integer(std::int64_t(n_steps));
    doc["seed"] = Json::integer(std::int64_t(seed));
    doc["method"] = Json::string(method);
    doc["median-gate"] = Json::boolean(median_gate);
    return doc.dump();
}

}  // namespace levyarc
