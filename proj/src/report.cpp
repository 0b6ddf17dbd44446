#include "levyarc/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "levyarc/common.hpp"

namespace levyarc {
namespace {

std::string format_double(double v) {
    if (std::isnan(v)) return "\"nan\"";
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string shortest_double(double v) {
    if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    char buf[40];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, end);
}

void escape_into(std::string& out, const std::string& s) {
    out += '"';
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += char(c);
                }
        }
    }
    out += '"';
}

const char* type_name(Json::Type t) {
    switch (t) {
        case Json::Type::null: return "null";
        case Json::Type::boolean: return "boolean";
        case Json::Type::integer: return "integer";
        case Json::Type::number: return "number";
        case Json::Type::string: return "string";
        case Json::Type::array: return "array";
        case Json::Type::object: return "object";
    }
    return "?";
}

class Parser {
  public:
    explicit Parser(const std::string& text) : text_(text) {}

    Json run() {
        Json v = value();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing characters after document");
        return v;
    }

  private:
    const std::string& text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        std::ostringstream os;
        os << "json parse error at offset " << pos_ << ": " << what;
        throw ConfigError(os.str());
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
                ++pos_;
            else
                break;
        }
    }

    char peek() {
        if (pos_ >= text_.size()) fail("unexpected end of input");
        return text_[pos_];
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    bool literal(const char* word) {
        std::size_t len = std::char_traits<char>::length(word);
        if (text_.compare(pos_, len, word) == 0) {
            pos_ += len;
            return true;
        }
        return false;
    }

    Json value() {
        skip_ws();
        char c = peek();
        switch (c) {
            case '{': return object();
            case '[': return array();
            case '"': return Json::string(string_body());
            case 't':
                if (literal("true")) return Json::boolean(true);
                fail("bad literal");
            case 'f':
                if (literal("false")) return Json::boolean(false);
                fail("bad literal");
            case 'n':
                if (literal("null")) return Json::null();
                fail("bad literal");
            default: return number();
        }
    }

    Json object() {
        expect('{');
        Json obj = Json::object();
        skip_ws();
        if (peek() == '}') {
            ++pos_;
            return obj;
        }
        while (true) {
            skip_ws();
            if (peek() != '"') fail("expected object key");
            std::string key = string_body();
            skip_ws();
            expect(':');
            obj[key] = value();
            skip_ws();
            char c = peek();
            ++pos_;
            if (c == '}') return obj;
            if (c != ',') fail("expected ',' or '}'");
        }
    }

    Json array() {
        expect('[');
        Json arr = Json::array();
        skip_ws();
        if (peek() == ']') {
            ++pos_;
            return arr;
        }
        while (true) {
            arr.push_back(value());
            skip_ws();
            char c = peek();
            ++pos_;
            if (c == ']') return arr;
            if (c != ',') fail("expected ',' or ']'");
        }
    }

    void append_codepoint(std::string& out, unsigned cp) {
        if (cp < 0x80) {
            out += char(cp);
        } else if (cp < 0x800) {
            out += char(0xC0 | (cp >> 6));
            out += char(0x80 | (cp & 0x3F));
        } else {
            out += char(0xE0 | (cp >> 12));
            out += char(0x80 | ((cp >> 6) & 0x3F));
            out += char(0x80 | (cp & 0x3F));
        }
    }

    std::string string_body() {
        expect('"');
        std::string out;
        while (true) {
            if (pos_ >= text_.size()) fail("unterminated string");
            char c = text_[pos_++];
            if (c == '"') return out;
            if (c != '\\') {
                out += c;
                continue;
            }
            if (pos_ >= text_.size()) fail("unterminated escape");
            char e = text_[pos_++];
            switch (e) {
                case '"': out += '"'; break;
                case '\\': out += '\\'; break;
                case '/': out += '/'; break;
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                case 'r': out += '\r'; break;
                case 'b': out += '\b'; break;
                case 'f': out += '\f'; break;
                case 'u': {
                    if (pos_ + 4 > text_.size()) fail("short unicode escape");
                    unsigned cp = 0;
                    for (int i = 0; i < 4; ++i) {
                        char h = text_[pos_++];
                        cp <<= 4;
                        if (h >= '0' && h <= '9')
                            cp |= unsigned(h - '0');
                        else if (h >= 'a' && h <= 'f')
                            cp |= unsigned(h - 'a' + 10);
                        else if (h >= 'A' && h <= 'F')
                            cp |= unsigned(h - 'A' + 10);
                        else
                            fail("bad unicode escape digit");
                    }
                    if (cp >= 0xD800 && cp <= 0xDFFF) fail("surrogate escapes unsupported");
                    append_codepoint(out, cp);
                    break;
                }
                default: fail("unknown escape");
            }
        }
    }

    Json number() {
        std::size_t start = pos_;
        if (peek() == '-') ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        bool integral = true;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            integral = false;
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            integral = false;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
        }
        const std::string tok = text_.substr(start, pos_ - start);
        if (tok.empty() || tok == "-") fail("bad number");
        std::size_t i = tok[0] == '-' ? 1 : 0;
        const std::size_t int_start = i;
        while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) ++i;
        if (i == int_start) fail("bad number");
        if (tok[int_start] == '0' && i - int_start > 1) fail("number has a leading zero");
        if (i < tok.size() && tok[i] == '.') {
            const std::size_t frac_start = ++i;
            while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) ++i;
            if (i == frac_start) fail("number has an empty fraction");
        }
        if (i < tok.size() && (tok[i] == 'e' || tok[i] == 'E')) {
            ++i;
            if (i < tok.size() && (tok[i] == '+' || tok[i] == '-')) ++i;
            const std::size_t exp_start = i;
            while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) ++i;
            if (i == exp_start) fail("number has an empty exponent");
        }
        if (i != tok.size()) fail("bad number");
        if (integral) {
            std::int64_t iv = 0;
            auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), iv);
            if (ec == std::errc() && p == tok.data() + tok.size()) return Json::integer(iv);
        }
        char* end = nullptr;
        double dv = std::strtod(tok.c_str(), &end);
        if (end != tok.c_str() + tok.size()) fail("bad number");
        return Json::number(dv);
    }
};

}  // namespace

Json Json::null() { return Json(); }

Json Json::boolean(bool v) {
    Json j;
    j.type_ = Type::boolean;
    j.bool_ = v;
    return j;
}

Json Json::integer(std::int64_t v) {
    Json j;
    j.type_ = Type::integer;
    j.int_ = v;
    return j;
}

Json Json::number(double v) {
    Json j;
    j.type_ = Type::number;
    j.num_ = v;
    return j;
}

Json Json::string(std::string v) {
    Json j;
    j.type_ = Type::string;
    j.str_ = std::move(v);
    return j;
}

Json Json::array() {
    Json j;
    j.type_ = Type::array;
    return j;
}

Json Json::object() {
    Json j;
    j.type_ = Type::object;
    return j;
}

bool Json::as_bool() const {
    if (type_ != Type::boolean) throw ConfigError("json: not a boolean");
    return bool_;
}

std::int64_t Json::as_int() const {
    if (type_ != Type::integer) throw ConfigError("json: not an integer");
    return int_;
}

double Json::as_number() const {
    if (type_ == Type::integer) return double(int_);
    if (type_ != Type::number) throw ConfigError("json: not a number");
    return num_;
}

const std::string& Json::as_string() const {
    if (type_ != Type::string) throw ConfigError("json: not a string");
    return str_;
}

void Json::push_back(Json v) {
    if (type_ != Type::array) throw ConfigError("json: not an array");
    arr_.push_back(std::move(v));
}

std::size_t Json::size() const {
    if (type_ == Type::array) return arr_.size();
    if (type_ == Type::object) return obj_.size();
    throw ConfigError("json: size of a scalar");
}

const Json& Json::at(std::size_t i) const {
    if (type_ != Type::array) throw ConfigError("json: not an array");
    if (i >= arr_.size()) throw ConfigError("json: index out of range");
    return arr_[i];
}

Json& Json::operator[](const std::string& key) {
    if (type_ == Type::null) type_ = Type::object;
    if (type_ != Type::object) throw ConfigError("json: not an object");
    return obj_[key];
}

const Json* Json::find(const std::string& key) const {
    if (type_ != Type::object) throw ConfigError("json: not an object");
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &it->second;
}

const std::map<std::string, Json>& Json::members() const {
    if (type_ != Type::object) throw ConfigError("json: not an object");
    return obj_;
}

std::string Json::dump(int indent) const {
    std::string out;
    const bool pretty = indent >= 0;
    auto pad = [&](int depth) {
        if (pretty) {
            out += '\n';
            out.append(std::size_t(indent) * std::size_t(depth), ' ');
        }
    };
    auto rec = [&](auto&& self, const Json& v, int depth) -> void {
        switch (v.type_) {
            case Type::null: out += "null"; break;
            case Type::boolean: out += v.bool_ ? "true" : "false"; break;
            case Type::integer: out += std::to_string(v.int_); break;
            case Type::number: out += format_double(v.num_); break;
            case Type::string: escape_into(out, v.str_); break;
            case Type::array: {
                if (v.arr_.empty()) {
                    out += "[]";
                    break;
                }
                out += '[';
                bool first = true;
                for (const Json& e : v.arr_) {
                    if (!first) out += ',';
                    first = false;
                    pad(depth + 1);
                    self(self, e, depth + 1);
                }
                pad(depth);
                out += ']';
                break;
            }
            case Type::object: {
                if (v.obj_.empty()) {
                    out += "{}";
                    break;
                }
                out += '{';
                bool first = true;
                for (const auto& [k, e] : v.obj_) {
                    if (!first) out += ',';
                    first = false;
                    pad(depth + 1);
                    escape_into(out, k);
                    out += pretty ? ": " : ":";
                    self(self, e, depth + 1);
                }
                pad(depth);
                out += '}';
                break;
            }
        }
    };
    rec(rec, *this, 0);
    return out;
}

Json Json::parse(const std::string& text) { return Parser(text).run(); }

namespace {

bool type_matches(const std::string& want, const Json& doc) {
    if (want == "number") return doc.is(Json::Type::number) || doc.is(Json::Type::integer);
    return want == type_name(doc.type());
}

void validate_rec(const Json& schema, const Json& doc, const std::string& path,
                  std::vector<std::string>& out) {
    if (!schema.is(Json::Type::object)) {
        out.push_back(path + ": schema node is not an object");
        return;
    }
    if (const Json* ty = schema.find("type")) {
        bool ok = false;
        if (ty->is(Json::Type::string)) {
            ok = type_matches(ty->as_string(), doc);
        } else if (ty->is(Json::Type::array)) {
            for (std::size_t i = 0; i < ty->size(); ++i)
                ok = ok || type_matches(ty->at(i).as_string(), doc);
        }
        if (!ok) {
            out.push_back(path + ": type is " + type_name(doc.type()) + ", want " + ty->dump());
            return;
        }
    }
    if (const Json* en = schema.find("enum")) {
        bool ok = false;
        for (std::size_t i = 0; i < en->size(); ++i) ok = ok || en->at(i).dump() == doc.dump();
        if (!ok) out.push_back(path + ": value " + doc.dump() + " not in enum " + en->dump());
    }
    if (const Json* cn = schema.find("const")) {
        if (cn->dump() != doc.dump())
            out.push_back(path + ": value " + doc.dump() + " differs from const " + cn->dump());
    }
    if (doc.is(Json::Type::number) || doc.is(Json::Type::integer)) {
        if (const Json* mn = schema.find("minimum")) {
            if (doc.as_number() < mn->as_number())
                out.push_back(path + ": below minimum " + mn->dump());
        }
        if (const Json* mx = schema.find("maximum")) {
            if (doc.as_number() > mx->as_number())
                out.push_back(path + ": above maximum " + mx->dump());
        }
    }
    if (doc.is(Json::Type::array)) {
        if (const Json* mi = schema.find("minItems")) {
            if (std::int64_t(doc.size()) < mi->as_int())
                out.push_back(path + ": fewer than " + mi->dump() + " items");
        }
        if (const Json* items = schema.find("items")) {
            for (std::size_t i = 0; i < doc.size(); ++i)
                validate_rec(*items, doc.at(i), path + "[" + std::to_string(i) + "]", out);
        }
    }
    if (doc.is(Json::Type::object)) {
        const Json* props = schema.find("properties");
        if (const Json* req = schema.find("required")) {
            for (std::size_t i = 0; i < req->size(); ++i) {
                const std::string& name = req->at(i).as_string();
                if (!doc.find(name)) out.push_back(path + ": missing required key '" + name + "'");
            }
        }
        bool allow_extra = true;
        if (const Json* ap = schema.find("additionalProperties")) allow_extra = ap->as_bool();
        for (const auto& [key, val] : doc.members()) {
            const Json* sub = props ? props->find(key) : nullptr;
            if (sub) {
                validate_rec(*sub, val, path + "." + key, out);
            } else if (!allow_extra) {
                out.push_back(path + ": unknown key '" + key + "'");
            }
        }
    }
}

}  // namespace

std::vector<std::string> validate_schema(const Json& schema, const Json& doc) {
    std::vector<std::string> out;
    validate_rec(schema, doc, "$", out);
    return out;
}

Json report_to_json(const IdentityReport& r) {
    Json j = Json::object();
    j["identity"] = Json::string(r.identity);
    Json params = Json::object();
    for (const auto& [k, v] : r.params) params[k] = Json::number(v);
    j["params"] = std::move(params);
    Json sizes = Json::array();
    for (std::size_t n : r.sample_sizes) sizes.push_back(Json::integer(std::int64_t(n)));
    j["sample_sizes"] = std::move(sizes);
    Json seeds = Json::array();
    for (std::uint64_t s : r.seeds) seeds.push_back(Json::integer(std::int64_t(s)));
    j["seeds"] = std::move(seeds);
    j["ks_statistic"] = Json::number(r.ks_statistic);
    j["p_value"] = Json::number(r.p_value);
    Json subs = Json::array();
    for (const SubTest& s : r.subtests) {
        Json e = Json::object();
        e["label"] = Json::string(s.label);
        e["statistic"] = Json::number(s.statistic);
        e["p_value"] = Json::number(s.p_value);
        e["pass"] = Json::boolean(s.pass);
        subs.push_back(std::move(e));
    }
    j["subtests"] = std::move(subs);
    Json mels = Json::array();
    for (const MellinCheck& m : r.mellin_checks) {
        Json e = Json::object();
        e["z_re"] = Json::number(m.z.real());
        e["z_im"] = Json::number(m.z.imag());
        e["mc_re"] = Json::number(m.mc_value.real());
        e["mc_im"] = Json::number(m.mc_value.imag());
        e["closed_re"] = Json::number(m.closed_value.real());
        e["closed_im"] = Json::number(m.closed_value.imag());
        e["standard_error"] = Json::number(m.standard_error);
        e["sigma_distance"] = Json::number(m.sigma_distance);
        mels.push_back(std::move(e));
    }
    j["mellin_checks"] = std::move(mels);
    if (r.calibration_constant) j["calibration_constant"] = Json::number(*r.calibration_constant);
    j["verdict"] = Json::string(to_string(r.verdict));
    Json notes = Json::array();
    for (const std::string& n : r.notes) notes.push_back(Json::string(n));
    j["notes"] = std::move(notes);
    return j;
}

std::string report_json(const IdentityReport& report) { return report_to_json(report).dump(2); }

Json report_schema() {
    const std::string text = R"SCHEMA({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "identity verification report",
  "type": "object",
  "additionalProperties": false,
  "required": ["identity", "params", "sample_sizes", "seeds", "ks_statistic",
               "p_value", "subtests", "mellin_checks", "verdict", "notes"],
  "properties": {
    "identity": {"type": "string"},
    "params": {"type": "object"},
    "sample_sizes": {"type": "array", "items": {"type": "integer", "minimum": 0}},
    "seeds": {"type": "array", "items": {"type": "integer", "minimum": 0}},
    "ks_statistic": {"type": ["number", "string"]},
    "p_value": {"type": "number", "minimum": 0, "maximum": 1},
    "subtests": {
      "type": "array",
      "items": {
        "type": "object",
        "additionalProperties": false,
        "required": ["label", "statistic", "p_value", "pass"],
        "properties": {
          "label": {"type": "string"},
          "statistic": {"type": ["number", "string"]},
          "p_value": {"type": "number", "minimum": 0, "maximum": 1},
          "pass": {"type": "boolean"}
        }
      }
    },
    "mellin_checks": {
      "type": "array",
      "items": {
        "type": "object",
        "additionalProperties": false,
        "required": ["z_re", "z_im", "mc_re", "mc_im", "closed_re", "closed_im",
                     "standard_error", "sigma_distance"],
        "properties": {
          "z_re": {"type": "number"},
          "z_im": {"type": "number"},
          "mc_re": {"type": ["number", "string"]},
          "mc_im": {"type": ["number", "string"]},
          "closed_re": {"type": ["number", "string"]},
          "closed_im": {"type": ["number", "string"]},
          "standard_error": {"type": ["number", "string"]},
          "sigma_distance": {"type": ["number", "string"]}
        }
      }
    },
    "calibration_constant": {"type": ["number", "string"]},
    "verdict": {"type": "string", "enum": ["pass", "fail", "inconclusive"]},
    "notes": {"type": "array", "items": {"type": "string"}}
  }
})SCHEMA";
    return Json::parse(text);
}

namespace {

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string reports_csv(std::span<const IdentityReport> reports) {
    std::string out = "identity,params,ks_statistic,p_value,verdict\n";
    for (const IdentityReport& r : reports) {
        std::string params;
        for (const auto& [k, v] : r.params) {
            if (!params.empty()) params += ';';
            params += k + "=" + shortest_double(v);
        }
        out += csv_quote(r.identity);
        out += ',';
        out += csv_quote(params);
        out += ',';
        out += shortest_double(r.ks_statistic);
        out += ',';
        out += shortest_double(r.p_value);
        out += ',';
        out += to_string(r.verdict);
        out += '\n';
    }
    return out;
}

}  // namespace levyarc
