#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "levyarc/verify.hpp"

namespace levyarc {

// Minimal JSON document model for report emission, config files, and schema
// validation.  Objects keep their keys sorted, so rendering is canonical by
// construction; integers are carried separately from doubles to round-trip
// counts and seeds exactly.
class Json {
  public:
    enum class Type { null, boolean, integer, number, string, array, object };

    Json() = default;
    static Json null();
    static Json boolean(bool v);
    static Json integer(std::int64_t v);
    static Json number(double v);
    static Json string(std::string v);
    static Json array();
    static Json object();

    Type type() const { return type_; }
    bool is(Type t) const { return type_ == t; }

    bool as_bool() const;
    std::int64_t as_int() const;
    double as_number() const;  // integers widen
    const std::string& as_string() const;

    // array access
    void push_back(Json v);
    std::size_t size() const;
    const Json& at(std::size_t i) const;

    // object access
    Json& operator[](const std::string& key);
    const Json* find(const std::string& key) const;
    const std::map<std::string, Json>& members() const;

    // Canonical rendering: sorted keys, no insignificant whitespace beyond
    // single spaces after separators, doubles as shortest-17-significant-digit
    // decimals, non-finite doubles as strings ("inf", "-inf", "nan").
    std::string dump(int indent = -1) const;

    static Json parse(const std::string& text);

  private:
    Type type_ = Type::null;
    bool bool_ = false;
    std::int64_t int_ = 0;
    double num_ = 0.0;
    std::string str_;
    std::vector<Json> arr_;
    std::map<std::string, Json> obj_;
};

// Validates a document against a JSON-Schema subset: type, enum, const,
// properties, required, additionalProperties (boolean), items, minimum,
// maximum, minItems.  Returns human-readable violations, empty when valid.
std::vector<std::string> validate_schema(const Json& schema, const Json& doc);

// Report emission.
Json report_to_json(const IdentityReport& report);
std::string report_json(const IdentityReport& report);

// The schema the JSON emission conforms to (shipped in docs/ as well).
Json report_schema();

// One CSV row per report: identity, semicolon-joined param tuple, headline
// statistic, headline p, verdict; RFC 4180 header and quoting.
std::string reports_csv(std::span<const IdentityReport> reports);

}  // namespace levyarc
