#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tppar/ellipticity.hpp"
#include "tppar/types.hpp"

namespace tppar {

/// Minimal JSON document builder with deterministic serialization: keys keep
/// insertion order and every float is rendered by fmt_float (fixed 17
/// significant digits). Reports must be byte-stable across runs, which rules
/// out shortest-roundtrip printing.
class JsonValue {
public:
    static JsonValue object();
    static JsonValue array();
    static JsonValue number(double v);
    static JsonValue integer(long long v);
    static JsonValue str(std::string v);
    static JsonValue boolean(bool v);

    JsonValue& set(const std::string& key, JsonValue v);  // object
    JsonValue& push(JsonValue v);                         // array

    std::string dump(int indent = 2) const;

private:
    enum class Kind { object, array, number, integer, string, boolean };
    Kind kind_ = Kind::object;
    double num_ = 0.0;
    long long int_ = 0;
    std::string str_;
    bool bool_ = false;
    std::vector<std::pair<std::string, JsonValue>> members_;
    std::vector<JsonValue> elements_;

    void write(std::string& out, int indent, int depth) const;
};

/// CSV with fmt_float cells and '\n' newlines.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);
    void row(std::vector<std::string> cells);
    static std::string cell(double v) { return fmt_float(v); }
    static std::string cell(long long v) { return std::to_string(v); }
    std::string str() const;
    void save(const std::string& path) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

void save_text(const std::string& path, const std::string& text);

JsonValue ellipticity_report_json(const EllipticityReport& report);

}  // namespace tppar
