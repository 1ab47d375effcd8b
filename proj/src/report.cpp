#include "tppar/report.hpp"

#include <fstream>

#include "tppar/errors.hpp"

namespace tppar {

JsonValue JsonValue::object() {
    JsonValue v;
    v.kind_ = Kind::object;
    return v;
}
JsonValue JsonValue::array() {
    JsonValue v;
    v.kind_ = Kind::array;
    return v;
}
JsonValue JsonValue::number(double x) {
    JsonValue v;
    v.kind_ = Kind::number;
    v.num_ = x;
    return v;
}
JsonValue JsonValue::integer(long long x) {
    JsonValue v;
    v.kind_ = Kind::integer;
    v.int_ = x;
    return v;
}
JsonValue JsonValue::str(std::string s) {
    JsonValue v;
    v.kind_ = Kind::string;
    v.str_ = std::move(s);
    return v;
}
JsonValue JsonValue::boolean(bool b) {
    JsonValue v;
    v.kind_ = Kind::boolean;
    v.bool_ = b;
    return v;
}

JsonValue& JsonValue::set(const std::string& key, JsonValue v) {
    members_.emplace_back(key, std::move(v));
    return *this;
}
JsonValue& JsonValue::push(JsonValue v) {
    elements_.push_back(std::move(v));
    return *this;
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
}

}  // namespace

void JsonValue::write(std::string& out, int indent, int depth) const {
    const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
    const std::string pad1(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    switch (kind_) {
        case Kind::number: out += fmt_float(num_); break;
        case Kind::integer: out += std::to_string(int_); break;
        case Kind::string: write_escaped(out, str_); break;
        case Kind::boolean: out += bool_ ? "true" : "false"; break;
        case Kind::object: {
            if (members_.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            for (std::size_t i = 0; i < members_.size(); ++i) {
                out += pad1;
                write_escaped(out, members_[i].first);
                out += ": ";
                members_[i].second.write(out, indent, depth + 1);
                out += i + 1 < members_.size() ? ",\n" : "\n";
            }
            out += pad + "}";
            break;
        }
        case Kind::array: {
            if (elements_.empty()) {
                out += "[]";
                break;
            }
            out += "[\n";
            for (std::size_t i = 0; i < elements_.size(); ++i) {
                out += pad1;
                elements_[i].write(out, indent, depth + 1);
                out += i + 1 < elements_.size() ? ",\n" : "\n";
            }
            out += pad + "]";
            break;
        }
    }
}

std::string JsonValue::dump(int indent) const {
    std::string out;
    write(out, indent, 0);
    out += "\n";
    return out;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvWriter::row(std::vector<std::string> cells) {
    if (cells.size() != header_.size())
        throw DimensionMismatch("csv row width does not match header");
    rows_.push_back(std::move(cells));
}

std::string CsvWriter::str() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i)
        out += header_[i] + (i + 1 < header_.size() ? "," : "\n");
    for (const auto& r : rows_)
        for (std::size_t i = 0; i < r.size(); ++i)
            out += r[i] + (i + 1 < r.size() ? "," : "\n");
    return out;
}

void CsvWriter::save(const std::string& path) const { save_text(path, str()); }

void save_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SizeMismatch("cannot open " + path + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

namespace {

JsonValue vec_json(const std::vector<double>& v) {
    JsonValue arr = JsonValue::array();
    for (double x : v) arr.push(JsonValue::number(x));
    return arr;
}

}  // namespace

JsonValue ellipticity_report_json(const EllipticityReport& report) {
    JsonValue root = JsonValue::object();
    {
        const auto& p = report.proper;
        JsonValue proper = JsonValue::object();
        proper.set("pass", JsonValue::boolean(p.pass));
        proper.set("min_symbol_abs", JsonValue::number(p.min_symbol_abs));
        proper.set("symbol_witness", vec_json(p.symbol_witness));
        proper.set("min_root_imag", JsonValue::number(p.min_root_imag));
        proper.set("witness_zeta", vec_json(p.witness_zeta));
        proper.set("witness_xi", vec_json(p.witness_xi));
        proper.set("witness_plus", JsonValue::integer(p.witness_plus));
        proper.set("witness_minus", JsonValue::integer(p.witness_minus));
        proper.set("pairs_checked", JsonValue::integer(p.pairs_checked));
        proper.set("failure", JsonValue::str(p.failure));
        root.set("properly_elliptic", std::move(proper));
    }
    {
        JsonValue rays = JsonValue::array();
        for (const auto& r : report.agmon) {
            JsonValue ray = JsonValue::object();
            ray.set("theta", JsonValue::number(r.theta));
            ray.set("pass", JsonValue::boolean(r.pass));
            ray.set("angular_margin", JsonValue::number(r.angular_margin));
            ray.set("witness_xi", vec_json(r.witness_xi));
            rays.push(std::move(ray));
        }
        root.set("agmon", std::move(rays));
    }
    {
        JsonValue comps = JsonValue::array();
        for (const auto& c : report.complementing) {
            JsonValue comp = JsonValue::object();
            comp.set("theta", JsonValue::number(c.theta));
            comp.set("pass", JsonValue::boolean(c.pass));
            comp.set("min_scaled_det", JsonValue::number(c.min_scaled_det));
            comp.set("witness_eta", JsonValue::number(c.witness_eta));
            comp.set("witness_xi_prime", vec_json(c.witness_xi_prime));
            comp.set("failure", JsonValue::str(c.failure));
            comps.push(std::move(comp));
        }
        root.set("complementing", std::move(comps));
    }
    root.set("samples_used", JsonValue::integer(report.samples_used));
    root.set("pass", JsonValue::boolean(report.all_pass()));
    return root;
}

}  // namespace tppar
