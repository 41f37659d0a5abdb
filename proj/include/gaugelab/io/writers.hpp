#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>  // nlohmann/json (vendored)

#include "gaugelab/core/errors.hpp"
#include "gaugelab/core/report.hpp"

namespace gaugelab::io {

/// Real number with 12 significant digits; non-finite values become "nan"/"inf" in CSV.
inline std::string format_number(double v) {
    if (v == 0.0) return "0";  // folds -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace detail {

inline void write_string(std::ostream& os, const std::string& s) { os << nlohmann::json(s).dump(); }

inline void write_value(std::ostream& os, const nlohmann::json& j, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
    switch (j.type()) {
    case nlohmann::json::value_t::object: {
        if (j.empty()) {
            os << "{}";
            return;
        }
        os << "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {  // std::map order: keys sorted
            if (!first) os << ",\n";
            first = false;
            os << pad;
            write_string(os, it.key());
            os << ": ";
            write_value(os, it.value(), indent, depth + 1);
        }
        os << "\n" << close_pad << "}";
        return;
    }
    case nlohmann::json::value_t::array: {
        if (j.empty()) {
            os << "[]";
            return;
        }
        os << "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) os << ",\n";
            os << pad;
            write_value(os, j[i], indent, depth + 1);
        }
        os << "\n" << close_pad << "]";
        return;
    }
    case nlohmann::json::value_t::number_float: {
        const double v = j.get<double>();
        if (!std::isfinite(v)) {
            os << "null";
            return;
        }
        os << format_number(v);
        return;
    }
    default:
        os << j.dump();
    }
}

}  // namespace detail

/// Byte-stable JSON: sorted keys, two-space indent, floats with 12
/// significant digits, non-finite floats as null, trailing newline.
inline std::string to_stable_json(const nlohmann::json& j) {
    std::ostringstream os;
    detail::write_value(os, j, 2, 0);
    os << "\n";
    return os.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
    f << content;
    f.flush();
    if (!f) throw IoError("failed writing '" + path.string() + "'");
}

/// Accumulates a CSV table in memory.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : columns_(header.size()) {
        for (std::size_t i = 0; i < header.size(); ++i) text_ += (i ? "," : "") + header[i];
        text_ += "\n";
    }

    void add_row(std::initializer_list<double> values) { add_row(std::vector<double>(values)); }

    void add_row(const std::vector<double>& values) {
        if (values.size() != columns_) throw UsageError("csv row has " + std::to_string(values.size()) + " cells, expected " + std::to_string(columns_));
        for (std::size_t i = 0; i < values.size(); ++i) text_ += (i ? "," : "") + format_number(values[i]);
        text_ += "\n";
    }

    const std::string& str() const { return text_; }
    void write(const std::filesystem::path& path) const { write_text_file(path, text_); }

private:
    std::size_t columns_;
    std::string text_;
};

enum class ReportFormat { json, csv };

inline std::string serialize_report(const InvarianceReport& report, ReportFormat format, const nlohmann::json& metadata = nullptr) {
    report.validate();
    if (format == ReportFormat::json) {
        nlohmann::json j = to_json(report);
        if (!metadata.is_null()) j["metadata"] = metadata;
        return to_stable_json(j);
    }
    std::string out = "group,name,max_dev\n";
    for (const auto& q : report.matched) out += "matched," + q.name + "," + format_number(q.max_dev) + "\n";
    for (const auto& q : report.differed) out += "differed," + q.name + "," + format_number(q.max_dev) + "\n";
    out += "summary,tolerance," + format_number(report.tolerance) + "\n";
    out += std::string("summary,pass,") + (report.pass ? "1" : "0") + "\n";
    return out;
}

/// Writes the report to `path`. Throws UsageError for a degenerate report, IoError on I/O failure.
inline void emit_report(const InvarianceReport& report, ReportFormat format, const std::filesystem::path& path,
                        const nlohmann::json& metadata = nullptr) {
    write_text_file(path, serialize_report(report, format, metadata));
}

}  // namespace gaugelab::io
