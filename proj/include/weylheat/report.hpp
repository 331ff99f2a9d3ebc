#pragma once

// Machine-readable reporting: an ordered JSON document (schema_version "1")
// with one record per check, and per-sample CSV for scans.  The JSON is
// emitted by hand so that field order is fixed and every number is printed
// with 17 significant digits; it parses with any standard JSON library.

#include <cinttypes>
#include <cstdio>
#include <string>
#include <vector>

#include "weylheat/checks.hpp"

namespace weylheat {

struct Report {
    std::string schema_version = "1";
    std::string command;
    std::vector<std::pair<std::string, std::string>> config;  // ordered echo
    std::vector<CheckRecord> records;
};

namespace report_detail {

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 8);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

/// 17 significant digits round-trips every double exactly
inline std::string json_number(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace report_detail

inline std::string to_json(const Report& rep, bool include_runtime = true) {
    using report_detail::json_escape;
    using report_detail::json_number;
    std::string s;
    s += "{\n";
    s += "  \"schema_version\": \"" + json_escape(rep.schema_version) + "\",\n";
    s += "  \"command\": \"" + json_escape(rep.command) + "\",\n";
    s += "  \"config\": {";
    for (std::size_t i = 0; i < rep.config.size(); ++i) {
        if (i) s += ", ";
        s += "\"" + json_escape(rep.config[i].first) + "\": \"" +
             json_escape(rep.config[i].second) + "\"";
    }
    s += "},\n";
    s += "  \"records\": [\n";
    for (std::size_t r = 0; r < rep.records.size(); ++r) {
        const CheckRecord& rec = rep.records[r];
        s += "    {\"name\": \"" + json_escape(rec.name) + "\",\n";
        s += "     \"paper_anchor\": \"" + json_escape(rec.anchor) + "\",\n";
        s += "     \"status\": \"" + json_escape(rec.status) + "\",\n";
        s += "     \"values\": {";
        for (std::size_t i = 0; i < rec.values.size(); ++i) {
            if (i) s += ", ";
            s += "\"" + json_escape(rec.values[i].first) +
                 "\": " + json_number(rec.values[i].second);
        }
        s += "},\n";
        s += "     \"witnesses\": [";
        for (std::size_t i = 0; i < rec.witnesses.size(); ++i) {
            if (i) s += ", ";
            s += "{\"label\": \"" + json_escape(rec.witnesses[i].first) + "\", \"point\": [";
            for (std::size_t j = 0; j < rec.witnesses[i].second.size(); ++j) {
                if (j) s += ", ";
                s += json_number(rec.witnesses[i].second[j]);
            }
            s += "]}";
        }
        s += "],\n";
        s += "     \"refinement_history\": [";
        for (std::size_t i = 0; i < rec.refinement_history.size(); ++i) {
            if (i) s += ", ";
            s += "[" + json_number(rec.refinement_history[i][0]) + ", " +
                 json_number(rec.refinement_history[i][1]) + ", " +
                 json_number(rec.refinement_history[i][2]) + "]";
        }
        s += "],\n";
        s += "     \"note\": \"" + json_escape(rec.note) + "\"";
        if (include_runtime) s += ",\n     \"runtime_ms\": " + json_number(rec.runtime_ms);
        s += "}";
        if (r + 1 < rep.records.size()) s += ",";
        s += "\n";
    }
    s += "  ]\n";
    s += "}\n";
    return s;
}

/// one row per sample, 17 significant digits
inline std::string to_csv(const SampleTable& table) {
    std::string s;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) s += ",";
        s += table.columns[i];
    }
    s += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) s += ",";
            s += report_detail::json_number(row[i]);
        }
        s += "\n";
    }
    return s;
}

}  // namespace weylheat
