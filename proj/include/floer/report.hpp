#pragma once

/* Task reports: a flat list of entries with a deterministic text and a
 * deterministic json-like rendering.  Given the same document, task, and
 * seed the bytes are identical run to run.
 */

#include "base.hpp"

#include <cstdio>

namespace floer {
inline namespace cli_io {

struct report_entry {
    std::string status;    // "pass" | "fail" | "skip" | "value"
    std::string check;
    std::string subject;
    std::string detail;
};

struct task_report {
    std::string task;
    std::string document_path;
    std::uint64_t seed = 0;
    std::vector<report_entry> entries;
    bool failed = false;

    void pass(const std::string& check, const std::string& subject,
              const std::string& detail = "") {
        entries.push_back({"pass", check, subject, detail});
    }
    void fail(const std::string& check, const std::string& subject,
              const std::string& detail = "") {
        entries.push_back({"fail", check, subject, detail});
        failed = true;
    }
    void skip(const std::string& check, const std::string& subject,
              const std::string& detail = "") {
        entries.push_back({"skip", check, subject, detail});
    }
    void value(const std::string& name, const std::string& val) {
        entries.push_back({"value", name, "", val});
    }
};

inline std::string render_text(const task_report& r) {
    std::string out;
    out += "task: " + r.task + "\n";
    out += "document: " + r.document_path + "\n";
    out += "seed: " + std::to_string(r.seed) + "\n";
    for (const auto& e : r.entries) {
        if (e.status == "value") {
            out += e.check + " = " + e.detail + "\n";
        } else {
            out += "[" + e.status + "] " + e.check;
            if (!e.subject.empty()) out += " " + e.subject;
            if (!e.detail.empty()) out += ": " + e.detail;
            out += "\n";
        }
    }
    out += std::string("result: ") + (r.failed ? "FAIL" : "PASS") + "\n";
    return out;
}

namespace detail {

inline std::string json_escape(const std::string& s) {
    std::string out;
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

} // namespace detail

inline std::string render_json(const task_report& r) {
    using detail::json_escape;
    std::string out = "{\n";
    out += "  \"task\": \"" + json_escape(r.task) + "\",\n";
    out += "  \"document\": \"" + json_escape(r.document_path) + "\",\n";
    out += "  \"seed\": " + std::to_string(r.seed) + ",\n";
    out += "  \"entries\": [";
    for (std::size_t i = 0; i < r.entries.size(); ++i) {
        const auto& e = r.entries[i];
        out += i ? ",\n    {" : "\n    {";
        out += "\"status\": \"" + json_escape(e.status) + "\", ";
        out += "\"check\": \"" + json_escape(e.check) + "\", ";
        out += "\"subject\": \"" + json_escape(e.subject) + "\", ";
        out += "\"detail\": \"" + json_escape(e.detail) + "\"}";
    }
    out += r.entries.empty() ? "],\n" : "\n  ],\n";
    out += std::string("  \"result\": \"") + (r.failed ? "FAIL" : "PASS") + "\"\n";
    out += "}\n";
    return out;
}

} // namespace cli_io
} // namespace floer
