#pragma once

/**
 * @file report.hpp
 * @brief LawReport: the outcome of one equational check or a suite of them.
 */

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace jetgeom {

enum class Status { Pass, Fail, Skipped, Inconclusive };

inline const char* status_name(Status s) {
    switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
    case Status::Inconclusive: return "inconclusive";
    }
    return "?";
}

/// A failing sample: the input jet (flat coordinates) and both composite
/// outputs, plus an optional free-form note naming what went wrong.
struct Witness {
    std::vector<double> input;
    std::vector<double> lhs;
    std::vector<double> rhs;
    std::string note;
};

struct LawReport {
    std::string name;
    Status status = Status::Pass;
    double max_residual = 0.0;
    int samples = 0;
    std::optional<Witness> witness;
    std::vector<LawReport> children;

    bool passed() const { return status == Status::Pass || status == Status::Skipped; }

    /// Fold child outcomes into this report: worst status wins, residuals max.
    static LawReport combine(std::string name, std::vector<LawReport> children) {
        LawReport r;
        r.name = std::move(name);
        r.children = std::move(children);
        for (const LawReport& c : r.children) {
            r.max_residual = std::max(r.max_residual, c.max_residual);
            r.samples += c.samples;
            if (c.status == Status::Fail) {
                r.status = Status::Fail;
                if (!r.witness && c.witness) r.witness = c.witness;
            } else if (c.status == Status::Inconclusive && r.status == Status::Pass) {
                r.status = Status::Inconclusive;
            }
        }
        return r;
    }

    static LawReport skipped(std::string name, std::string reason) {
        LawReport r;
        r.name = std::move(name);
        r.status = Status::Skipped;
        Witness w;
        w.note = std::move(reason);
        r.witness = std::move(w);
        return r;
    }
};

inline void to_json(nlohmann::json& j, const Witness& w) {
    j = {{"input", w.input}, {"lhs", w.lhs}, {"rhs", w.rhs}};
    if (!w.note.empty()) j["note"] = w.note;
}

inline void to_json(nlohmann::json& j, const LawReport& r) {
    j = {{"check", r.name},
         {"status", status_name(r.status)},
         {"max_residual", r.max_residual},
         {"samples", r.samples}};
    if (r.witness) j["witness"] = *r.witness;
    if (!r.children.empty()) j["laws"] = r.children;
}

}  // namespace jetgeom
