#pragma once

// Check-report plumbing. Every verification is summarized as one JSON
// line {id, status, lhs, rhs, tol, detail}; aggregate reports are sorted
// by check id so sub-checks may run in any order and still render
// byte-identically.

#include <algorithm>
#include <string>
#include <vector>

#include "ctrop/dilog.hpp"
#include "ctrop/jsonio.hpp"
#include "ctrop/quantum.hpp"

namespace ctrop {

struct CheckLine {
    std::string id;
    bool pass = false;
    Json lhs;
    Json rhs;
    double tol = 0.0;
    std::string detail;
};

inline Json check_line_json(const CheckLine& c) {
    Json j;
    j["id"] = c.id;
    j["status"] = c.pass ? "pass" : "fail";
    j["lhs"] = c.lhs;
    j["rhs"] = c.rhs;
    j["tol"] = c.tol;
    j["detail"] = c.detail;
    return j;
}

inline std::string render_report(std::vector<CheckLine> lines) {
    std::stable_sort(lines.begin(), lines.end(),
                     [](const CheckLine& a, const CheckLine& b) { return a.id < b.id; });
    std::string out;
    for (const auto& l : lines) out += check_line_json(l).dump() + "\n";
    return out;
}

inline bool all_pass(const std::vector<CheckLine>& lines) {
    return std::all_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.pass; });
}

inline CheckLine check_line(const DilogReport& r) {
    CheckLine c;
    c.id = r.identity;
    c.pass = r.pass();
    c.lhs = r.lhs;
    c.rhs = r.rhs;
    c.tol = r.tolerance;
    c.detail = r.sample;
    if (r.n_plus >= 0)
        c.detail += " (N+ = " + std::to_string(r.n_plus) +
                    ", N- = " + std::to_string(r.n_minus) + ")";
    return c;
}

inline CheckLine check_line(const QuantumReport& r) {
    CheckLine c;
    c.id = r.id;
    c.pass = r.pass;
    if (r.id == "adjoint") {
        c.lhs = "conjugation by the dilogarithm factor";
        c.rhs = "exchange-relation factor";
    } else {
        c.lhs = "product of dilogarithm factors along the period";
        c.rhs = "1";
    }
    c.tol = 0.0;
    c.detail = r.detail;
    return c;
}

} // namespace ctrop
