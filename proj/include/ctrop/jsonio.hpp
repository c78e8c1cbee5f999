#pragma once

// JSON surface of the library: exchange-matrix input, seed and pattern
// dumps, and mutation-sequence parsing. All indices are 1-based in I/O
// and 0-based internally.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ctrop/error.hpp"
#include "ctrop/exchange.hpp"
#include "ctrop/laurent.hpp"
#include "ctrop/matrix.hpp"
#include "ctrop/numbers.hpp"
#include "ctrop/pattern.hpp"
#include "ctrop/seed.hpp"
#include "ctrop/semifield.hpp"

namespace ctrop {

// Insertion order is preserved so report fields appear in a fixed order.
using Json = nlohmann::ordered_json;

inline Json zmat_to_json(const ZMat& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(zi_to_i64(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ZMat zmat_from_json(const Json& a) {
    check_domain(a.is_array() && !a.empty(), "a matrix must be a nonempty array of rows");
    std::vector<std::vector<std::int64_t>> rows;
    for (const auto& r : a) {
        check_domain(r.is_array() && r.size() == a.at(0).size(),
                     "matrix rows must be arrays of equal length");
        std::vector<std::int64_t> row;
        for (const auto& v : r) {
            check_domain(v.is_number_integer(), "matrix entries must be integers");
            row.push_back(v.get<std::int64_t>());
        }
        rows.push_back(std::move(row));
    }
    return ZMat::from_rows(rows);
}

// {"B": [[int]], "d": [int]?}; d, when present, must skew-symmetrize B.
inline ExchangeMatrix exchange_from_json(const Json& j) {
    check_domain(j.is_object() && j.contains("B"),
                 "expected a JSON object with a \"B\" field");
    ZMat b = zmat_from_json(j.at("B"));
    check_domain(b.rows() == b.cols(), "\"B\" must be square");
    if (!j.contains("d")) return ExchangeMatrix(std::move(b));
    const Json& dj = j.at("d");
    check_domain(dj.is_array() && dj.size() == b.rows(),
                 "\"d\" must list one positive integer per row of \"B\"");
    std::vector<Zi> d;
    for (const auto& v : dj) {
        check_domain(v.is_number_integer() && v.get<std::int64_t>() > 0,
                     "\"d\" entries must be positive integers");
        d.emplace_back(v.get<std::int64_t>());
    }
    return ExchangeMatrix(std::move(b), std::move(d));
}

inline Json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError("malformed JSON in " + origin + ": " + e.what());
    }
}

inline ExchangeMatrix load_exchange_matrix(const std::string& path) {
    std::ifstream in(path);
    check_domain(static_cast<bool>(in), "could not open " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return exchange_from_json(parse_json_text(text.str(), path));
}

// "1,2,1" with 1-based entries -> {0, 1, 0}. An all-blank string is the
// empty sequence; blank entries between commas are rejected.
inline std::vector<std::size_t> parse_mutation_sequence(const std::string& csv,
                                                        std::size_t rank) {
    std::vector<std::size_t> out;
    if (csv.find_first_not_of(" \t") == std::string::npos) return out;
    std::istringstream in(csv);
    std::string token;
    while (std::getline(in, token, ',')) {
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(token, &pos);
        } catch (const std::exception&) {
            throw DomainError("mutation sequence entry is not an integer: \"" + token + "\"");
        }
        check_domain(token.find_first_not_of(" \t", pos) == std::string::npos,
                     "mutation sequence entry is not an integer: \"" + token + "\"");
        check_domain(v >= 1 && static_cast<std::size_t>(v) <= rank,
                     "mutation index out of range (expected 1.." + std::to_string(rank) +
                         "): " + std::to_string(v));
        out.push_back(static_cast<std::size_t>(v) - 1);
    }
    return out;
}

inline std::string sequence_str(const std::vector<std::size_t>& seq) {
    std::string out;
    for (std::size_t i = 0; i < seq.size(); ++i)
        out += (i ? "," : "") + std::to_string(seq[i] + 1);
    return out;
}

inline Json seed_to_json(const Seed<UniversalSF>& s) {
    const std::size_t n = s.rank();
    const auto xnames = numbered_names("x", n);
    const auto ynames = numbered_names("y", n);
    Json j;
    j["B"] = zmat_to_json(s.b().mat());
    Json d = Json::array();
    for (const auto& v : s.b().symmetrizer()) d.push_back(zi_to_i64(v));
    j["d"] = std::move(d);
    Json y = Json::array();
    for (std::size_t i = 0; i < n; ++i) y.push_back(UniversalSF::str(s.y(i)));
    j["y"] = std::move(y);
    if (s.tracks_x()) {
        Json x = Json::array();
        for (std::size_t i = 0; i < n; ++i) x.push_back(s.x(i).to_string(xnames, ynames));
        j["x"] = std::move(x);
    }
    Json h = Json::array();
    for (auto k : s.history()) h.push_back(k + 1);
    j["history"] = std::move(h);
    return j;
}

// Tropical data of a principal-coefficients pattern at its current seed.
inline Json pattern_to_json(const ClusterPattern& p) {
    const std::size_t n = p.rank();
    Json j;
    j["C"] = zmat_to_json(p.c_matrix());
    j["G"] = zmat_to_json(p.g_matrix());
    if (p.tracks_x()) {
        Json f = Json::array();
        const auto names = numbered_names("y", n);
        for (std::size_t i = 0; i < n; ++i) f.push_back(p.f_polynomial(i).to_string(names));
        j["F"] = std::move(f);
    }
    Json signs = Json::array();
    for (std::size_t i = 0; i < n; ++i) signs.push_back(p.tropical_sign(i));
    j["tropical_signs"] = std::move(signs);
    return j;
}

} // namespace ctrop
