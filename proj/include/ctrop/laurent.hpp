#pragma once

// Sparse multivariate Laurent polynomials over Q. Terms map integer
// exponent vectors to nonzero rational coefficients; the zero-coefficient
// invariant is maintained by every operation. Values are immutable:
// arithmetic returns new objects.

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ctrop/error.hpp"
#include "ctrop/numbers.hpp"

namespace ctrop {

using Expvec = std::vector<std::int64_t>;

inline Expvec expvec_add(const Expvec& a, const Expvec& b) {
    Expvec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Expvec expvec_sub(const Expvec& a, const Expvec& b) {
    Expvec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Expvec expvec_neg(const Expvec& a) {
    Expvec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline Expvec expvec_scale(const Expvec& a, std::int64_t s) {
    Expvec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

// Renders "name^e" factors joined by '*'; exponent 1 is bare, exponent 0
// is skipped, the empty product renders as "1".
inline std::string expvec_str(const Expvec& e, const std::vector<std::string>& names) {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!first) out << "*";
        out << names[i];
        if (e[i] != 1) out << "^" << e[i];
        first = false;
    }
    if (first) return "1";
    return out.str();
}

inline std::vector<std::string> numbered_names(const std::string& prefix, std::size_t n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i + 1));
    return names;
}

class LaurentPoly {
public:
    using TermMap = std::map<Expvec, Qi>;

    explicit LaurentPoly(std::size_t nvars = 0) : nvars_(nvars) {}

    static LaurentPoly constant(std::size_t nvars, const Qi& c) {
        LaurentPoly p(nvars);
        if (c != 0) p.terms_.emplace(Expvec(nvars, 0), c);
        return p;
    }

    static LaurentPoly monomial(Expvec e, const Qi& c) {
        LaurentPoly p(e.size());
        if (c != 0) p.terms_.emplace(std::move(e), c);
        return p;
    }

    static LaurentPoly generator(std::size_t nvars, std::size_t i) {
        check_domain(i < nvars, "generator index out of range");
        Expvec e(nvars, 0);
        e[i] = 1;
        return monomial(std::move(e), Qi(1));
    }

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t num_terms() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && terms_.begin()->first == Expvec(nvars_, 0));
    }

    bool is_monomial() const { return terms_.size() == 1; }

    Qi coeff(const Expvec& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Qi(0) : it->second;
    }

    Qi constant_coeff() const { return coeff(Expvec(nvars_, 0)); }

    bool has_positive_coeffs() const {
        for (const auto& [e, c] : terms_)
            if (c <= 0) return false;
        return true;
    }

    bool has_nonneg_exponents() const {
        for (const auto& [e, c] : terms_)
            for (auto v : e)
                if (v < 0) return false;
        return true;
    }

    // Componentwise minimum of exponents over all terms; requires a
    // nonzero polynomial.
    Expvec min_exponents() const {
        check(!terms_.empty(), "min_exponents of zero polynomial");
        Expvec m = terms_.begin()->first;
        for (const auto& [e, c] : terms_)
            for (std::size_t i = 0; i < nvars_; ++i)
                if (e[i] < m[i]) m[i] = e[i];
        return m;
    }

    Expvec max_exponents() const {
        check(!terms_.empty(), "max_exponents of zero polynomial");
        Expvec m = terms_.begin()->first;
        for (const auto& [e, c] : terms_)
            for (std::size_t i = 0; i < nvars_; ++i)
                if (e[i] > m[i]) m[i] = e[i];
        return m;
    }

    LaurentPoly operator-() const {
        LaurentPoly r(nvars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    LaurentPoly operator+(const LaurentPoly& o) const {
        check(nvars_ == o.nvars_, "variable count mismatch");
        LaurentPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_in_place(e, c);
        return r;
    }

    LaurentPoly operator-(const LaurentPoly& o) const {
        check(nvars_ == o.nvars_, "variable count mismatch");
        LaurentPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_in_place(e, -c);
        return r;
    }

    LaurentPoly operator*(const LaurentPoly& o) const {
        check(nvars_ == o.nvars_, "variable count mismatch");
        LaurentPoly r(nvars_);
        for (const auto& [ea, ca] : terms_)
            for (const auto& [eb, cb] : o.terms_)
                r.add_in_place(expvec_add(ea, eb), ca * cb);
        return r;
    }

    LaurentPoly scaled(const Qi& c) const {
        LaurentPoly r(nvars_);
        if (c == 0) return r;
        for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
        return r;
    }

    // Multiplication by the monomial with exponent vector s.
    LaurentPoly shifted(const Expvec& s) const {
        LaurentPoly r(nvars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(expvec_add(e, s), c);
        return r;
    }

    LaurentPoly pow(std::uint64_t e) const {
        LaurentPoly r = constant(nvars_, 1);
        LaurentPoly b = *this;
        while (e != 0) {
            if (e & 1) r = r * b;
            if (e >>= 1) b = b * b;
        }
        return r;
    }

    bool operator==(const LaurentPoly& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    // Evaluation at a positive rational point. Positivity keeps negative
    // exponents meaningful and matches the subtraction-free semantics of
    // the callers.
    Qi evaluate(const std::vector<Qi>& point) const {
        check_domain(point.size() == nvars_, "evaluation point has wrong arity");
        for (const auto& v : point)
            check_domain(v > 0, "evaluation requires positive coordinates");
        Qi acc = 0;
        for (const auto& [e, c] : terms_) {
            Qi t = c;
            for (std::size_t i = 0; i < nvars_; ++i)
                if (e[i] != 0) t *= qi_pow(point[i], e[i]);
            acc += t;
        }
        return acc;
    }

    std::string to_string(const std::vector<std::string>& names) const {
        if (terms_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        // Descending exponent order reads naturally: x1^2 + x2 - 1.
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            Qi a = c;
            if (first) {
                if (a < 0) {
                    out << "-";
                    a = -a;
                }
            } else {
                out << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            const std::string mono = expvec_str(e, names);
            if (a == 1 && mono != "1") {
                out << mono;
            } else {
                out << qi_str(a);
                if (mono != "1") out << "*" << mono;
            }
            first = false;
        }
        return out.str();
    }

    std::string to_string(const char* prefix) const {
        return to_string(numbered_names(prefix, nvars_));
    }

private:
    void add_in_place(const Expvec& e, const Qi& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::size_t nvars_;
    TermMap terms_;
};

} // namespace ctrop
