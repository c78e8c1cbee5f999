#pragma once

// Laurent polynomials in the x-variables whose coefficients are rational
// functions in the y-variables. Cluster variables live here: the Laurent
// property is part of the representation, and the exchange relation's
// division is performed as exact Laurent division, so any violation of
// the Laurent property surfaces as a loud error instead of silently
// producing a non-Laurent value.

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ctrop/error.hpp"
#include "ctrop/laurent.hpp"
#include "ctrop/ratfun.hpp"

namespace ctrop {

class XLaurent {
public:
    using TermMap = std::map<Expvec, RationalFunction>;

    XLaurent(std::size_t nx, std::size_t ny) : nx_(nx), ny_(ny) {}

    static XLaurent constant(std::size_t nx, RationalFunction c) {
        XLaurent p(nx, c.nvars());
        if (!c.is_zero()) p.terms_.emplace(Expvec(nx, 0), std::move(c));
        return p;
    }

    static XLaurent monomial(Expvec xexp, RationalFunction c) {
        XLaurent p(xexp.size(), c.nvars());
        if (!c.is_zero()) p.terms_.emplace(std::move(xexp), std::move(c));
        return p;
    }

    static XLaurent generator(std::size_t nx, std::size_t ny, std::size_t i) {
        check_domain(i < nx, "generator index out of range");
        Expvec e(nx, 0);
        e[i] = 1;
        return monomial(std::move(e), RationalFunction::constant(ny, 1));
    }

    std::size_t nx() const { return nx_; }
    std::size_t ny() const { return ny_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t num_terms() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }
    bool is_monomial() const { return terms_.size() == 1; }

    RationalFunction coeff(const Expvec& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? RationalFunction(ny_) : it->second;
    }

    XLaurent operator+(const XLaurent& o) const {
        check(compatible(o), "XLaurent arity mismatch");
        XLaurent r = *this;
        for (const auto& [e, c] : o.terms_) r.add_in_place(e, c);
        return r;
    }

    XLaurent operator-(const XLaurent& o) const {
        check(compatible(o), "XLaurent arity mismatch");
        XLaurent r = *this;
        for (const auto& [e, c] : o.terms_) r.add_in_place(e, -c);
        return r;
    }

    XLaurent operator*(const XLaurent& o) const {
        check(compatible(o), "XLaurent arity mismatch");
        XLaurent r(nx_, ny_);
        for (const auto& [ea, ca] : terms_)
            for (const auto& [eb, cb] : o.terms_)
                r.add_in_place(expvec_add(ea, eb), ca * cb);
        return r;
    }

    XLaurent scaled(const RationalFunction& c) const {
        XLaurent r(nx_, ny_);
        if (c.is_zero()) return r;
        for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
        return r;
    }

    XLaurent shifted(const Expvec& s) const {
        XLaurent r(nx_, ny_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(expvec_add(e, s), c);
        return r;
    }

    XLaurent pow(std::uint64_t e) const {
        XLaurent r = constant(nx_, RationalFunction::constant(ny_, 1));
        XLaurent b = *this;
        while (e != 0) {
            if (e & 1) r = r * b;
            if (e >>= 1) b = b * b;
        }
        return r;
    }

    bool operator==(const XLaurent& o) const {
        return nx_ == o.nx_ && ny_ == o.ny_ && terms_ == o.terms_;
    }
    bool operator!=(const XLaurent& o) const { return !(*this == o); }

    // Exact Laurent division. Reduces to polynomial division after
    // clearing minimum exponents; quotient terms are distinct lattice
    // points of a finite box, which bounds the loop. A failure means the
    // quotient is not a Laurent polynomial.
    XLaurent exact_div(const XLaurent& b) const {
        check(compatible(b), "XLaurent arity mismatch");
        check_domain(!b.is_zero(), "division by zero");
        if (is_zero()) return *this;

        const Expvec mina = min_exponents();
        const Expvec minb = b.min_exponents();
        XLaurent rem = shifted(expvec_neg(mina));
        const XLaurent bs = b.shifted(expvec_neg(minb));
        const Expvec box = rem.max_exponents();
        const auto& [eb, cb] = *bs.terms_.rbegin();

        XLaurent quot(nx_, ny_);
        while (!rem.is_zero()) {
            const auto& [ea, ca] = *rem.terms_.rbegin();
            const Expvec q = expvec_sub(ea, eb);
            for (std::size_t i = 0; i < nx_; ++i)
                check_conjecture(q[i] >= 0 && q[i] <= box[i],
                                 "inexact Laurent division: Laurent property violated");
            const RationalFunction qc = ca / cb;
            quot.terms_.emplace(q, qc);
            rem = rem - bs.shifted(q).scaled(qc);
        }
        return quot.shifted(expvec_sub(mina, minb));
    }

    Expvec min_exponents() const {
        check(!terms_.empty(), "min_exponents of zero");
        Expvec m = terms_.begin()->first;
        for (const auto& [e, c] : terms_)
            for (std::size_t i = 0; i < nx_; ++i)
                if (e[i] < m[i]) m[i] = e[i];
        return m;
    }

    Expvec max_exponents() const {
        check(!terms_.empty(), "max_exponents of zero");
        Expvec m = terms_.begin()->first;
        for (const auto& [e, c] : terms_)
            for (std::size_t i = 0; i < nx_; ++i)
                if (e[i] > m[i]) m[i] = e[i];
        return m;
    }

    // Specialization x_1 = ... = x_n = 1: the sum of the coefficients.
    RationalFunction at_x_ones() const {
        RationalFunction s(ny_);
        for (const auto& [e, c] : terms_) s = s + c;
        return s;
    }

    // Flat rational function on nx + ny variables (x block first).
    RationalFunction flatten() const {
        const std::size_t n = nx_ + ny_;
        RationalFunction s(n);
        for (const auto& [e, c] : terms_) {
            Expvec xe(n, 0);
            for (std::size_t i = 0; i < nx_; ++i) xe[i] = e[i];
            const RationalFunction term =
                RationalFunction(lift_y(c.num(), n, nx_).shifted(xe), lift_y(c.den(), n, nx_));
            s = s + term;
        }
        return s;
    }

    std::string to_string(const std::vector<std::string>& xnames,
                          const std::vector<std::string>& ynames) const {
        if (terms_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (!first) out << " + ";
            const std::string mono = expvec_str(e, xnames);
            const std::string cs = c.to_string(ynames);
            if (cs == "1" && mono != "1") {
                out << mono;
            } else {
                const bool wrap = cs.find_first_of("+-") != std::string::npos && mono != "1";
                out << (wrap ? "(" + cs + ")" : cs);
                if (mono != "1") out << "*" << mono;
            }
            first = false;
        }
        return out.str();
    }

private:
    bool compatible(const XLaurent& o) const { return nx_ == o.nx_ && ny_ == o.ny_; }

    static LaurentPoly lift_y(const LaurentPoly& p, std::size_t n, std::size_t offset) {
        LaurentPoly r(n);
        for (const auto& [e, c] : p.terms()) {
            Expvec f(n, 0);
            for (std::size_t i = 0; i < e.size(); ++i) f[offset + i] = e[i];
            r = r + LaurentPoly::monomial(std::move(f), c);
        }
        return r;
    }

    void add_in_place(const Expvec& e, const RationalFunction& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    std::size_t nx_;
    std::size_t ny_;
    TermMap terms_;
};

} // namespace ctrop
