#pragma once

// Rational functions in n variables over Q, kept in a canonical reduced
// form so equality is structural. Canonical form: numerator and
// denominator are integer polynomials shifted so that for each variable
// at least one of them has minimum exponent zero, jointly primitive over
// Z, coprime as polynomials, and the denominator's lexicographically
// least term has a positive coefficient.

#include <string>
#include <utility>
#include <vector>

#include "ctrop/error.hpp"
#include "ctrop/laurent.hpp"
#include "ctrop/numbers.hpp"
#include "ctrop/polygcd.hpp"

namespace ctrop {

inline std::pair<ZPoly, Zi> laurent_to_zpoly(const LaurentPoly& p) {
    // Returns (q, s) with q = s*p, s > 0 minimal to clear denominators.
    Zi s = 1;
    for (const auto& [e, c] : p.terms()) s = zi_lcm(s, boost::multiprecision::denominator(c));
    ZPoly q;
    for (const auto& [e, c] : p.terms())
        q.emplace(e, boost::multiprecision::numerator(c) * (s / boost::multiprecision::denominator(c)));
    return {std::move(q), s};
}

inline LaurentPoly zpoly_to_laurent(const ZPoly& p, std::size_t nvars) {
    LaurentPoly r(nvars);
    for (const auto& [e, c] : p) r = r + LaurentPoly::monomial(e, Qi(c));
    return r;
}

class RationalFunction {
public:
    explicit RationalFunction(std::size_t nvars = 0)
        : num_(nvars), den_(LaurentPoly::constant(nvars, 1)) {}

    RationalFunction(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
        check(num_.nvars() == den_.nvars(), "variable count mismatch");
        normalize();
    }

    static RationalFunction from_poly(LaurentPoly p) {
        auto n = p.nvars();
        return RationalFunction(std::move(p), LaurentPoly::constant(n, 1));
    }

    static RationalFunction constant(std::size_t nvars, const Qi& c) {
        return from_poly(LaurentPoly::constant(nvars, c));
    }

    static RationalFunction generator(std::size_t nvars, std::size_t i) {
        return from_poly(LaurentPoly::generator(nvars, i));
    }

    static RationalFunction monomial(Expvec e, const Qi& c) {
        return from_poly(LaurentPoly::monomial(std::move(e), c));
    }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    std::size_t nvars() const { return num_.nvars(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == den_; }

    RationalFunction operator+(const RationalFunction& o) const {
        return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    RationalFunction operator-(const RationalFunction& o) const {
        return RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    RationalFunction operator-() const {
        RationalFunction r = *this;
        r.num_ = -r.num_;
        return r;
    }
    RationalFunction operator*(const RationalFunction& o) const {
        return RationalFunction(num_ * o.num_, den_ * o.den_);
    }
    RationalFunction operator/(const RationalFunction& o) const {
        check_domain(!o.is_zero(), "division by zero rational function");
        return RationalFunction(num_ * o.den_, den_ * o.num_);
    }

    RationalFunction inverse() const {
        check_domain(!is_zero(), "inverse of zero");
        return RationalFunction(den_, num_);
    }

    RationalFunction pow(std::int64_t e) const {
        if (e < 0) return inverse().pow(-e);
        RationalFunction r = constant(nvars(), 1);
        RationalFunction b = *this;
        auto n = static_cast<std::uint64_t>(e);
        while (n != 0) {
            if (n & 1) r = r * b;
            if (n >>= 1) b = b * b;
        }
        return r;
    }

    bool operator==(const RationalFunction& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const RationalFunction& o) const { return !(*this == o); }

    // Evaluation at a positive rational point; throws DomainError on a
    // pole or a nonpositive coordinate.
    Qi evaluate(const std::vector<Qi>& point) const {
        const Qi d = den_.evaluate(point);
        check_domain(d != 0, "pole at evaluation point");
        return num_.evaluate(point) / d;
    }

    // True when the denominator is a monomial, i.e. the value is a
    // Laurent polynomial.
    bool is_laurent() const { return den_.is_monomial(); }

    LaurentPoly as_laurent() const {
        check(is_laurent(), "not a Laurent polynomial");
        const auto& [e, c] = *den_.terms().begin();
        return num_.shifted(expvec_neg(e)).scaled(Qi(1) / c);
    }

    std::string to_string(const std::vector<std::string>& names) const {
        if (den_ == LaurentPoly::constant(nvars(), 1)) return num_.to_string(names);
        const std::string n = num_.to_string(names);
        const std::string d = den_.to_string(names);
        const std::string np = num_.num_terms() > 1 ? "(" + n + ")" : n;
        const std::string dp = den_.num_terms() > 1 ? "(" + d + ")" : d;
        return np + "/" + dp;
    }

    std::string to_string(const char* prefix) const {
        return to_string(numbered_names(prefix, nvars()));
    }

private:
    void normalize() {
        check_domain(!den_.is_zero(), "zero denominator");
        const std::size_t n = num_.nvars();
        if (num_.is_zero()) {
            den_ = LaurentPoly::constant(n, 1);
            return;
        }

        // Shift both parts to nonnegative exponents and attach the net
        // monomial so that, per variable, at least one part has minimum
        // exponent zero.
        const Expvec mn = num_.min_exponents();
        const Expvec md = den_.min_exponents();
        Expvec shift_num(n, 0), shift_den(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const std::int64_t delta = mn[i] - md[i];
            shift_num[i] = -mn[i] + std::max<std::int64_t>(delta, 0);
            shift_den[i] = -md[i] + std::max<std::int64_t>(-delta, 0);
        }
        auto [zn, sn] = laurent_to_zpoly(num_.shifted(shift_num));
        auto [zd, sd] = laurent_to_zpoly(den_.shifted(shift_den));
        // Cross-multiply the clearing factors so both sides were scaled
        // by the same rational, then strip the joint integer content.
        ZPoly a = zp_mul_term(zn, Expvec(n, 0), sd);
        ZPoly b = zp_mul_term(zd, Expvec(n, 0), sn);
        const Zi ic = zi_gcd(zp_int_content(a), zp_int_content(b));
        a = zp_div_int(a, ic);
        b = zp_div_int(b, ic);

        const ZPoly g = zp_gcd(a, b);
        if (!(g.size() == 1 && g.begin()->first == Expvec(n, 0) && g.begin()->second == 1)) {
            a = *zp_div_exact(a, g);
            b = *zp_div_exact(b, g);
        }
        if (b.begin()->second < 0) {
            a = zp_neg(a);
            b = zp_neg(b);
        }
        num_ = zpoly_to_laurent(a, n);
        den_ = zpoly_to_laurent(b, n);
    }

    LaurentPoly num_;
    LaurentPoly den_;
};

} // namespace ctrop
