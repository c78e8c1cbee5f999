#pragma once

// Semifields of coefficients. Three models share one static interface so
// seed mutation is written once:
//   UniversalSF  - subtraction-free rational functions in the initial y,
//   TropicalSF   - Laurent monomials with min-of-exponents addition,
//   PosRatSF     - positive rationals (numeric evaluation of a pattern).

#include <cstdint>
#include <string>

#include "ctrop/error.hpp"
#include "ctrop/laurent.hpp"
#include "ctrop/polygcd.hpp"
#include "ctrop/ratfun.hpp"

namespace ctrop {

// ---------------------------------------------------------------------
// Tropical semifield elements: y^a with (y^a)(y^b) = y^{a+b} and
// y^a (+) y^b = y^{min(a,b)} componentwise.
class TropicalMonomial {
public:
    explicit TropicalMonomial(Expvec e = {}) : exp_(std::move(e)) {}

    static TropicalMonomial one(std::size_t nvars) { return TropicalMonomial(Expvec(nvars, 0)); }

    static TropicalMonomial generator(std::size_t nvars, std::size_t i) {
        check_domain(i < nvars, "generator index out of range");
        Expvec e(nvars, 0);
        e[i] = 1;
        return TropicalMonomial(std::move(e));
    }

    const Expvec& exponents() const { return exp_; }
    std::size_t nvars() const { return exp_.size(); }

    TropicalMonomial mul(const TropicalMonomial& o) const {
        return TropicalMonomial(expvec_add(exp_, o.exp_));
    }

    TropicalMonomial inv() const { return TropicalMonomial(expvec_neg(exp_)); }

    TropicalMonomial pow(std::int64_t k) const { return TropicalMonomial(expvec_scale(exp_, k)); }

    TropicalMonomial trop_add(const TropicalMonomial& o) const {
        check(exp_.size() == o.exp_.size(), "variable count mismatch");
        Expvec e(exp_.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::min(exp_[i], o.exp_[i]);
        return TropicalMonomial(std::move(e));
    }

    bool operator==(const TropicalMonomial& o) const { return exp_ == o.exp_; }
    bool operator!=(const TropicalMonomial& o) const { return !(*this == o); }

    std::string to_string(const char* prefix = "y") const {
        return expvec_str(exp_, numbered_names(prefix, exp_.size()));
    }

private:
    Expvec exp_;
};

// ---------------------------------------------------------------------
// Universal semifield elements: num/den with strictly positive
// coefficients. The positive representation is a membership witness, so
// GCD reduction is applied only when both quotients keep positive
// coefficients; otherwise the unreduced witness is kept. Common monomial
// and scalar factors are always safe to strip.
class SubtractionFreeRational {
public:
    explicit SubtractionFreeRational(std::size_t nvars = 0)
        : num_(LaurentPoly::constant(nvars, 1)), den_(LaurentPoly::constant(nvars, 1)) {}

    SubtractionFreeRational(LaurentPoly num, LaurentPoly den)
        : num_(std::move(num)), den_(std::move(den)) {
        check(num_.nvars() == den_.nvars(), "variable count mismatch");
        check_domain(!num_.is_zero() && !den_.is_zero(), "semifield elements are nonzero");
        check_domain(num_.has_positive_coeffs() && den_.has_positive_coeffs(),
                     "subtraction-free witness requires positive coefficients");
        reduce();
    }

    static SubtractionFreeRational one(std::size_t nvars) {
        return SubtractionFreeRational(nvars);
    }

    static SubtractionFreeRational generator(std::size_t nvars, std::size_t i) {
        return SubtractionFreeRational(LaurentPoly::generator(nvars, i),
                                       LaurentPoly::constant(nvars, 1));
    }

    static SubtractionFreeRational from_poly(LaurentPoly p) {
        auto n = p.nvars();
        return SubtractionFreeRational(std::move(p), LaurentPoly::constant(n, 1));
    }

    static SubtractionFreeRational constant(std::size_t nvars, const Qi& c) {
        check_domain(c > 0, "semifield constants are positive");
        return from_poly(LaurentPoly::constant(nvars, c));
    }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    std::size_t nvars() const { return num_.nvars(); }

    SubtractionFreeRational mul(const SubtractionFreeRational& o) const {
        return SubtractionFreeRational(num_ * o.num_, den_ * o.den_);
    }

    SubtractionFreeRational add(const SubtractionFreeRational& o) const {
        return SubtractionFreeRational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }

    SubtractionFreeRational inv() const { return SubtractionFreeRational(den_, num_); }

    SubtractionFreeRational pow(std::int64_t k) const {
        if (k < 0) return inv().pow(-k);
        SubtractionFreeRational r = one(nvars());
        SubtractionFreeRational b = *this;
        auto n = static_cast<std::uint64_t>(k);
        while (n != 0) {
            if (n & 1) r = r.mul(b);
            if (n >>= 1) b = b.mul(b);
        }
        return r;
    }

    // Equality of the represented values: cross-multiplication, so it is
    // independent of the particular witness.
    bool eq(const SubtractionFreeRational& o) const {
        return num_ * o.den_ == o.num_ * den_;
    }

    Qi evaluate(const std::vector<Qi>& point) const {
        return num_.evaluate(point) / den_.evaluate(point);
    }

    std::string to_string(const std::vector<std::string>& names) const {
        if (den_ == LaurentPoly::constant(nvars(), 1)) return num_.to_string(names);
        const std::string n = num_.to_string(names);
        const std::string d = den_.to_string(names);
        return (num_.num_terms() > 1 ? "(" + n + ")" : n) + "/" +
               (den_.num_terms() > 1 ? "(" + d + ")" : d);
    }

    std::string to_string(const char* prefix = "y") const {
        return to_string(numbered_names(prefix, nvars()));
    }

private:
    void reduce() {
        const std::size_t n = num_.nvars();
        // Common monomial factor: shift so the joint minimum exponent is 0.
        const Expvec mn = num_.min_exponents();
        const Expvec md = den_.min_exponents();
        Expvec m(n);
        for (std::size_t i = 0; i < n; ++i) m[i] = -std::min(mn[i], md[i]);
        if (m != Expvec(n, 0)) {
            num_ = num_.shifted(m);
            den_ = den_.shifted(m);
        }
        // Common scalar factor: make both integer and jointly primitive.
        auto [zn, sn] = laurent_to_zpoly(num_);
        auto [zd, sd] = laurent_to_zpoly(den_);
        ZPoly a = zp_mul_term(zn, Expvec(n, 0), sd);
        ZPoly b = zp_mul_term(zd, Expvec(n, 0), sn);
        const Zi ic = zi_gcd(zp_int_content(a), zp_int_content(b));
        a = zp_div_int(a, ic);
        b = zp_div_int(b, ic);
        // Polynomial factor, only if positivity of the witness survives.
        const ZPoly g = zp_gcd(a, b);
        if (!(g.size() == 1 && g.begin()->second == 1 && g.begin()->first == Expvec(n, 0))) {
            const ZPoly qa = *zp_div_exact(a, g);
            const ZPoly qb = *zp_div_exact(b, g);
            bool pos = true;
            for (const auto& [e, c] : qa)
                if (c <= 0) { pos = false; break; }
            if (pos)
                for (const auto& [e, c] : qb)
                    if (c <= 0) { pos = false; break; }
            if (pos) {
                a = qa;
                b = qb;
            }
        }
        num_ = zpoly_to_laurent(a, n);
        den_ = zpoly_to_laurent(b, n);
    }

    LaurentPoly num_;
    LaurentPoly den_;
};

// ---------------------------------------------------------------------
// Tropicalization: componentwise minimum exponent of the numerator minus
// that of the denominator. Positive constants collapse to 1, so this is
// the semifield homomorphism sending y_i to y_i.
inline TropicalMonomial tropicalize(const SubtractionFreeRational& s) {
    return TropicalMonomial(expvec_sub(s.num().min_exponents(), s.den().min_exponents()));
}

inline TropicalMonomial tropicalize(const TropicalMonomial& m) { return m; }

// ---------------------------------------------------------------------
// Static semifield interfaces.

struct UniversalSF {
    using Elem = SubtractionFreeRational;
    static const char* name() { return "universal"; }
    static Elem one(std::size_t n) { return SubtractionFreeRational::one(n); }
    static Elem generator(std::size_t n, std::size_t i) {
        return SubtractionFreeRational::generator(n, i);
    }
    static Elem mul(const Elem& a, const Elem& b) { return a.mul(b); }
    static Elem add(const Elem& a, const Elem& b) { return a.add(b); }
    static Elem inv(const Elem& a) { return a.inv(); }
    static Elem pow(const Elem& a, std::int64_t k) { return a.pow(k); }
    static bool eq(const Elem& a, const Elem& b) { return a.eq(b); }
    static TropicalMonomial trop(const Elem& a) { return tropicalize(a); }
    static RationalFunction embed(const Elem& a) {
        return RationalFunction(a.num(), a.den());
    }
    static std::string str(const Elem& a) { return a.to_string("y"); }
};

struct TropicalSF {
    using Elem = TropicalMonomial;
    static const char* name() { return "tropical"; }
    static Elem one(std::size_t n) { return TropicalMonomial::one(n); }
    static Elem generator(std::size_t n, std::size_t i) {
        return TropicalMonomial::generator(n, i);
    }
    static Elem mul(const Elem& a, const Elem& b) { return a.mul(b); }
    static Elem add(const Elem& a, const Elem& b) { return a.trop_add(b); }
    static Elem inv(const Elem& a) { return a.inv(); }
    static Elem pow(const Elem& a, std::int64_t k) { return a.pow(k); }
    static bool eq(const Elem& a, const Elem& b) { return a == b; }
    static TropicalMonomial trop(const Elem& a) { return a; }
    static RationalFunction embed(const Elem& a) {
        return RationalFunction::monomial(a.exponents(), Qi(1));
    }
    static std::string str(const Elem& a) { return a.to_string("y"); }
};

// Positive rational numbers with ordinary addition. nvars is carried by
// the seed, not the element; embed produces constants.
struct PosRatSF {
    using Elem = Qi;
    static const char* name() { return "numeric"; }
    static Elem one(std::size_t) { return Qi(1); }
    static Elem generator(std::size_t, std::size_t) {
        throw Error("numeric semifield has no generators; supply initial values");
    }
    static Elem mul(const Elem& a, const Elem& b) { return a * b; }
    static Elem add(const Elem& a, const Elem& b) { return a + b; }
    static Elem inv(const Elem& a) { return Qi(1) / a; }
    static Elem pow(const Elem& a, std::int64_t k) { return qi_pow(a, k); }
    static bool eq(const Elem& a, const Elem& b) { return a == b; }
    static TropicalMonomial trop(const Elem&) {
        throw Error("tropicalization undefined for the numeric semifield");
    }
    static RationalFunction embed(const Elem& a) {
        return RationalFunction::constant(0, a);
    }
    static std::string str(const Elem& a) { return qi_str(a); }
};

} // namespace ctrop
