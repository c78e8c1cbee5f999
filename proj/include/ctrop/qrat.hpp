#pragma once

// Exact rational functions in the quantum parameter q, the coefficient
// field for quantum torus elements. Every value is a reduced fraction of
// integer polynomials, so equality of values is equality of parts.

#include <cstdint>
#include <string>
#include <utility>

#include <ctrop/error.hpp>
#include <ctrop/numbers.hpp>
#include <ctrop/polygcd.hpp>

namespace ctrop {

namespace detail {

// Univariate polynomials in q are ZPoly values whose exponent vectors
// have length one.
inline ZPoly qp_term(Zi c, std::int64_t k) {
    ZPoly r;
    if (c != 0) r.emplace(Expvec{k}, std::move(c));
    return r;
}

inline ZPoly qp_one() { return qp_term(1, 0); }

inline ZPoly qp_add(const ZPoly& a, const ZPoly& b) {
    ZPoly r = a;
    for (const auto& [e, c] : b) zp_add_term(r, e, c);
    return r;
}

inline Qi qp_at_one(const ZPoly& p) {
    Zi s = 0;
    for (const auto& [e, c] : p) s += c;
    return Qi(s);
}

inline std::string qp_str(const ZPoly& p) {
    if (p.empty()) return "0";
    std::string out;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        const std::int64_t k = it->first[0];
        const bool neg = it->second < 0;
        const Zi a = neg ? Zi(-it->second) : it->second;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        const bool unit_coeff = a == 1 && k != 0;
        if (!unit_coeff) out += zi_str(a);
        if (k != 0) {
            if (!unit_coeff) out += "*";
            out += "q";
            if (k != 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

} // namespace detail

// (q^2; q^2)_n = prod_{k=1..n} (1 - q^{2k}).
inline ZPoly q2_pochhammer(long n) {
    check_domain(n >= 0, "pochhammer index must be nonnegative");
    ZPoly r = detail::qp_one();
    for (long k = 1; k <= n; ++k)
        r = zp_mul(r, detail::qp_add(detail::qp_one(), detail::qp_term(-1, 2 * k)));
    return r;
}

// Reduced fraction of integer polynomials in q. Invariants: den is
// nonzero with a positive lowest coefficient, and gcd(num, den) = 1
// including integer content; zero is 0/1.
class QRat {
public:
    QRat() : num_(), den_(detail::qp_one()) {}
    QRat(int v) : QRat(Zi(v)) {}
    explicit QRat(Zi v) : num_(detail::qp_term(std::move(v), 0)), den_(detail::qp_one()) {}
    explicit QRat(const Qi& v)
        : num_(detail::qp_term(numerator(v), 0)),
          den_(detail::qp_term(denominator(v), 0)) {}
    QRat(ZPoly num, ZPoly den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

    static QRat q_power(std::int64_t k) {
        QRat r;
        r.num_ = detail::qp_term(1, k >= 0 ? k : 0);
        r.den_ = detail::qp_term(1, k >= 0 ? 0 : -k);
        return r;
    }

    const ZPoly& num() const { return num_; }
    const ZPoly& den() const { return den_; }
    bool is_zero() const { return num_.empty(); }
    bool is_one() const { return num_ == den_; }

    friend QRat operator+(const QRat& a, const QRat& b) {
        return QRat(detail::qp_add(zp_mul(a.num_, b.den_), zp_mul(b.num_, a.den_)),
                    zp_mul(a.den_, b.den_));
    }
    friend QRat operator-(const QRat& a, const QRat& b) {
        return QRat(zp_sub(zp_mul(a.num_, b.den_), zp_mul(b.num_, a.den_)),
                    zp_mul(a.den_, b.den_));
    }
    QRat operator-() const {
        QRat r = *this;
        r.num_ = zp_neg(r.num_);
        return r;
    }
    friend QRat operator*(const QRat& a, const QRat& b) {
        if (a.is_zero() || b.is_zero()) return QRat();
        // Cross-cancellation keeps the gcd calls on small inputs and the
        // result is already reduced: the surviving parts are pairwise
        // coprime, so only the denominator sign needs fixing.
        const ZPoly g1 = zp_gcd(a.num_, b.den_);
        const ZPoly g2 = zp_gcd(b.num_, a.den_);
        QRat r;
        r.num_ = zp_mul(*zp_div_exact(a.num_, g1), *zp_div_exact(b.num_, g2));
        r.den_ = zp_mul(*zp_div_exact(a.den_, g2), *zp_div_exact(b.den_, g1));
        r.fix_sign();
        return r;
    }
    QRat inverse() const {
        check_domain(!is_zero(), "division by a zero rational function");
        QRat r;
        r.num_ = den_;
        r.den_ = num_;
        r.fix_sign();
        return r;
    }
    friend QRat operator/(const QRat& a, const QRat& b) { return a * b.inverse(); }

    QRat& operator+=(const QRat& o) { return *this = *this + o; }
    QRat& operator-=(const QRat& o) { return *this = *this - o; }
    QRat& operator*=(const QRat& o) { return *this = *this * o; }

    friend bool operator==(const QRat& a, const QRat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const QRat& a, const QRat& b) { return !(a == b); }

    // Specialization q = 1; defined only away from poles.
    Qi at_one() const {
        const Qi n = detail::qp_at_one(num_);
        const Qi d = detail::qp_at_one(den_);
        check_domain(d != 0, "rational function has a pole at q = 1");
        return Qi(n / d);
    }

    std::string str() const {
        if (den_ == detail::qp_one()) return detail::qp_str(num_);
        return "(" + detail::qp_str(num_) + ")/(" + detail::qp_str(den_) + ")";
    }

private:
    ZPoly num_;
    ZPoly den_;

    void fix_sign() {
        if (den_.begin()->second < 0) {
            num_ = zp_neg(num_);
            den_ = zp_neg(den_);
        }
    }

    void reduce() {
        check_domain(!den_.empty(), "zero denominator in a rational function");
        if (num_.empty()) {
            den_ = detail::qp_one();
            return;
        }
        const ZPoly g = zp_gcd(num_, den_);
        if (!(zp_is_constant(g) && g.begin()->second == 1)) {
            num_ = *zp_div_exact(num_, g);
            den_ = *zp_div_exact(den_, g);
        }
        fix_sign();
    }
};

} // namespace ctrop
