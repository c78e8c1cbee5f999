#pragma once

// Quantum torus elements with exact q-rational coefficients, truncated
// series supported on the positive cone, and the mutation of quantum
// y-variables. The pairing is fixed by the initial exchange matrix B:
//
//   Y^v Y^w = q^{pairing(v, w)} Y^{v+w},   pairing(v, w) = sum b_ji v_i w_j,
//
// and every element is written in the Weyl-ordered basis {Y^v}. Mutated
// y-variables are kept in pointed form: a lead monomial q^a Y^v, whose
// exponent vector is the c-vector of the variable, times a tail series
// with constant term one.

#include <cstdint>
#include <cstdlib>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <ctrop/error.hpp>
#include <ctrop/exchange.hpp>
#include <ctrop/laurent.hpp>
#include <ctrop/matrix.hpp>
#include <ctrop/numbers.hpp>
#include <ctrop/pattern.hpp>
#include <ctrop/period.hpp>
#include <ctrop/qrat.hpp>

namespace ctrop {

inline ZMat pairing_matrix(const ExchangeMatrix& b) {
    check_domain(b.is_skew_symmetric(),
                 "the quantum torus requires a skew-symmetric exchange matrix");
    return b.mat().transpose();
}

inline std::int64_t pairing(const ZMat& lambda, const Expvec& v, const Expvec& w) {
    check(v.size() == lambda.rows() && w.size() == lambda.rows(),
          "exponent vector length does not match the torus rank");
    Zi s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < w.size(); ++j)
            if (w[j] != 0) s += lambda.at(i, j) * Zi(v[i]) * Zi(w[j]);
    }
    return zi_to_i64(s);
}

inline std::int64_t total_degree(const Expvec& v) {
    std::int64_t d = 0;
    for (auto x : v) d += x;
    return d;
}

inline bool in_positive_cone(const Expvec& v) {
    for (auto x : v)
        if (x < 0) return false;
    return true;
}

inline Expvec unit_expvec(std::size_t n, std::size_t i) {
    Expvec e(n, 0);
    e[i] = 1;
    return e;
}

// Finite q-rational combination of basis monomials Y^v; zero coefficients
// are never stored, so equal elements have equal term maps.
struct QuantumTorusElement {
    ZMat lambda;
    std::map<Expvec, QRat> terms;
};

inline QuantumTorusElement qt_zero(ZMat lambda) { return {std::move(lambda), {}}; }

inline QuantumTorusElement qt_monomial(ZMat lambda, QRat c, Expvec v) {
    QuantumTorusElement r{std::move(lambda), {}};
    check_domain(v.size() == r.lambda.rows(),
                 "exponent vector length does not match the torus rank");
    if (!c.is_zero()) r.terms.emplace(std::move(v), std::move(c));
    return r;
}

inline QuantumTorusElement qt_one(ZMat lambda) {
    const std::size_t n = lambda.rows();
    return qt_monomial(std::move(lambda), QRat(1), Expvec(n, 0));
}

namespace detail {

inline void qt_require_same_torus(const QuantumTorusElement& a, const QuantumTorusElement& b) {
    check_domain(a.lambda == b.lambda, "mismatched quantum torus");
}

inline void qt_accumulate(QuantumTorusElement& r, const Expvec& e, const QRat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = r.terms.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) r.terms.erase(it);
    }
}

} // namespace detail

inline QuantumTorusElement qt_add(const QuantumTorusElement& a, const QuantumTorusElement& b) {
    detail::qt_require_same_torus(a, b);
    QuantumTorusElement r = a;
    for (const auto& [e, c] : b.terms) detail::qt_accumulate(r, e, c);
    return r;
}

inline QuantumTorusElement qt_neg(const QuantumTorusElement& a) {
    QuantumTorusElement r = a;
    for (auto& [e, c] : r.terms) c = -c;
    return r;
}

inline QuantumTorusElement qt_sub(const QuantumTorusElement& a, const QuantumTorusElement& b) {
    return qt_add(a, qt_neg(b));
}

inline QuantumTorusElement qt_scale(const QuantumTorusElement& a, const QRat& c) {
    QuantumTorusElement r{a.lambda, {}};
    if (c.is_zero()) return r;
    for (const auto& [e, v] : a.terms) r.terms.emplace(e, v * c);
    return r;
}

// Twisted product in the Weyl basis.
inline QuantumTorusElement qt_mul(const QuantumTorusElement& a, const QuantumTorusElement& b) {
    detail::qt_require_same_torus(a, b);
    QuantumTorusElement r{a.lambda, {}};
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) {
            const QRat c = ca * cb * QRat::q_power(pairing(a.lambda, ea, eb));
            detail::qt_accumulate(r, expvec_add(ea, eb), c);
        }
    return r;
}

inline bool qt_eq(const QuantumTorusElement& a, const QuantumTorusElement& b) {
    return a.lambda == b.lambda && a.terms == b.terms;
}

// Inverse of a single-term element; pairing(v, v) = 0 makes it monomial.
inline QuantumTorusElement qt_inverse_monomial(const QuantumTorusElement& a) {
    check_domain(a.terms.size() == 1, "only monomials invert inside the torus");
    const auto& [e, c] = *a.terms.begin();
    return qt_monomial(a.lambda, c.inverse(), expvec_neg(e));
}

inline std::map<Expvec, Qi> qt_at_one(const QuantumTorusElement& a) {
    std::map<Expvec, Qi> r;
    for (const auto& [e, c] : a.terms) {
        Qi v = c.at_one();
        if (v != 0) r.emplace(e, std::move(v));
    }
    return r;
}

inline std::string qt_str(const QuantumTorusElement& a) {
    if (a.terms.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : a.terms) {
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")*Y^(";
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(e[i]);
        }
        out += ")";
    }
    return out;
}

// Element of the completion along the positive cone, truncated in total
// degree: arithmetic happens in the quotient by degrees above `order`.
struct TruncatedSeries {
    long order = 0;
    QuantumTorusElement elem;
};

inline TruncatedSeries ts_make(QuantumTorusElement e, long order) {
    check_domain(order >= 0, "truncation order must be nonnegative");
    TruncatedSeries r{order, qt_zero(e.lambda)};
    for (auto& [v, c] : e.terms) {
        check_domain(in_positive_cone(v), "series support must lie in the nonnegative cone");
        if (total_degree(v) <= order) r.elem.terms.emplace(v, std::move(c));
    }
    return r;
}

inline TruncatedSeries ts_one(ZMat lambda, long order) {
    return ts_make(qt_one(std::move(lambda)), order);
}

namespace detail {

inline void ts_require_compatible(const TruncatedSeries& a, const TruncatedSeries& b) {
    check(a.order == b.order, "mismatched truncation order");
    qt_require_same_torus(a.elem, b.elem);
}

} // namespace detail

inline TruncatedSeries ts_add(const TruncatedSeries& a, const TruncatedSeries& b) {
    detail::ts_require_compatible(a, b);
    return TruncatedSeries{a.order, qt_add(a.elem, b.elem)};
}

inline TruncatedSeries ts_scale(const TruncatedSeries& a, const QRat& c) {
    return TruncatedSeries{a.order, qt_scale(a.elem, c)};
}

inline TruncatedSeries ts_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    detail::ts_require_compatible(a, b);
    TruncatedSeries r{a.order, qt_zero(a.elem.lambda)};
    for (const auto& [ea, ca] : a.elem.terms) {
        const std::int64_t da = total_degree(ea);
        for (const auto& [eb, cb] : b.elem.terms) {
            if (da + total_degree(eb) > a.order) continue;
            const QRat c = ca * cb * QRat::q_power(pairing(a.elem.lambda, ea, eb));
            detail::qt_accumulate(r.elem, expvec_add(ea, eb), c);
        }
    }
    return r;
}

inline TruncatedSeries ts_pow(const TruncatedSeries& a, long p) {
    check_domain(p >= 0, "series powers must be nonnegative");
    TruncatedSeries r = ts_one(a.elem.lambda, a.order);
    for (long i = 0; i < p; ++i) r = ts_mul(r, a);
    return r;
}

inline bool ts_eq(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.order == b.order && qt_eq(a.elem, b.elem);
}

inline QRat ts_constant_term(const TruncatedSeries& a) {
    const auto it = a.elem.terms.find(Expvec(a.elem.lambda.rows(), 0));
    return it == a.elem.terms.end() ? QRat() : it->second;
}

// Geometric-series inverse; requires an invertible constant term. The
// result is verified against the definition before returning.
inline TruncatedSeries series_inverse(const TruncatedSeries& s) {
    const QRat c0 = ts_constant_term(s);
    check_domain(!c0.is_zero(), "series constant term is not invertible");
    const ZMat& lam = s.elem.lambda;
    // t = 1 - s/c0 has no constant term, so powers beyond `order` vanish.
    const TruncatedSeries t =
        ts_add(ts_one(lam, s.order), ts_scale(s, -(c0.inverse())));
    TruncatedSeries acc = ts_one(lam, s.order);
    TruncatedSeries power = ts_one(lam, s.order);
    for (long k = 1; k <= s.order; ++k) {
        power = ts_mul(power, t);
        if (power.elem.terms.empty()) break;
        acc = ts_add(acc, power);
    }
    const TruncatedSeries inv = ts_scale(acc, c0.inverse());
    check(ts_eq(ts_mul(s, inv), ts_one(lam, s.order)), "series inverse failed to verify");
    return inv;
}

// Quantum dilogarithm of a cone monomial q^a Y^w:
//   psi(x) = sum_n (-q x)^n / (q^2; q^2)_n, truncated in total degree.
inline TruncatedSeries psi_expand(const ZMat& lambda, std::int64_t a, const Expvec& w,
                                  long order) {
    check_domain(w.size() == lambda.rows(),
                 "exponent vector length does not match the torus rank");
    bool all_zero = true;
    for (auto x : w)
        if (x != 0) all_zero = false;
    check_domain(!all_zero, "quantum dilogarithm argument vector is zero");
    check_domain(in_positive_cone(w),
                 "quantum dilogarithm argument must lie in the nonnegative cone");
    TruncatedSeries r = ts_one(lambda, order);
    const std::int64_t d = total_degree(w);
    for (long n = 1; n * d <= order; ++n) {
        QRat c = QRat(detail::qp_term(n % 2 ? -1 : 1, 0), q2_pochhammer(n));
        c *= QRat::q_power(n * (1 + a));
        r.elem.terms.emplace(expvec_scale(w, n), std::move(c));
    }
    return r;
}

// Quantum dilogarithm of a general cone series with no constant term;
// agrees with psi_expand when the argument is a single monomial.
inline TruncatedSeries psi_of_series(const TruncatedSeries& x) {
    check_domain(ts_constant_term(x).is_zero(),
                 "quantum dilogarithm argument must have zero constant term");
    TruncatedSeries r = ts_one(x.elem.lambda, x.order);
    TruncatedSeries power = ts_one(x.elem.lambda, x.order);
    for (long n = 1; n <= x.order; ++n) {
        power = ts_mul(power, x);
        if (power.elem.terms.empty()) break;
        QRat c = QRat(detail::qp_term(n % 2 ? -1 : 1, n), q2_pochhammer(n));
        r = ts_add(r, ts_scale(power, c));
    }
    return r;
}

// Pointed form q^{qpow} Y^{cvec} * tail, tail a cone series with constant
// term one. The exponent vector of the lead is the c-vector.
struct QuantumYVariable {
    std::int64_t qpow = 0;
    Expvec cvec;
    TruncatedSeries tail;
};

// Conjugation S -> Y^{-v} S Y^{v}, which scales the coefficient of Y^u by
// q^{2 pairing(u, v)}.
inline TruncatedSeries conj_by_monomial(const TruncatedSeries& s, const Expvec& v) {
    TruncatedSeries r{s.order, qt_zero(s.elem.lambda)};
    for (const auto& [u, c] : s.elem.terms)
        r.elem.terms.emplace(u, c * QRat::q_power(2 * pairing(s.elem.lambda, u, v)));
    return r;
}

inline QuantumYVariable qy_unit(const ZMat& lambda, std::size_t i, long order) {
    check_domain(i < lambda.rows(), "variable index out of range");
    return QuantumYVariable{0, unit_expvec(lambda.rows(), i), ts_one(lambda, order)};
}

inline QuantumYVariable qy_pointed(TruncatedSeries tail) {
    const std::size_t n = tail.elem.lambda.rows();
    return QuantumYVariable{0, Expvec(n, 0), std::move(tail)};
}

inline QuantumYVariable qy_mul(const QuantumYVariable& a, const QuantumYVariable& b) {
    QuantumYVariable r;
    r.qpow = a.qpow + b.qpow + pairing(a.tail.elem.lambda, a.cvec, b.cvec);
    r.cvec = expvec_add(a.cvec, b.cvec);
    r.tail = ts_mul(conj_by_monomial(a.tail, b.cvec), b.tail);
    return r;
}

inline QuantumYVariable qy_inverse(const QuantumYVariable& a) {
    QuantumYVariable r;
    r.qpow = -a.qpow;
    r.cvec = expvec_neg(a.cvec);
    r.tail = conj_by_monomial(series_inverse(a.tail), r.cvec);
    return r;
}

inline QuantumYVariable qy_pow(const QuantumYVariable& a, long p) {
    check_domain(p >= 0, "pointed powers must be nonnegative");
    QuantumYVariable r = qy_pointed(ts_one(a.tail.elem.lambda, a.tail.order));
    for (long i = 0; i < p; ++i) r = qy_mul(r, a);
    return r;
}

inline bool qy_eq(const QuantumYVariable& a, const QuantumYVariable& b) {
    return a.qpow == b.qpow && a.cvec == b.cvec && ts_eq(a.tail, b.tail);
}

// The element q^{qpow} Y^{cvec} * tail of the ambient completion; its
// support is the cone shifted by the lead vector.
inline QuantumTorusElement qy_full(const QuantumYVariable& a) {
    const QuantumTorusElement lead =
        qt_monomial(a.tail.elem.lambda, QRat::q_power(a.qpow), a.cvec);
    return qt_mul(lead, a.tail.elem);
}

inline std::map<Expvec, Qi> qy_at_one(const QuantumYVariable& a) {
    return qt_at_one(qy_full(a));
}

// Sign of a lead exponent vector. Anything other than a strictly signed
// nonzero vector falsifies sign-coherence of the quantum leads.
inline int lead_sign(const Expvec& v) {
    bool pos = false, neg = false;
    for (auto x : v) {
        if (x > 0) pos = true;
        if (x < 0) neg = true;
    }
    check_conjecture(!(pos && neg), "quantum lead vector violates sign-coherence");
    check_conjecture(pos || neg, "quantum lead vector vanished");
    return pos ? 1 : -1;
}

// Lead data alone: the tropical shadow of a quantum y-variable.
struct TropicalLead {
    std::int64_t qpow = 0;
    Expvec cvec;
};

// One mutation step of the leads under the tropical recursion
//   [Y'_k] = [Y_k]^{-1},  [Y'_i] = q^{b_ik p} [Y_i][Y_k]^p,  p = [eps b_ki]_+,
// with eps the sign of the lead of the mutated variable. Returns eps.
inline int mutate_leads(std::vector<TropicalLead>& leads, const ZMat& lambda,
                        const ExchangeMatrix& b, std::size_t k) {
    check_domain(k < leads.size(), "mutation index out of range");
    const int eps = lead_sign(leads[k].cvec);
    std::vector<TropicalLead> next = leads;
    for (std::size_t i = 0; i < leads.size(); ++i) {
        if (i == k) continue;
        const std::int64_t bki = zi_to_i64(b.at(k, i));
        const std::int64_t p = eps * bki > 0 ? std::abs(bki) : 0;
        if (p == 0) continue;
        next[i].qpow = leads[i].qpow + zi_to_i64(b.at(i, k)) * p + p * leads[k].qpow +
                       p * pairing(lambda, leads[i].cvec, leads[k].cvec);
        next[i].cvec = expvec_add(leads[i].cvec, expvec_scale(leads[k].cvec, p));
    }
    next[k].qpow = -leads[k].qpow;
    next[k].cvec = expvec_neg(leads[k].cvec);
    leads = std::move(next);
    return eps;
}

// A labeled quantum y-seed: the current exchange matrix, the pairing of
// the initial seed (fixed along the run), and the pointed y-variables.
struct QuantumYSeed {
    ExchangeMatrix b;
    ZMat lambda;
    long order = 0;
    std::vector<QuantumYVariable> y;
};

inline QuantumYSeed quantum_initial_seed(const ExchangeMatrix& b0, long order) {
    QuantumYSeed s{b0, pairing_matrix(b0), order, {}};
    for (std::size_t i = 0; i < b0.rank(); ++i) s.y.push_back(qy_unit(s.lambda, i, order));
    return s;
}

namespace detail {

// The non-tropical mutation factor prod_m (1 + q^{-eps sgn(b_ki)(2m-1)} E)^{-sgn(b_ki)}
// with E the cone expansion of Y_k^{eps}; factors for different m commute.
inline TruncatedSeries mutation_factor(const TruncatedSeries& e, std::int64_t bki, int eps) {
    TruncatedSeries f = ts_one(e.elem.lambda, e.order);
    if (bki == 0) return f;
    const int sgn = bki > 0 ? 1 : -1;
    for (std::int64_t m = 1; m <= std::abs(bki); ++m) {
        TruncatedSeries g = ts_add(ts_one(e.elem.lambda, e.order),
                                   ts_scale(e, QRat::q_power(-eps * sgn * (2 * m - 1))));
        if (sgn > 0) g = series_inverse(g);
        f = ts_mul(f, g);
    }
    return f;
}

} // namespace detail

// Cone expansion of Y_k^{eps} as a truncated series; the lead of the
// eps-th power has nonnegative exponents, so the support is in the cone.
inline TruncatedSeries qy_cone_expansion(const QuantumYVariable& yk, int eps) {
    const QuantumYVariable p = eps > 0 ? yk : qy_inverse(yk);
    return ts_make(qy_full(p), yk.tail.order);
}

// Mutation of the quantum y-seed in direction k. The tropical sign is
// read off the lead of the mutated variable; a mixed-sign lead is a
// falsification. The resulting leads are checked against the tropical
// recursion and every tail must keep its unit constant term.
inline QuantumYSeed mutate_quantum_y(const QuantumYSeed& s, std::size_t k) {
    check_domain(k < s.y.size(), "mutation index out of range");
    std::vector<TropicalLead> expected;
    for (const auto& v : s.y) expected.push_back({v.qpow, v.cvec});
    const int eps = mutate_leads(expected, s.lambda, s.b, k);

    const TruncatedSeries e = qy_cone_expansion(s.y[k], eps);
    QuantumYSeed out{s.b.mutated(k), s.lambda, s.order, {}};
    for (std::size_t i = 0; i < s.y.size(); ++i) {
        if (i == k) {
            out.y.push_back(qy_inverse(s.y[k]));
        } else {
            const std::int64_t bki = zi_to_i64(s.b.at(k, i));
            const std::int64_t p = eps * bki > 0 ? std::abs(bki) : 0;
            QuantumYVariable v = qy_mul(s.y[i], qy_pow(s.y[k], p));
            v.qpow += zi_to_i64(s.b.at(i, k)) * p;
            v.tail = ts_mul(v.tail, detail::mutation_factor(e, bki, eps));
            out.y.push_back(std::move(v));
        }
        check(out.y[i].qpow == expected[i].qpow && out.y[i].cvec == expected[i].cvec,
              "mutated lead departs from the tropical recursion");
        check(ts_constant_term(out.y[i].tail).is_one(),
              "mutated tail lost its unit constant term");
    }
    return out;
}

inline QuantumYSeed mutate_quantum_y_sequence(QuantumYSeed s,
                                              const std::vector<std::size_t>& seq) {
    for (auto k : seq) s = mutate_quantum_y(s, k);
    return s;
}

// Lead parts of the i-th quantum y-variable.
inline TropicalLead tropical_quantum_y(const QuantumYSeed& s, std::size_t i) {
    check_domain(i < s.y.size(), "variable index out of range");
    return {s.y[i].qpow, s.y[i].cvec};
}

struct QuantumReport {
    std::string id;
    bool pass = false;
    long order = 0;
    std::string detail;
};

namespace detail {

inline std::string lead_str(const QuantumYVariable& a) {
    return qt_str(qt_monomial(a.tail.elem.lambda, QRat::q_power(a.qpow), a.cvec));
}

inline std::string qy_mismatch(const QuantumYVariable& a, const QuantumYVariable& b) {
    if (a.qpow != b.qpow || a.cvec != b.cvec)
        return "lead mismatch: " + lead_str(a) + " vs " + lead_str(b);
    const QuantumTorusElement d = qt_sub(a.tail.elem, b.tail.elem);
    const auto* worst = &*d.terms.begin();
    for (const auto& t : d.terms)
        if (total_degree(t.first) < total_degree(worst->first)) worst = &t;
    return "tails differ at " + qt_str(qt_monomial(d.lambda, worst->second, worst->first));
}

} // namespace detail

// Conjugation by the quantum dilogarithm of Y_k^{eps}: checks
//   psi(Y_k^eps)^eps Y_i psi(Y_k^eps)^{-eps} = Y_i * mutation factor
// for every i != k, to the truncation order of the seed.
inline QuantumReport adjoint_action_check(const QuantumYSeed& s, std::size_t k) {
    check_domain(k < s.y.size(), "mutation index out of range");
    const int eps = lead_sign(s.y[k].cvec);
    const TruncatedSeries e = qy_cone_expansion(s.y[k], eps);
    const TruncatedSeries psi = psi_of_series(e);
    const QuantumYVariable left = qy_pointed(eps > 0 ? psi : series_inverse(psi));
    const QuantumYVariable right = qy_pointed(eps > 0 ? series_inverse(psi) : psi);

    QuantumReport rep{"adjoint", true, s.order, ""};
    for (std::size_t i = 0; i < s.y.size(); ++i) {
        if (i == k) continue;
        const QuantumYVariable lhs = qy_mul(qy_mul(left, s.y[i]), right);
        QuantumYVariable rhs = s.y[i];
        rhs.tail = ts_mul(rhs.tail, detail::mutation_factor(e, zi_to_i64(s.b.at(k, i)), eps));
        if (!qy_eq(lhs, rhs)) {
            rep.pass = false;
            rep.detail = "variable " + std::to_string(i + 1) + ": " +
                         detail::qy_mismatch(lhs, rhs);
            return rep;
        }
    }
    rep.detail = "verified to order " + std::to_string(s.order);
    return rep;
}

// Product of quantum dilogarithms along a certified period:
//   psi([Y_{k_0}(0)]^{e_0})^{e_0} * ... * psi([Y_{k_{N-1}}(N-1)]^{e_{N-1}})^{e_{N-1}},
// left to right, with the leads evolved by the tropical recursion. The
// identity holds when the product is one in the truncated ring.
inline QuantumReport verify_qdi(const ExchangeMatrix& b0, const std::vector<std::size_t>& seq,
                                long order) {
    const auto cert = detect_period(b0, seq);
    check_domain(cert.has_value(), "the sequence could not be certified as a period");
    const ZMat lam = pairing_matrix(b0);
    const std::size_t n = b0.rank();

    std::vector<TropicalLead> leads;
    for (std::size_t i = 0; i < n; ++i) leads.push_back({0, unit_expvec(n, i)});
    ExchangeMatrix bc = b0;
    TruncatedSeries prod = ts_one(lam, order);
    for (std::size_t t = 0; t < seq.size(); ++t) {
        const std::size_t k = seq[t];
        const int eps = lead_sign(leads[k].cvec);
        check(eps == cert->sign_sequence[t], "tropical sign disagrees with the certificate");
        const std::int64_t a = eps > 0 ? leads[k].qpow : -leads[k].qpow;
        const Expvec w = eps > 0 ? leads[k].cvec : expvec_neg(leads[k].cvec);
        const TruncatedSeries psi = psi_expand(lam, a, w, order);
        prod = ts_mul(prod, eps > 0 ? psi : series_inverse(psi));
        mutate_leads(leads, lam, bc, k);
        bc = bc.mutated(k);
    }
    for (std::size_t i = 0; i < n; ++i)
        check(leads[i].qpow == 0 && leads[i].cvec == unit_expvec(n, cert->relabeling[i]),
              "leads did not return to units along the certified period");

    QuantumReport rep{"qdi", false, order, ""};
    const QuantumTorusElement diff = qt_sub(prod.elem, qt_one(lam));
    if (diff.terms.empty()) {
        rep.pass = true;
        rep.detail = "verified to order " + std::to_string(order);
    } else {
        const auto* worst = &*diff.terms.begin();
        for (const auto& t : diff.terms)
            if (total_degree(t.first) < total_degree(worst->first)) worst = &t;
        rep.detail = "offending term " +
                     qt_str(qt_monomial(lam, worst->second, worst->first));
    }
    return rep;
}

// Commutative specialization of the same run: snapshots of the full
// y-variables (lead times tail, merged) after every prefix of the
// sequence, as truncated series with rational coefficients. Tropical
// signs come from the c-matrix of a classical pattern, so this is an
// independent q = 1 oracle for the quantum mutation.
inline std::vector<std::vector<std::map<Expvec, Qi>>> classical_y_series(
    const ExchangeMatrix& b0, const std::vector<std::size_t>& seq, long order) {
    const std::size_t n = b0.rank();
    using Series = std::map<Expvec, Qi>;

    const auto mul = [&](const Series& a, const Series& b) {
        Series r;
        for (const auto& [ea, ca] : a) {
            const std::int64_t da = total_degree(ea);
            for (const auto& [eb, cb] : b) {
                if (da + total_degree(eb) > order) continue;
                auto [it, fresh] = r.try_emplace(expvec_add(ea, eb), Qi(ca * cb));
                if (!fresh) {
                    it->second += ca * cb;
                    if (it->second == 0) r.erase(it);
                }
            }
        }
        return r;
    };
    const auto one = [&]() { return Series{{Expvec(n, 0), Qi(1)}}; };
    const auto inverse = [&](const Series& s) {
        const Qi c0 = s.at(Expvec(n, 0));
        Series t; // 1 - s/c0
        for (const auto& [e, c] : s)
            if (total_degree(e) > 0) t.emplace(e, Qi(-c / c0));
        Series acc = one(), power = one();
        for (long k = 1; k <= order; ++k) {
            power = mul(power, t);
            if (power.empty()) break;
            for (const auto& [e, c] : power) {
                auto [it, fresh] = acc.try_emplace(e, c);
                if (!fresh) it->second += c;
            }
        }
        Series r;
        for (const auto& [e, c] : acc)
            if (c != 0) r.emplace(e, Qi(c / c0));
        return r;
    };

    struct Pointed {
        Expvec lead;
        Series tail;
    };
    std::vector<Pointed> y;
    for (std::size_t i = 0; i < n; ++i) y.push_back({unit_expvec(n, i), one()});

    const auto merge = [&](const Pointed& p) {
        Series r;
        for (const auto& [e, c] : p.tail) r.emplace(expvec_add(p.lead, e), c);
        return r;
    };
    std::vector<std::vector<Series>> snaps;
    const auto snapshot = [&]() {
        std::vector<Series> row;
        for (const auto& v : y) row.push_back(merge(v));
        snaps.push_back(std::move(row));
    };
    snapshot();

    ClusterPattern pat(b0, false);
    ExchangeMatrix bc = b0;
    for (const auto k : seq) {
        const int eps = pat.tropical_sign(k);
        // Cone expansion of y_k^{eps}.
        Series yke;
        if (eps > 0) {
            for (const auto& [e, c] : y[k].tail) {
                const Expvec f = expvec_add(y[k].lead, e);
                if (total_degree(f) <= order) yke.emplace(f, c);
            }
        } else {
            const Series inv = inverse(y[k].tail);
            for (const auto& [e, c] : inv) {
                const Expvec f = expvec_sub(e, y[k].lead);
                if (total_degree(f) <= order) yke.emplace(f, c);
            }
        }
        Series base = one();
        for (const auto& [e, c] : yke) {
            auto [it, fresh] = base.try_emplace(e, c);
            if (!fresh) it->second += c;
        }
        std::vector<Pointed> next = y;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) {
                next[i] = {expvec_neg(y[k].lead), inverse(y[k].tail)};
                continue;
            }
            const std::int64_t bki = zi_to_i64(bc.at(k, i));
            const std::int64_t p = eps * bki > 0 ? std::abs(bki) : 0;
            Pointed v = y[i];
            for (std::int64_t r = 0; r < p; ++r) {
                v.lead = expvec_add(v.lead, y[k].lead);
                v.tail = mul(v.tail, y[k].tail);
            }
            // (1 + y_k^eps)^{-bki}
            Series f = one();
            for (std::int64_t m = 0; m < std::abs(bki); ++m) f = mul(f, base);
            if (bki > 0) f = inverse(f);
            v.tail = mul(v.tail, f);
            next[i] = std::move(v);
        }
        y = std::move(next);
        pat.mutate(k);
        bc = bc.mutated(k);
        snapshot();
    }
    return snaps;
}

} // namespace ctrop
