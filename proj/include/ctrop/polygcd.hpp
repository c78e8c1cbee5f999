#pragma once

// GCD of multivariate polynomials over Z. The main route evaluates one
// variable at a large integer, takes the GCD one level down, and lifts
// the result back through balanced base-xi digits; candidates are
// verified by trial division, and evaluation points are padded past a
// divisor-height bound so a constant GCD down below really does certify
// coprimality. A primitive pseudo-remainder sequence remains as the
// fallback. Inputs are sparse maps with nonnegative exponents.

#include <algorithm>
#include <map>
#include <optional>

#include "ctrop/error.hpp"
#include "ctrop/laurent.hpp"
#include "ctrop/numbers.hpp"

namespace ctrop {

using ZPoly = std::map<Expvec, Zi>;

inline bool zp_is_zero(const ZPoly& p) { return p.empty(); }

inline void zp_add_term(ZPoly& p, const Expvec& e, const Zi& c) {
    if (c == 0) return;
    auto [it, inserted] = p.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

inline ZPoly zp_neg(const ZPoly& p) {
    ZPoly r;
    for (const auto& [e, c] : p) r.emplace(e, -c);
    return r;
}

inline ZPoly zp_sub(const ZPoly& a, const ZPoly& b) {
    ZPoly r = a;
    for (const auto& [e, c] : b) zp_add_term(r, e, -c);
    return r;
}

inline ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
    ZPoly r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b)
            zp_add_term(r, expvec_add(ea, eb), ca * cb);
    return r;
}

inline ZPoly zp_mul_term(const ZPoly& a, const Expvec& e, const Zi& c) {
    ZPoly r;
    if (c == 0) return r;
    for (const auto& [ea, ca] : a) r.emplace(expvec_add(ea, e), ca * c);
    return r;
}

inline Zi zp_int_content(const ZPoly& p) {
    Zi g = 0;
    for (const auto& [e, c] : p) {
        g = zi_gcd(g, c);
        if (g == 1) break;
    }
    return g; // 0 for the zero polynomial, positive otherwise
}

inline ZPoly zp_div_int(const ZPoly& p, const Zi& d) {
    check(d != 0, "division by zero content");
    ZPoly r;
    for (const auto& [e, c] : p) {
        check(c % d == 0, "inexact integer content division");
        r.emplace(e, c / d);
    }
    return r;
}

inline std::int64_t zp_deg_in(const ZPoly& p, std::size_t v) {
    std::int64_t d = -1;
    for (const auto& [e, c] : p) d = std::max(d, e[v]);
    return d; // -1 for the zero polynomial
}

inline std::int64_t zp_total_degree(const ZPoly& p) {
    std::int64_t d = 0;
    for (const auto& [e, c] : p) {
        std::int64_t s = 0;
        for (auto x : e) s += x;
        d = std::max(d, s);
    }
    return d;
}

inline Zi zp_height(const ZPoly& p) {
    Zi h = 0;
    for (const auto& [e, c] : p) {
        Zi a = c < 0 ? Zi(-c) : c;
        if (a > h) h = a;
    }
    return h;
}

inline bool zp_is_monomial(const ZPoly& p) { return p.size() == 1; }

inline bool zp_is_constant(const ZPoly& p) {
    return p.size() == 1 && p.begin()->first == Expvec(p.begin()->first.size(), 0);
}

// Coefficient of v^k when p is read as a polynomial in v; the v-slot of
// the returned exponents is zeroed.
inline ZPoly zp_coeff_in(const ZPoly& p, std::size_t v, std::int64_t k) {
    ZPoly r;
    for (const auto& [e, c] : p) {
        if (e[v] != k) continue;
        Expvec f = e;
        f[v] = 0;
        r.emplace(std::move(f), c);
    }
    return r;
}

// Sign convention used everywhere: the lexicographically least term has a
// positive coefficient.
inline ZPoly zp_normalize_sign(const ZPoly& p) {
    if (p.empty() || p.begin()->second > 0) return p;
    return zp_neg(p);
}

// Exact division; nullopt if b does not divide a. Standard single-divisor
// reduction in lexicographic term order.
inline std::optional<ZPoly> zp_div_exact(const ZPoly& a, const ZPoly& b) {
    check(!b.empty(), "division by zero polynomial");
    ZPoly rem = a;
    ZPoly quot;
    const auto& [eb, cb] = *b.rbegin(); // lex-greatest term of the divisor
    while (!rem.empty()) {
        const auto& [ea, ca] = *rem.rbegin();
        Expvec q = expvec_sub(ea, eb);
        for (auto x : q)
            if (x < 0) return std::nullopt;
        if (ca % cb != 0) return std::nullopt;
        const Zi qc = ca / cb;
        quot.emplace(q, qc);
        rem = zp_sub(rem, zp_mul_term(b, q, qc));
    }
    return quot;
}

inline ZPoly zp_gcd(const ZPoly& a, const ZPoly& b);

// Content of p with respect to variable v: gcd of its v-coefficients.
inline ZPoly zp_content_in(const ZPoly& p, std::size_t v) {
    ZPoly g;
    const std::int64_t d = zp_deg_in(p, v);
    for (std::int64_t k = 0; k <= d; ++k) {
        ZPoly c = zp_coeff_in(p, v, k);
        if (c.empty()) continue;
        g = g.empty() ? zp_normalize_sign(c) : zp_gcd(g, c);
        if (zp_is_constant(g) && g.begin()->second == 1) break;
    }
    return g;
}

// Pseudo-remainder of a by b with respect to v; the v-degree strictly
// drops each round, so the loop terminates.
inline ZPoly zp_pseudo_rem(ZPoly a, const ZPoly& b, std::size_t v) {
    const std::int64_t db = zp_deg_in(b, v);
    check(db >= 0, "pseudo-remainder by zero");
    ZPoly lb = zp_coeff_in(b, v, db);
    std::int64_t da = zp_deg_in(a, v);
    while (!a.empty() && da >= db) {
        ZPoly la = zp_coeff_in(a, v, da);
        Expvec shift(a.begin()->first.size(), 0);
        shift[v] = da - db;
        // a <- lb*a - la*v^(da-db)*b  strips the leading v-term.
        a = zp_sub(zp_mul(lb, a), zp_mul(zp_mul_term(la, shift, 1), b));
        da = zp_deg_in(a, v);
    }
    return a;
}

inline ZPoly zp_primitive_in(const ZPoly& p, std::size_t v) {
    if (p.empty()) return p;
    ZPoly c = zp_content_in(p, v);
    auto q = zp_div_exact(p, c);
    check(q.has_value(), "content division failed");
    return *q;
}

namespace detail {

// Modular projection screen. Working mod the Mersenne prime 2^61 - 1 at
// fixed evaluation points, each variable shared by both inputs is kept
// symbolic in turn and the resulting univariate GCDs are inspected: a
// common divisor of positive degree in v survives projection with its
// v-degree intact unless its leading v-coefficient vanishes at the
// points, so degree-zero images for every variable certify a constant
// GCD. Two independent point sets make a missed factor astronomically
// unlikely, and a miss only leaves a fraction unreduced; it never
// produces a wrong value. Points are fixed, so runs are reproducible.

inline constexpr std::uint64_t screen_prime = (1ull << 61) - 1;

inline std::uint64_t screen_mul(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % screen_prime);
}

inline std::uint64_t screen_pow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = screen_mul(r, b);
        b = screen_mul(b, b);
        e >>= 1;
    }
    return r;
}

inline std::uint64_t screen_residue(const Zi& c) {
    Zi r = c % Zi(screen_prime);
    if (r < 0) r += screen_prime;
    return r.convert_to<std::uint64_t>();
}

// Degree of gcd(a, b) over Z_p for dense univariate a, b; -1 when either
// vanished entirely under projection (screen cannot certify then).
inline std::int64_t screen_uni_gcd_deg(std::vector<std::uint64_t> a,
                                        std::vector<std::uint64_t> b) {
    auto trim = [](std::vector<std::uint64_t>& f) {
        while (!f.empty() && f.back() == 0) f.pop_back();
    };
    trim(a);
    trim(b);
    if (a.empty() || b.empty()) return -1;
    while (!b.empty()) {
        // a mod b, classical long division over the field.
        const std::uint64_t inv = screen_pow(b.back(), screen_prime - 2);
        while (a.size() >= b.size()) {
            const std::uint64_t q = screen_mul(a.back(), inv);
            const std::size_t off = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) {
                const std::uint64_t s = screen_mul(q, b[i]);
                std::uint64_t& t = a[off + i];
                t = t >= s ? t - s : t + (screen_prime - s);
            }
            trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
        trim(b);
    }
    return static_cast<std::int64_t>(a.size()) - 1;
}

// True when the projection certifies that gcd(a, b) is constant; false
// means a nontrivial factor is possible and the caller must do real work.
inline bool screen_certifies_coprime(const ZPoly& a, const ZPoly& b) {
    const std::size_t nvars = a.begin()->first.size();
    if (nvars == 0) return true;

    std::vector<std::size_t> shared;
    for (std::size_t v = 0; v < nvars; ++v)
        if (zp_deg_in(a, v) > 0 && zp_deg_in(b, v) > 0) shared.push_back(v);
    if (shared.empty()) return true;

    std::vector<std::uint64_t> ra, rb;
    ra.reserve(a.size());
    rb.reserve(b.size());
    for (const auto& [e, c] : a) ra.push_back(screen_residue(c));
    for (const auto& [e, c] : b) rb.push_back(screen_residue(c));

    for (const std::uint64_t seed : {0x9e3779b97f4a7c15ull, 0xbf58476d1ce4e5b9ull}) {
        // splitmix64 stream; fixed seeds keep every run identical.
        std::uint64_t state = seed;
        auto next = [&state] {
            std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
            return z ^ (z >> 31);
        };
        std::vector<std::uint64_t> pt(nvars);
        for (auto& t : pt) t = 2 + next() % (screen_prime - 3);

        // Full point product per term once; each variable is then put
        // back symbolically by multiplying with the inverse power.
        auto images = [&](const ZPoly& p, const std::vector<std::uint64_t>& rc,
                          std::size_t v) {
            std::vector<std::uint64_t> img(
                static_cast<std::size_t>(zp_deg_in(p, v)) + 1, 0);
            std::size_t i = 0;
            for (const auto& [e, c] : p) {
                std::uint64_t t = rc[i++];
                for (std::size_t j = 0; j < nvars; ++j) {
                    if (j == v || e[j] == 0) continue;
                    t = screen_mul(t, screen_pow(pt[j], static_cast<std::uint64_t>(e[j])));
                }
                std::uint64_t& slot = img[static_cast<std::size_t>(e[v])];
                slot = (slot + t) % screen_prime;
            }
            return img;
        };

        for (const std::size_t v : shared)
            if (screen_uni_gcd_deg(images(a, ra, v), images(b, rb, v)) != 0)
                return false;
    }
    return true;
}

// Substitute v = xi.
inline ZPoly zp_eval_at(const ZPoly& p, std::size_t v, const Zi& xi) {
    std::map<std::int64_t, Zi> powers;
    ZPoly r;
    for (const auto& [e, c] : p) {
        auto it = powers.find(e[v]);
        if (it == powers.end())
            it = powers.emplace(e[v], zi_pow(xi, static_cast<std::uint64_t>(e[v]))).first;
        Expvec f = e;
        f[v] = 0;
        zp_add_term(r, f, c * it->second);
    }
    return r;
}

// Balanced remainder in [-xi/2, xi/2).
inline Zi bal_rem(const Zi& x, const Zi& xi) {
    Zi r = x % xi;
    if (r < 0) r += xi;
    if (2 * r >= xi) r -= xi;
    return r;
}

// Invert zp_eval_at: the unique g with g(v = xi) = G whose v-coefficients
// have balanced base-xi digits; fails if more than degcap+1 digits appear.
inline std::optional<ZPoly> zp_lift_eval(ZPoly G, std::size_t v, const Zi& xi,
                                         std::int64_t degcap) {
    ZPoly g;
    std::int64_t j = 0;
    while (!G.empty()) {
        if (j > degcap) return std::nullopt;
        ZPoly next;
        for (const auto& [e, c] : G) {
            const Zi d = bal_rem(c, xi);
            if (d != 0) {
                Expvec f = e;
                f[v] = j;
                g.emplace(std::move(f), d);
            }
            const Zi q = (c - d) / xi;
            if (q != 0) next.emplace(e, q);
        }
        G = std::move(next);
        ++j;
    }
    return g;
}

// Upper bound on the height of any divisor of p (Mignotte-style, padded).
inline Zi zp_divisor_height_bound(const ZPoly& p) {
    const std::int64_t d = zp_total_degree(p);
    return (zp_height(p) * Zi(p.size() + 1)) << static_cast<unsigned>(d + 2);
}

// Evaluation-based GCD. Inputs are nonzero with nonnegative exponents.
// Any returned value is exact. A constant result is sound because the
// evaluation point exceeds twice the height of any common divisor, so a
// nonconstant common divisor cannot evaluate into a constant GCD below.
// A nonconstant candidate is verified by trial division and then topped
// up with the GCD of the cofactors: gcd(a,b) = g * gcd(a/g, b/g) for any
// verified common divisor g, which restores maximality.
inline std::optional<ZPoly> zp_gcd_heu(const ZPoly& a, const ZPoly& b) {
    const std::size_t nvars = a.begin()->first.size();

    auto as_constant = [&](const Zi& c) {
        ZPoly r;
        r.emplace(Expvec(nvars, 0), c);
        return r;
    };
    // Screen before touching integer contents: at deep recursion levels
    // the coefficients are enormous and a content GCD chain on them is
    // exactly the work a certified-constant result lets us skip. The
    // chain starts across the pair so the accumulator collapses to a
    // small value after a single wide GCD.
    if (screen_certifies_coprime(a, b)) {
        Zi g = zi_gcd(a.begin()->second, b.begin()->second);
        for (const auto& [e, c] : a) {
            if (g == 1) break;
            g = zi_gcd(g, c);
        }
        for (const auto& [e, c] : b) {
            if (g == 1) break;
            g = zi_gcd(g, c);
        }
        return as_constant(g);
    }

    const Zi ia = zp_int_content(a);
    const Zi ib = zp_int_content(b);
    const Zi ig = zi_gcd(ia, ib);
    const ZPoly pa = zp_div_int(a, ia);
    const ZPoly pb = zp_div_int(b, ib);

    if (zp_is_constant(pa) || zp_is_constant(pb)) return as_constant(ig);

    // Choose the variable sharing the most structure; one present on a
    // single side still works, the lift then has zero v-degree.
    std::size_t v = nvars;
    std::int64_t best_shared = -1, best_total = -1;
    for (std::size_t i = 0; i < nvars; ++i) {
        const std::int64_t da = zp_deg_in(pa, i);
        const std::int64_t db = zp_deg_in(pb, i);
        if (da <= 0 && db <= 0) continue;
        const std::int64_t shared = std::min(da, db);
        const std::int64_t total = da + db;
        if (shared > best_shared || (shared == best_shared && total > best_total)) {
            v = i;
            best_shared = shared;
            best_total = total;
        }
    }
    check(v < nvars, "no variable left despite nonconstant inputs");
    const std::int64_t degcap = std::max<std::int64_t>(
        0, std::min(zp_deg_in(pa, v), zp_deg_in(pb, v)));

    const Zi bound =
        std::min(zp_divisor_height_bound(pa), zp_divisor_height_bound(pb));
    Zi xi = 2 * bound + 29;
    // The certified evaluation point roughly squares in size with every
    // recursion level. Once it is this wide the lifted-digit arithmetic
    // costs far more than the primitive PRS fallback, so decline.
    constexpr unsigned max_xi_bits = 1u << 16;
    for (int attempt = 0; attempt < 6; ++attempt) {
        if (boost::multiprecision::msb(xi) > max_xi_bits) return std::nullopt;
        const ZPoly ea = zp_eval_at(pa, v, xi);
        const ZPoly eb = zp_eval_at(pb, v, xi);
        check(!ea.empty() && !eb.empty(), "evaluation of a nonzero polynomial vanished");
        const auto sub = zp_gcd_heu(ea, eb);
        if (sub) {
            auto lifted = zp_lift_eval(*sub, v, xi, degcap);
            if (lifted && !lifted->empty()) {
                ZPoly g = zp_normalize_sign(zp_div_int(*lifted, zp_int_content(*lifted)));
                const auto qa = zp_div_exact(pa, g);
                const auto qb = zp_div_exact(pb, g);
                if (qa && qb) {
                    if (zp_is_constant(g)) return as_constant(ig);
                    // Cofactor top-up; total degree strictly decreased.
                    ZPoly rest = zp_gcd(*qa, *qb);
                    if (!zp_is_constant(rest)) g = zp_mul(g, rest);
                    return zp_mul_term(g, Expvec(nvars, 0), ig);
                }
            }
        }
        xi = xi * 73794 / 27011; // grow by an irrational-looking factor
    }
    return std::nullopt;
}

} // namespace detail

inline ZPoly zp_gcd(const ZPoly& a, const ZPoly& b) {
    if (a.empty()) return zp_normalize_sign(b);
    if (b.empty()) return zp_normalize_sign(a);
    if (a == b || a == zp_neg(b)) return zp_normalize_sign(a);

    const std::size_t nvars = a.begin()->first.size();

    // Monomial fast path: componentwise min exponents, gcd of contents.
    if (zp_is_monomial(a) || zp_is_monomial(b)) {
        const ZPoly& m = zp_is_monomial(a) ? a : b;
        const ZPoly& o = zp_is_monomial(a) ? b : a;
        Expvec e = m.begin()->first;
        Zi g = m.begin()->second < 0 ? Zi(-m.begin()->second) : m.begin()->second;
        for (const auto& [eo, co] : o) {
            for (std::size_t i = 0; i < nvars; ++i) e[i] = std::min(e[i], eo[i]);
            g = zi_gcd(g, co);
        }
        ZPoly r;
        r.emplace(std::move(e), g);
        return r;
    }

    // Exact-divisor fast path: mutation formulas mostly cancel a factor
    // that is already known to divide, and a failed trial division exits
    // at the first obstructed term.
    if (a.size() >= b.size()) {
        if (zp_div_exact(a, b)) return zp_normalize_sign(b);
    } else {
        if (zp_div_exact(b, a)) return zp_normalize_sign(a);
    }

    // Most reductions in mutation arithmetic combine fractions that are
    // already in lowest terms; certify those cheaply instead of running
    // the evaluation tower just to discover a constant.
    if (detail::screen_certifies_coprime(a, b)) {
        ZPoly r;
        r.emplace(Expvec(nvars, 0), zi_gcd(zp_int_content(a), zp_int_content(b)));
        return r;
    }

    if (auto h = detail::zp_gcd_heu(a, b)) return zp_normalize_sign(*h);

    // Primitive pseudo-remainder fallback.
    const Zi ia = zp_int_content(a);
    const Zi ib = zp_int_content(b);
    const Zi ig = zi_gcd(ia, ib);
    ZPoly pa = zp_div_int(a, ia);
    ZPoly pb = zp_div_int(b, ib);

    // Pick a main variable present in both; a variable absent from one
    // side reduces that side to its content with respect to it.
    std::size_t v = nvars;
    for (std::size_t i = 0; i < nvars; ++i) {
        const bool in_a = zp_deg_in(pa, i) > 0;
        const bool in_b = zp_deg_in(pb, i) > 0;
        if (in_a && in_b) {
            v = i;
            break;
        }
        if (in_a) return zp_mul_term(zp_gcd(zp_content_in(pa, i), pb), Expvec(nvars, 0), ig);
        if (in_b) return zp_mul_term(zp_gcd(pa, zp_content_in(pb, i)), Expvec(nvars, 0), ig);
    }
    if (v == nvars) {
        // Both constants.
        ZPoly r;
        r.emplace(Expvec(nvars, 0), ig);
        return r;
    }

    ZPoly ca = zp_content_in(pa, v);
    ZPoly cb = zp_content_in(pb, v);
    ZPoly cg = zp_gcd(ca, cb);
    ZPoly fa = *zp_div_exact(pa, ca);
    ZPoly fb = *zp_div_exact(pb, cb);

    // Primitive PRS on the v-primitive parts.
    ZPoly f = zp_deg_in(fa, v) >= zp_deg_in(fb, v) ? fa : fb;
    ZPoly g = zp_deg_in(fa, v) >= zp_deg_in(fb, v) ? fb : fa;
    while (!g.empty() && zp_deg_in(g, v) > 0) {
        ZPoly r = zp_pseudo_rem(f, g, v);
        f = g;
        g = r.empty() ? r : zp_primitive_in(r, v);
    }
    ZPoly prim;
    if (g.empty()) {
        prim = f; // primitive by construction
    } else {
        // Remainder chain bottomed out at a nonzero v-constant: the
        // primitive parts are coprime in v.
        prim.emplace(Expvec(nvars, 0), Zi(1));
    }

    ZPoly result = zp_mul_term(zp_mul(cg, prim), Expvec(nvars, 0), ig);
    return zp_normalize_sign(result);
}

} // namespace ctrop
