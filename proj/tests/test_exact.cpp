#include <catch2/catch_amalgamated.hpp>

#include "ctrop/laurent.hpp"
#include "ctrop/polygcd.hpp"
#include "ctrop/ratfun.hpp"
#include "ctrop/rng.hpp"
#include "ctrop/xlaurent.hpp"

using namespace ctrop;

namespace {

LaurentPoly gen(std::size_t n, std::size_t i) { return LaurentPoly::generator(n, i); }

LaurentPoly cst(std::size_t n, const Qi& c) { return LaurentPoly::constant(n, c); }

// Random Laurent polynomial with small exponents and small integer
// coefficients; may be zero.
LaurentPoly random_laurent(Rng& rng, std::size_t nvars, std::size_t max_terms,
                           std::int64_t max_exp) {
    LaurentPoly p(nvars);
    const std::uint64_t t = rng.below(max_terms + 1);
    for (std::uint64_t k = 0; k < t; ++k) {
        Expvec e(nvars);
        for (auto& x : e) x = rng.between(-max_exp, max_exp);
        const Qi c = Qi(rng.between(-9, 9));
        if (c != 0) p = p + LaurentPoly::monomial(e, c);
    }
    return p;
}

LaurentPoly random_nonzero_laurent(Rng& rng, std::size_t nvars, std::size_t max_terms,
                                   std::int64_t max_exp) {
    for (;;) {
        LaurentPoly p = random_laurent(rng, nvars, max_terms, max_exp);
        if (!p.is_zero()) return p;
    }
}

std::vector<Qi> random_positive_point(Rng& rng, std::size_t nvars) {
    std::vector<Qi> pt;
    pt.reserve(nvars);
    for (std::size_t i = 0; i < nvars; ++i) pt.push_back(rng.positive_rational(7));
    return pt;
}

ZPoly zp_of(const LaurentPoly& p) {
    auto [z, s] = laurent_to_zpoly(p);
    REQUIRE(s == 1);
    return z;
}

} // namespace

TEST_CASE("laurent polynomial arithmetic and rendering") {
    const auto x = gen(2, 0);
    const auto y = gen(2, 1);
    const auto one = cst(2, 1);

    SECTION("product of conjugates") {
        const auto p = (x + one) * (x - one);
        REQUIRE(p == x * x - one);
        REQUIRE(p.num_terms() == 2);
    }

    SECTION("cancellation removes terms") {
        const auto p = x + y - x;
        REQUIRE(p == y);
        REQUIRE((p - y).is_zero());
    }

    SECTION("negative exponents") {
        const auto p = LaurentPoly::monomial({-2, 1}, Qi(3));
        REQUIRE(p.min_exponents() == Expvec{-2, 1});
        REQUIRE(p.max_exponents() == Expvec{-2, 1});
        REQUIRE(p.to_string({"x1", "x2"}) == "3*x1^-2*x2");
    }

    SECTION("rendering") {
        REQUIRE(one.to_string({"x1", "x2"}) == "1");
        REQUIRE((x * x + y - one).to_string({"x1", "x2"}) == "x1^2 + x2 - 1");
        REQUIRE(cst(2, Qi(-5, 3)).to_string({"x1", "x2"}) == "-5/3");
    }

    SECTION("power") {
        REQUIRE((x + y).pow(0) == one);
        REQUIRE((x + y).pow(3) == (x + y) * (x + y) * (x + y));
    }

    SECTION("evaluation requires positive coordinates") {
        const auto p = x * y.pow(2) - one;
        REQUIRE(p.evaluate({Qi(2), Qi(1, 2)}) == Qi(-1, 2));
        REQUIRE_THROWS_AS(p.evaluate({Qi(0), Qi(1)}), DomainError);
        REQUIRE_THROWS_AS(p.evaluate({Qi(2), Qi(-1)}), DomainError);
    }
}

TEST_CASE("laurent ring axioms on random inputs") {
    Rng rng(0x5eedu);
    for (int iter = 0; iter < 60; ++iter) {
        const std::size_t n = 1 + rng.below(3);
        const auto a = random_laurent(rng, n, 4, 3);
        const auto b = random_laurent(rng, n, 4, 3);
        const auto c = random_laurent(rng, n, 4, 3);
        REQUIRE(a + b == b + a);
        REQUIRE(a * b == b * a);
        REQUIRE((a + b) * c == a * c + b * c);
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE((a - a).is_zero());
    }
}

TEST_CASE("integer polynomial gcd on known inputs") {
    const std::size_t n = 2;
    const auto x = gen(n, 0);
    const auto y = gen(n, 1);
    const auto one = cst(n, 1);

    SECTION("univariate with repeated root") {
        // gcd(x^2-1, x^2-2x+1) = x-1, sign-normalized to 1-x
        const auto g = zp_gcd(zp_of(x * x - one), zp_of(x * x - x.scaled(2) + one));
        REQUIRE(g == zp_of(one - x));
    }

    SECTION("integer content participates") {
        // gcd(6x, 4x^2) = 2x
        const auto g = zp_gcd(zp_of(x.scaled(6)), zp_of((x * x).scaled(4)));
        REQUIRE(g == zp_of(x.scaled(2)));
    }

    SECTION("multivariate common factor") {
        const auto g = zp_gcd(zp_of((x + y) * (x - y)), zp_of((x + y) * (x + y)));
        REQUIRE(g == zp_of(x + y));
    }

    SECTION("coprime inputs") {
        const auto g = zp_gcd(zp_of(x + one), zp_of(y + one));
        REQUIRE(g == zp_of(one));
    }

    SECTION("gcd with zero") {
        const auto g = zp_gcd(zp_of(x + y), ZPoly{});
        REQUIRE(g == zp_of(x + y));
    }

    SECTION("sign normalization") {
        const auto g = zp_gcd(zp_of(one - x), zp_of(x - one));
        REQUIRE(g == zp_of(one - x));
    }
}

TEST_CASE("integer polynomial gcd properties on random inputs") {
    Rng rng(0xacdcu);
    auto nonneg = [&](Rng& r, std::size_t n) {
        // Nonnegative exponents only; ZPoly requires a polynomial.
        LaurentPoly p(n);
        const std::uint64_t t = 1 + r.below(3);
        for (std::uint64_t k = 0; k < t; ++k) {
            Expvec e(n);
            for (auto& v : e) v = r.between(0, 2);
            const Qi c = Qi(r.between(-4, 4));
            if (c != 0) p = p + LaurentPoly::monomial(e, c);
        }
        return p.is_zero() ? cst(n, 1) : p;
    };
    for (int iter = 0; iter < 40; ++iter) {
        const std::size_t n = 1 + rng.below(3);
        const auto a = nonneg(rng, n);
        const auto b = nonneg(rng, n);
        const auto m = nonneg(rng, n);
        const ZPoly za = zp_of(a * m);
        const ZPoly zb = zp_of(b * m);
        const ZPoly g = zp_gcd(za, zb);
        // gcd divides both inputs and is divisible by the planted factor.
        REQUIRE(zp_div_exact(za, g).has_value());
        REQUIRE(zp_div_exact(zb, g).has_value());
        REQUIRE(zp_div_exact(g, zp_gcd(g, zp_of(m))).has_value());
        REQUIRE(zp_gcd(g, zp_of(m)) == zp_gcd(zp_of(m), g));
        // Quotients are coprime up to integer content.
        const ZPoly qa = *zp_div_exact(za, g);
        const ZPoly qb = *zp_div_exact(zb, g);
        const ZPoly h = zp_gcd(qa, qb);
        REQUIRE(h.size() == 1);
        REQUIRE(h.begin()->first == Expvec(n, 0));
    }
}

TEST_CASE("exact polynomial division") {
    Rng rng(0xd1117u);
    for (int iter = 0; iter < 40; ++iter) {
        const std::size_t n = 1 + rng.below(3);
        auto nonneg = [&] {
            LaurentPoly p(n);
            const std::uint64_t t = 1 + rng.below(3);
            for (std::uint64_t k = 0; k < t; ++k) {
                Expvec e(n);
                for (auto& v : e) v = rng.between(0, 2);
                const Qi c = Qi(rng.between(-4, 4));
                if (c != 0) p = p + LaurentPoly::monomial(e, c);
            }
            return p.is_zero() ? cst(n, 1) : p;
        };
        const auto a = nonneg();
        const auto b = nonneg();
        const auto q = zp_div_exact(zp_of(a * b), zp_of(b));
        REQUIRE(q.has_value());
        REQUIRE(*q == zp_of(a));
    }
    // Non-divisible pair is rejected.
    const auto x = gen(1, 0);
    const auto one = cst(1, 1);
    REQUIRE_FALSE(zp_div_exact(zp_of(x * x + one), zp_of(x + one)).has_value());
}

TEST_CASE("rational function canonical form") {
    const std::size_t n = 2;
    const auto x = gen(n, 0);
    const auto y = gen(n, 1);
    const auto one = cst(n, 1);

    SECTION("common factors cancel") {
        const RationalFunction a(x * x - one, x - one);
        const RationalFunction b(x + one, one);
        REQUIRE(a == b);
        REQUIRE(a.is_laurent());
        REQUIRE(a.as_laurent() == x + one);
    }

    SECTION("scalar multiples identify") {
        const RationalFunction a(x.scaled(Qi(2, 3)), y.scaled(Qi(4, 5)));
        const RationalFunction b(x.scaled(5), y.scaled(6));
        REQUIRE(a == b);
    }

    SECTION("denominator sign is normalized") {
        const RationalFunction a(one, x - one);
        const RationalFunction b(cst(n, -1), one - x);
        REQUIRE(a == b);
    }

    SECTION("laurent shifts normalize") {
        // x^-1 y / (x^-2) = x y
        const RationalFunction a(LaurentPoly::monomial({-1, 1}, Qi(1)),
                                 LaurentPoly::monomial({-2, 0}, Qi(1)));
        REQUIRE(a.is_laurent());
        REQUIRE(a.as_laurent() == x * y);
    }

    SECTION("zero numerator") {
        const RationalFunction z(LaurentPoly(n), x + y);
        REQUIRE(z == RationalFunction(n));
    }

    SECTION("zero denominator is rejected") {
        REQUIRE_THROWS_AS(RationalFunction(one, LaurentPoly(n)), DomainError);
    }
}

TEST_CASE("rational function field axioms and evaluation oracle") {
    Rng rng(0xf1e1du);
    int done = 0;
    while (done < 40) {
        const std::size_t n = 1 + rng.below(2);
        const auto pn = random_laurent(rng, n, 3, 2);
        const auto pd = random_nonzero_laurent(rng, n, 3, 2);
        const auto qn = random_laurent(rng, n, 3, 2);
        const auto qd = random_nonzero_laurent(rng, n, 3, 2);
        const RationalFunction a(pn, pd);
        const RationalFunction b(qn, qd);

        REQUIRE(a + b == b + a);
        REQUIRE(a * b == b * a);
        REQUIRE(a - a == RationalFunction(n));
        REQUIRE((a + b) * b == a * b + b * b);
        if (!(a == RationalFunction(n))) {
            REQUIRE(a * a.inverse() == RationalFunction::constant(n, 1));
            REQUIRE(a.pow(-2) == (a * a).inverse());
        }

        // Numeric oracle: arithmetic commutes with evaluation wherever
        // nothing vanishes at the sample point.
        const auto pt = random_positive_point(rng, n);
        try {
            const Qi av = a.evaluate(pt);
            const Qi bv = b.evaluate(pt);
            REQUIRE((a + b).evaluate(pt) == av + bv);
            REQUIRE((a * b).evaluate(pt) == av * bv);
            REQUIRE((a - b).evaluate(pt) == av - bv);
            ++done;
        } catch (const DomainError&) {
            // Sample hit a pole or zero; draw again.
        }
    }
}

TEST_CASE("x-laurent arithmetic over rational coefficient field") {
    // Two x variables with coefficients in two y variables.
    const auto X1 = XLaurent::generator(2, 2, 0);
    const auto X2 = XLaurent::generator(2, 2, 1);
    const auto Y1 = RationalFunction::generator(2, 0);
    const auto one = XLaurent::constant(2, RationalFunction::constant(2, 1));

    SECTION("exact division recovers a planted factor") {
        const auto a = X1 * X2 + one.scaled(Y1);
        const auto b = X1.pow(2) + X2.shifted({-1, 0});
        const auto q = (a * b).exact_div(a);
        REQUIRE(q == b);
    }

    SECTION("division that leaves a remainder is a contract violation") {
        const auto p = X1 * X1 + one;
        REQUIRE_THROWS_AS(p.exact_div(X1 + one), FalsificationError);
    }

    SECTION("division by a monomial is a shift") {
        const auto p = X1 + X2;
        const auto q = p.exact_div(XLaurent::monomial({-2, 0}, RationalFunction::constant(2, 1)));
        REQUIRE(q == p.shifted({2, 0}));
    }

    SECTION("sum of coefficients at x = 1") {
        const auto p = (X1 + X2.shifted({0, -2})).scaled(Y1);
        REQUIRE(p.at_x_ones() == Y1 + Y1);
    }

    SECTION("flatten is a ring homomorphism") {
        Rng rng(0xf1a7u);
        for (int iter = 0; iter < 20; ++iter) {
            auto rnd = [&] {
                XLaurent p = XLaurent::constant(2, RationalFunction::constant(2, 0));
                const std::uint64_t t = rng.below(4);
                for (std::uint64_t k = 0; k < t; ++k) {
                    Expvec e{rng.between(-2, 2), rng.between(-2, 2)};
                    Expvec f{rng.between(-1, 1), rng.between(-1, 1)};
                    const Qi c = Qi(rng.between(-3, 3));
                    if (c != 0)
                        p = p + XLaurent::monomial(
                                    e, RationalFunction::from_poly(LaurentPoly::monomial(f, c)));
                }
                return p;
            };
            const auto a = rnd();
            const auto b = rnd();
            REQUIRE((a * b).flatten() == a.flatten() * b.flatten());
            REQUIRE((a + b).flatten() == a.flatten() + b.flatten());
        }
    }
}
