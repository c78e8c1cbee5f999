#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <map>
#include <vector>

#include <ctrop/dynkin.hpp>
#include <ctrop/quantum.hpp>
#include <ctrop/rng.hpp>
#include <ctrop/ysquiver.hpp>

using namespace ctrop;

namespace {

ZMat zm(const std::vector<std::vector<std::int64_t>>& rows) { return ZMat::from_rows(rows); }

// The rank two matrix of the pentagon run; b(1,0) = 1 gives Y1 Y2 = q^2 Y2 Y1.
ExchangeMatrix a2() { return ExchangeMatrix(zm({{0, -1}, {1, 0}})); }

Expvec ev(std::initializer_list<std::int64_t> xs) { return Expvec(xs); }

ZPoly qpoly(std::initializer_list<std::pair<std::int64_t, int>> terms) {
    ZPoly p;
    for (const auto& [deg, coeff] : terms) zp_add_term(p, Expvec{deg}, Zi(coeff));
    return p;
}

QRat qp(std::int64_t k) { return QRat::q_power(k); }

// Random skew-symmetric exchange matrix with entries bounded by two.
ExchangeMatrix random_skew(Rng& rng, std::size_t n) {
    std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const std::int64_t v = rng.between(-2, 2);
            rows[i][j] = v;
            rows[j][i] = -v;
        }
    return ExchangeMatrix(ZMat::from_rows(rows));
}

QuantumTorusElement random_element(Rng& rng, const ZMat& lam, std::size_t max_terms) {
    QuantumTorusElement r = qt_zero(lam);
    const std::size_t nterms = 1 + rng.below(max_terms);
    for (std::size_t t = 0; t < nterms; ++t) {
        Expvec e(lam.rows());
        for (auto& x : e) x = rng.between(-2, 2);
        std::int64_t c = rng.between(-5, 5);
        if (c == 0) c = 1;
        detail::qt_accumulate(r, e, QRat(Zi(c)) * qp(rng.between(-3, 3)));
    }
    return r;
}

} // namespace

TEST_CASE("q-rational arithmetic") {
    const ZPoly one = qpoly({{0, 1}});
    const ZPoly q1 = qpoly({{1, 1}});
    const ZPoly omq = qpoly({{0, 1}, {1, -1}});   // 1 - q
    const ZPoly omq2 = qpoly({{0, 1}, {2, -1}});  // 1 - q^2
    const ZPoly omq3 = qpoly({{0, 1}, {3, -1}});  // 1 - q^3
    const ZPoly omq4 = qpoly({{0, 1}, {4, -1}});  // 1 - q^4

    SECTION("constants and powers") {
        CHECK(QRat().is_zero());
        CHECK(QRat(1).is_one());
        CHECK(QRat(Zi(-3)).str() == "-3");
        CHECK(qp(0).is_one());
        CHECK(qp(3) * qp(-5) == qp(-2));
        CHECK(qp(2).str() == "q^2");
        CHECK(QRat(Qi(3, 4)) + QRat(Qi(1, 4)) == QRat(1));
    }

    SECTION("construction reduces to lowest terms") {
        CHECK(QRat(zp_mul(omq2, qpoly({{0, 1}, {1, 1}})), omq2) == QRat(qpoly({{0, 1}, {1, 1}}), one));
        CHECK(QRat(qpoly({{0, 2}, {1, 2}}), qpoly({{0, 4}})) == QRat(qpoly({{0, 1}, {1, 1}}), qpoly({{0, 2}})));
        // Denominator sign: lowest coefficient is made positive.
        CHECK(QRat(one, zp_neg(omq)) == QRat(zp_neg(one), omq));
        CHECK(QRat(ZPoly{}, omq4).is_zero());
        CHECK(QRat(ZPoly{}, omq4) == QRat());
        CHECK_THROWS_AS(QRat(one, ZPoly{}), DomainError);
    }

    SECTION("field operations") {
        const QRat a(one, omq);
        const QRat b(zp_neg(q1), omq);
        CHECK((a + b).is_one());
        CHECK((a - a).is_zero());
        const QRat l(omq2, omq3);
        const QRat r(omq3, omq4);
        CHECK(l * r == QRat(omq2, omq4));
        CHECK((l * l.inverse()).is_one());
        CHECK(l / l == QRat(1));
        CHECK(-(-l) == l);
        CHECK_THROWS_AS(QRat().inverse(), DomainError);
        CHECK_THROWS_AS(l / QRat(), DomainError);
    }

    SECTION("specialization at q = 1") {
        CHECK(QRat(omq2, omq).at_one() == 2);          // (1+q) at 1
        CHECK(QRat(omq3, omq).at_one() == 3);          // (1+q+q^2) at 1
        CHECK(QRat(Qi(5, 7)).at_one() == Qi(5, 7));
        CHECK_THROWS_AS(QRat(one, omq).at_one(), DomainError);
    }

    SECTION("pochhammer products") {
        CHECK(q2_pochhammer(0) == one);
        CHECK(q2_pochhammer(2) == zp_mul(omq2, omq4));
        CHECK(QRat(q2_pochhammer(3), q2_pochhammer(2)) == QRat(qpoly({{0, 1}, {6, -1}}), one));
        CHECK_THROWS_AS(q2_pochhammer(-1), DomainError);
    }
}

TEST_CASE("quantum torus multiplication") {
    const ZMat lam = pairing_matrix(a2());
    const auto mono = [&](std::int64_t k, Expvec v) { return qt_monomial(lam, qp(k), std::move(v)); };
    const QuantumTorusElement y1 = mono(0, ev({1, 0}));
    const QuantumTorusElement y2 = mono(0, ev({0, 1}));

    SECTION("pairing follows the transposed exchange matrix") {
        CHECK(pairing(lam, ev({1, 0}), ev({0, 1})) == 1);
        CHECK(pairing(lam, ev({0, 1}), ev({1, 0})) == -1);
        CHECK(pairing(lam, ev({1, 0}), ev({1, 0})) == 0);
        CHECK(pairing(lam, ev({2, -1}), ev({-1, 3})) == 5);
        CHECK_THROWS_AS(pairing(lam, ev({1, 0, 0}), ev({0, 1})), Error);
    }

    SECTION("Weyl basis products") {
        CHECK(qt_eq(qt_mul(y1, y2), mono(1, ev({1, 1}))));
        CHECK(qt_eq(qt_mul(y2, y1), mono(-1, ev({1, 1}))));
        // y-commutation: Y1 Y2 = q^2 Y2 Y1.
        CHECK(qt_eq(qt_mul(y1, y2), qt_scale(qt_mul(y2, y1), qp(2))));
        CHECK(qt_eq(qt_mul(mono(0, ev({2, -1})), mono(0, ev({-1, 3}))), mono(5, ev({1, 2}))));
    }

    SECTION("linear structure") {
        const QuantumTorusElement s = qt_add(y1, qt_scale(y2, qp(3)));
        CHECK(qt_eq(qt_sub(s, s), qt_zero(lam)));
        CHECK(qt_add(y1, qt_neg(y1)).terms.empty());
        const QuantumTorusElement d = qt_mul(s, qt_add(y1, y2));
        CHECK(qt_eq(d, qt_add(qt_mul(s, y1), qt_mul(s, y2))));
    }

    SECTION("monomial inverses") {
        const QuantumTorusElement m = mono(3, ev({2, -1}));
        CHECK(qt_eq(qt_mul(m, qt_inverse_monomial(m)), qt_one(lam)));
        CHECK(qt_eq(qt_mul(qt_inverse_monomial(m), m), qt_one(lam)));
        CHECK_THROWS_AS(qt_inverse_monomial(qt_add(y1, y2)), DomainError);
    }

    SECTION("mismatched tori are rejected") {
        const ZMat other = pairing_matrix(ExchangeMatrix(zm({{0, 1}, {-1, 0}})));
        CHECK_THROWS_AS(qt_mul(y1, qt_monomial(other, qp(0), ev({1, 0}))), DomainError);
    }

    SECTION("specialization at q = 1") {
        const QuantumTorusElement e =
            qt_add(qt_scale(y1, QRat(qpoly({{0, 1}, {1, -1}}), qpoly({{0, 1}, {2, -1}}))), y2);
        const auto m = qt_at_one(e);
        CHECK(m.size() == 2);
        CHECK(m.at(ev({1, 0})) == Qi(1, 2));
        CHECK(m.at(ev({0, 1})) == 1);
    }
}

TEST_CASE("quantum torus associativity and commutative limit") {
    Rng rng(0x71a550cu);
    for (int rep = 0; rep < 25; ++rep) {
        const std::size_t n = 1 + rng.below(3);
        const ExchangeMatrix b = random_skew(rng, n);
        const ZMat lam = pairing_matrix(b);
        const QuantumTorusElement x = random_element(rng, lam, 5);
        const QuantumTorusElement y = random_element(rng, lam, 5);
        const QuantumTorusElement z = random_element(rng, lam, 5);
        CHECK(qt_eq(qt_mul(qt_mul(x, y), z), qt_mul(x, qt_mul(y, z))));
        CHECK(qt_eq(qt_mul(x, qt_add(y, z)), qt_add(qt_mul(x, y), qt_mul(x, z))));
        // The twist is invisible at q = 1.
        CHECK(qt_at_one(qt_mul(x, y)) == qt_at_one(qt_mul(y, x)));
    }
    // A vanishing exchange matrix gives a genuinely commutative torus.
    const ExchangeMatrix zero(zm({{0, 0}, {0, 0}}));
    const ZMat lam = pairing_matrix(zero);
    for (int rep = 0; rep < 5; ++rep) {
        const QuantumTorusElement x = random_element(rng, lam, 4);
        const QuantumTorusElement y = random_element(rng, lam, 4);
        CHECK(qt_eq(qt_mul(x, y), qt_mul(y, x)));
    }
}

TEST_CASE("truncated series arithmetic") {
    const ZMat lam = pairing_matrix(a2());
    const auto mono = [&](std::int64_t k, Expvec v) { return qt_monomial(lam, qp(k), std::move(v)); };
    const TruncatedSeries one = ts_one(lam, 8);

    SECTION("construction enforces the cone and the cutoff") {
        QuantumTorusElement e = qt_add(qt_one(lam), mono(0, ev({5, 5})));
        const TruncatedSeries s = ts_make(e, 8);
        CHECK(s.elem.terms.size() == 1); // degree ten exceeds the cutoff
        CHECK_THROWS_AS(ts_make(mono(0, ev({-1, 2})), 8), DomainError);
        CHECK_THROWS_AS(ts_make(qt_one(lam), -1), DomainError);
    }

    SECTION("products truncate in total degree") {
        const TruncatedSeries s = ts_make(qt_add(qt_one(lam), mono(0, ev({1, 0}))), 1);
        const TruncatedSeries p = ts_mul(s, s);
        CHECK(ts_eq(p, ts_make(qt_add(qt_one(lam), qt_scale(mono(0, ev({1, 0})), QRat(2))), 1)));
        CHECK(ts_eq(ts_pow(s, 0), ts_one(lam, 1)));
        CHECK(ts_eq(ts_pow(s, 2), p));
    }

    SECTION("geometric inverse") {
        CHECK(ts_eq(series_inverse(one), one));
        // (1 + q Y1)^{-1} = sum (-1)^n q^n Y1^n; the generator commutes with itself.
        const TruncatedSeries s = ts_make(qt_add(qt_one(lam), mono(1, ev({1, 0}))), 8);
        QuantumTorusElement expect = qt_zero(lam);
        for (std::int64_t n = 0; n <= 8; ++n) {
            QRat c = qp(n);
            if (n % 2) c = -c;
            expect = qt_add(expect, qt_monomial(lam, c, ev({n, 0})));
        }
        CHECK(ts_eq(series_inverse(s), ts_make(expect, 8)));
        CHECK(ts_eq(ts_mul(s, series_inverse(s)), one));
        CHECK(ts_eq(ts_mul(series_inverse(s), s), one));
    }

    SECTION("inverse with a scalar constant term") {
        const TruncatedSeries s = ts_make(
            qt_add(qt_scale(qt_one(lam), QRat(2)), mono(0, ev({0, 1}))), 6);
        CHECK(ts_eq(ts_mul(series_inverse(s), s), ts_one(lam, 6)));
        const TruncatedSeries no_const = ts_make(mono(0, ev({1, 0})), 6);
        CHECK_THROWS_AS(series_inverse(no_const), DomainError);
    }
}

TEST_CASE("quantum dilogarithm series") {
    const ZMat lam = pairing_matrix(a2());

    SECTION("coefficients of the defining sum") {
        const TruncatedSeries psi = psi_expand(lam, 0, ev({1, 0}), 8);
        CHECK(psi.elem.terms.size() == 9);
        CHECK(ts_constant_term(psi).is_one());
        CHECK(psi.elem.terms.at(ev({1, 0})) ==
              QRat(qpoly({{1, -1}}), q2_pochhammer(1)));
        CHECK(psi.elem.terms.at(ev({2, 0})) ==
              QRat(qpoly({{2, 1}}), q2_pochhammer(2)));
        CHECK(psi.elem.terms.at(ev({3, 0})) ==
              QRat(qpoly({{3, -1}}), q2_pochhammer(3)));
        // A q-power in the argument shifts each coefficient.
        const TruncatedSeries shifted = psi_expand(lam, 2, ev({1, 0}), 8);
        CHECK(shifted.elem.terms.at(ev({1, 0})) ==
              QRat(qpoly({{3, -1}}), q2_pochhammer(1)));
    }

    SECTION("argument validation") {
        CHECK_THROWS_AS(psi_expand(lam, 0, ev({0, 0}), 8), DomainError);
        CHECK_THROWS_AS(psi_expand(lam, 0, ev({1, -1}), 8), DomainError);
        CHECK_THROWS_AS(psi_expand(lam, 0, ev({1, 0, 0}), 8), DomainError);
    }

    SECTION("general arguments extend the monomial expansion") {
        const TruncatedSeries x = ts_make(qt_monomial(lam, qp(2), ev({1, 1})), 8);
        CHECK(ts_eq(psi_of_series(x), psi_expand(lam, 2, ev({1, 1}), 8)));
        CHECK_THROWS_AS(psi_of_series(ts_one(lam, 8)), DomainError);
    }

    SECTION("recursion in the argument") {
        Rng rng(0x951u);
        for (int rep = 0; rep < 20; ++rep) {
            Expvec w(2, 0);
            w[rng.below(2)] = 1 + rng.below(2);
            if (rng.below(2)) w[0] += rng.below(2);
            const std::int64_t a = rng.between(-3, 3);
            const TruncatedSeries base = psi_expand(lam, a, w, 8);
            // psi(q^2 x) = (1 + q x) psi(x)
            const TruncatedSeries up = psi_expand(lam, a + 2, w, 8);
            const TruncatedSeries fup =
                ts_make(qt_add(qt_one(lam), qt_monomial(lam, qp(a + 1), w)), 8);
            CHECK(ts_eq(up, ts_mul(fup, base)));
            // psi(q^{-2} x) = (1 + q^{-1} x)^{-1} psi(x)
            const TruncatedSeries down = psi_expand(lam, a - 2, w, 8);
            const TruncatedSeries fdown =
                ts_make(qt_add(qt_one(lam), qt_monomial(lam, qp(a - 1), w)), 8);
            CHECK(ts_eq(down, ts_mul(series_inverse(fdown), base)));
        }
    }

    SECTION("pentagon relation for anticommuting monomials") {
        // U = Y^(1,0), V = Y^(0,1) satisfy U V = q^2 V U; then
        // psi(U) psi(V) = psi(V) psi(q^{-1} U V) psi(U) with q^{-1} U V = Y^(1,1).
        const auto U = qt_monomial(lam, qp(0), ev({1, 0}));
        const auto V = qt_monomial(lam, qp(0), ev({0, 1}));
        CHECK(qt_eq(qt_mul(U, V), qt_scale(qt_mul(V, U), qp(2))));
        CHECK(qt_eq(qt_scale(qt_mul(U, V), qp(-1)), qt_monomial(lam, qp(0), ev({1, 1}))));
        const TruncatedSeries pu = psi_expand(lam, 0, ev({1, 0}), 8);
        const TruncatedSeries pv = psi_expand(lam, 0, ev({0, 1}), 8);
        const TruncatedSeries puv = psi_expand(lam, 0, ev({1, 1}), 8);
        CHECK(ts_eq(ts_mul(pu, pv), ts_mul(ts_mul(pv, puv), pu)));
        // The middle argument matters: U V in place of q^{-1} U V fails.
        const TruncatedSeries wrong = psi_expand(lam, 1, ev({1, 1}), 8);
        CHECK(!ts_eq(ts_mul(pu, pv), ts_mul(ts_mul(pv, wrong), pu)));
    }
}

TEST_CASE("pointed variable algebra") {
    const ZMat lam = pairing_matrix(a2());
    const QuantumYVariable y1 = qy_unit(lam, 0, 8);
    const QuantumYVariable y2 = qy_unit(lam, 1, 8);

    SECTION("lead composition carries the twist") {
        const QuantumYVariable p = qy_mul(y1, y2);
        CHECK(p.qpow == 1);
        CHECK(p.cvec == ev({1, 1}));
        CHECK(ts_constant_term(p.tail).is_one());
        const QuantumYVariable r = qy_mul(y2, y1);
        CHECK(r.qpow == -1);
        CHECK(r.cvec == ev({1, 1}));
    }

    SECTION("conjugation by a monomial rescales coefficients") {
        const TruncatedSeries t =
            ts_make(qt_add(qt_one(lam), qt_monomial(lam, qp(1), ev({1, 0}))), 8);
        const TruncatedSeries c = conj_by_monomial(t, ev({0, 1}));
        CHECK(c.elem.terms.at(ev({1, 0})) == qp(3));
        CHECK(ts_constant_term(c).is_one());
    }

    SECTION("inverses and powers") {
        // A variable with a nontrivial tail: y2 after one mutation of y1.
        const TruncatedSeries t =
            ts_make(qt_add(qt_one(lam), qt_monomial(lam, qp(1), ev({1, 0}))), 8);
        const QuantumYVariable v{0, ev({0, 1}), t};
        const QuantumYVariable unit = qy_pointed(ts_one(lam, 8));
        CHECK(qy_eq(qy_mul(v, qy_inverse(v)), unit));
        CHECK(qy_eq(qy_mul(qy_inverse(v), v), unit));
        CHECK(qy_eq(qy_pow(v, 0), unit));
        CHECK(qy_eq(qy_pow(v, 2), qy_mul(v, v)));
        CHECK_THROWS_AS(qy_pow(v, -1), DomainError);
        // Full expansion: Y^(0,1) (1 + q Y^(1,0)) = Y^(0,1) + Y^(1,1).
        CHECK(qt_eq(qy_full(v), qt_add(qt_monomial(lam, qp(0), ev({0, 1})),
                                       qt_monomial(lam, qp(0), ev({1, 1})))));
    }

    SECTION("lead signs are strict") {
        CHECK(lead_sign(ev({1, 0})) == 1);
        CHECK(lead_sign(ev({0, 2})) == 1);
        CHECK(lead_sign(ev({-1, -2})) == -1);
        CHECK_THROWS_AS(lead_sign(ev({1, -1})), FalsificationError);
        CHECK_THROWS_AS(lead_sign(ev({0, 0})), FalsificationError);
    }
}

TEST_CASE("rank two quantum mutation run") {
    const ExchangeMatrix b0 = a2();
    const ZMat lam = pairing_matrix(b0);
    const long N = 8;
    const auto mono = [&](std::int64_t k, Expvec v) { return qt_monomial(lam, qp(k), std::move(v)); };
    const QuantumTorusElement one = qt_one(lam);
    const QuantumTorusElement Y1 = mono(0, ev({1, 0}));
    const QuantumTorusElement Y2 = mono(0, ev({0, 1}));
    const QuantumTorusElement Y1i = qt_inverse_monomial(Y1);
    const QuantumTorusElement Y2i = qt_inverse_monomial(Y2);

    const QuantumYSeed s0 = quantum_initial_seed(b0, N);
    const QuantumYSeed s1 = mutate_quantum_y(s0, 0);
    const QuantumYSeed s2 = mutate_quantum_y(s1, 1);
    const QuantumYSeed s3 = mutate_quantum_y(s2, 0);
    const QuantumYSeed s4 = mutate_quantum_y(s3, 1);
    const QuantumYSeed s5 = mutate_quantum_y(s4, 0);

    SECTION("hand-computed seeds along the pentagon") {
        // Step one: Y1 -> Y1^{-1}, Y2 -> Y2 (1 + q Y1).
        CHECK(qt_eq(qy_full(s1.y[0]), Y1i));
        CHECK(qt_eq(qy_full(s1.y[1]),
                    qt_mul(Y2, qt_add(one, qt_scale(Y1, qp(1))))));
        CHECK(s1.y[1].qpow == 0);
        CHECK(s1.y[1].cvec == ev({0, 1}));
        CHECK(ts_eq(s1.y[1].tail, ts_make(qt_add(one, mono(1, ev({1, 0}))), N)));

        // Step two: Y1 -> Y1^{-1} (1 + q Y2 + Y1 Y2), Y2 -> Y2^{-1} (1 + q^{-1} Y1)^{-1}.
        const QuantumTorusElement inner =
            qt_add(qt_add(one, qt_scale(Y2, qp(1))), qt_mul(Y1, Y2));
        CHECK(qt_eq(qy_full(s2.y[0]), qt_mul(Y1i, inner)));
        const TruncatedSeries f2 = ts_make(qt_add(one, qt_scale(Y1, qp(-1))), N);
        CHECK(qt_eq(qy_full(s2.y[1]), qt_mul(Y2i, series_inverse(f2).elem)));

        // Step three inverts both step-two variables.  The first becomes
        // (1 + q Y2 + Y1 Y2)^{-1} Y1; writing the series left of the lead
        // is what keeps its q powers unshifted.
        CHECK(qt_eq(qy_full(s3.y[0]),
                    qt_mul(series_inverse(ts_make(inner, N)).elem, Y1)));
        CHECK(qt_eq(qy_full(s3.y[1]),
                    qt_scale(qt_mul(qt_mul(Y1i, Y2i), qt_add(one, qt_scale(Y2, qp(1)))),
                             qp(-1))));

        // Step four: Y1 -> Y2^{-1}, Y2 -> q^{-1} Y1 Y2 (1 + q^{-1} Y2)^{-1}.
        // The second is the inverse of the step-three value; at q = 1 it
        // collapses to the classical y1 y2 (1 + y2)^{-1}.
        CHECK(qt_eq(qy_full(s4.y[0]), Y2i));
        const TruncatedSeries f4 = ts_make(qt_add(one, qt_scale(Y2, qp(-1))), N);
        CHECK(qt_eq(qy_full(s4.y[1]),
                    qt_scale(qt_mul(qt_mul(Y1, Y2), series_inverse(f4).elem),
                             qp(-1))));

        // Step five closes the half period: the variables return as units
        // and the exchange matrix comes back with the two labels swapped.
        CHECK(qy_eq(s5.y[0], qy_unit(lam, 1, N)));
        CHECK(qy_eq(s5.y[1], qy_unit(lam, 0, N)));
        CHECK(s5.b.mat() == zm({{0, 1}, {-1, 0}}));
    }

    SECTION("tropical leads along the pentagon") {
        CHECK(tropical_quantum_y(s0, 0).cvec == ev({1, 0}));
        CHECK(tropical_quantum_y(s1, 1).cvec == ev({0, 1}));
        const TropicalLead l2 = tropical_quantum_y(s2, 0);
        CHECK(l2.qpow == 0);
        CHECK(l2.cvec == ev({-1, 0}));
        // [Y2(3)] = q^{-1} Y1^{-1} Y2^{-1}, with the q-power exactly zero
        // in the Weyl-ordered basis.
        const TropicalLead l3 = tropical_quantum_y(s3, 1);
        CHECK(qt_eq(mono(l3.qpow, l3.cvec),
                    qt_scale(qt_mul(Y1i, Y2i), qp(-1))));
        CHECK(l3.qpow == 0);
        CHECK(l3.cvec == ev({-1, -1}));
        const TropicalLead l4 = tropical_quantum_y(s4, 0);
        CHECK(l4.qpow == 0);
        CHECK(l4.cvec == ev({0, -1}));
        CHECK_THROWS_AS(tropical_quantum_y(s0, 2), DomainError);
    }

    SECTION("commutative specialization matches the classical series") {
        const std::vector<std::size_t> seq{0, 1, 0, 1, 0};
        const auto snaps = classical_y_series(b0, seq, N);
        std::vector<QuantumYSeed> run{s0, s1, s2, s3, s4, s5};
        REQUIRE(snaps.size() == run.size());
        for (std::size_t t = 0; t < run.size(); ++t)
            for (std::size_t i = 0; i < 2; ++i)
                CHECK(qy_at_one(run[t].y[i]) == snaps[t][i]);
    }
}

TEST_CASE("leads follow the c-matrix") {
    SECTION("pentagon run") {
        QuantumYSeed s = quantum_initial_seed(a2(), 8);
        ClusterPattern pat(a2(), false);
        for (const std::size_t k : {0, 1, 0, 1, 0}) {
            CHECK(lead_sign(s.y[k].cvec) == pat.tropical_sign(k));
            s = mutate_quantum_y(s, k);
            pat.mutate(k);
            for (std::size_t i = 0; i < 2; ++i) {
                const auto cv = pat.c_vector(i);
                for (std::size_t r = 0; r < cv.size(); ++r)
                    CHECK(Zi(s.y[i].cvec[r]) == cv[r]);
            }
        }
    }

    SECTION("level two quiver run") {
        // Leads are independent of the truncation order, so a small order
        // keeps the tails cheap while the full period is exercised.
        const YsystemQuiver q(dynkin_a(3), 2);
        const ExchangeMatrix b0(q.b());
        QuantumYSeed s = quantum_initial_seed(b0, 2);
        ClusterPattern pat(b0, false);
        const auto seq = flatten_forward(q, q.full_period());
        for (const std::size_t k : seq) {
            CHECK(lead_sign(s.y[k].cvec) == pat.tropical_sign(k));
            s = mutate_quantum_y(s, k);
            pat.mutate(k);
            for (std::size_t i = 0; i < q.size(); ++i) {
                const auto cv = pat.c_vector(i);
                for (std::size_t r = 0; r < cv.size(); ++r)
                    CHECK(Zi(s.y[i].cvec[r]) == cv[r]);
            }
        }
        // The full period returns every lead to its own unit vector.
        for (std::size_t i = 0; i < q.size(); ++i) {
            CHECK(s.y[i].qpow == 0);
            CHECK(s.y[i].cvec == unit_expvec(q.size(), i));
        }
    }

    SECTION("random runs stay sign-coherent") {
        Rng rng(0x1eadu);
        for (int rep = 0; rep < 10; ++rep) {
            const std::size_t n = 2 + rng.below(3);
            const ExchangeMatrix b0 = random_skew(rng, n);
            QuantumYSeed s = quantum_initial_seed(b0, 2);
            ClusterPattern pat(b0, false);
            for (int step = 0; step < 6; ++step) {
                const std::size_t k = rng.below(n);
                CHECK(lead_sign(s.y[k].cvec) == pat.tropical_sign(k));
                s = mutate_quantum_y(s, k);
                pat.mutate(k);
                for (std::size_t i = 0; i < n; ++i) {
                    const auto cv = pat.c_vector(i);
                    for (std::size_t r = 0; r < cv.size(); ++r)
                        CHECK(Zi(s.y[i].cvec[r]) == cv[r]);
                }
            }
        }
    }

    SECTION("commutative limit of the level two run") {
        const YsystemQuiver q(dynkin_a(3), 2);
        const ExchangeMatrix b0(q.b());
        const auto seq = flatten_forward(q, 2);
        const auto snaps = classical_y_series(b0, seq, 3);
        QuantumYSeed s = quantum_initial_seed(b0, 3);
        for (std::size_t i = 0; i < q.size(); ++i)
            CHECK(qy_at_one(s.y[i]) == snaps[0][i]);
        for (std::size_t t = 0; t < seq.size(); ++t) {
            s = mutate_quantum_y(s, seq[t]);
            for (std::size_t i = 0; i < q.size(); ++i)
                CHECK(qy_at_one(s.y[i]) == snaps[t + 1][i]);
        }
    }
}

TEST_CASE("adjoint action of the quantum dilogarithm") {
    SECTION("rank two, both sign branches") {
        QuantumYSeed s = quantum_initial_seed(a2(), 6);
        const QuantumReport r0 = adjoint_action_check(s, 0);
        CHECK(r0.pass);
        CHECK(r0.id == "adjoint");
        CHECK(r0.detail == "verified to order 6");
        CHECK(adjoint_action_check(s, 1).pass);
        // After two steps the lead of variable zero is negative.
        s = mutate_quantum_y(mutate_quantum_y(s, 0), 1);
        CHECK(lead_sign(s.y[0].cvec) == -1);
        CHECK(adjoint_action_check(s, 0).pass);
        CHECK(adjoint_action_check(s, 1).pass);
    }

    SECTION("vanishing exchange entries give a trivial action") {
        const ExchangeMatrix zero(zm({{0, 0}, {0, 0}}));
        CHECK(adjoint_action_check(quantum_initial_seed(zero, 6), 0).pass);
        // A rank three path quiver has a genuinely absent arrow 0 - 2.
        const ExchangeMatrix path(zm({{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}}));
        const QuantumYSeed s = quantum_initial_seed(path, 4);
        CHECK(adjoint_action_check(s, 0).pass);
        CHECK(adjoint_action_check(s, 1).pass);
        CHECK(adjoint_action_check(s, 2).pass);
        CHECK_THROWS_AS(adjoint_action_check(s, 3), DomainError);
    }

    SECTION("along a random run") {
        Rng rng(0xad01u);
        const ExchangeMatrix b0 = random_skew(rng, 3);
        QuantumYSeed s = quantum_initial_seed(b0, 4);
        for (int step = 0; step < 4; ++step) {
            const std::size_t k = rng.below(3);
            CHECK(adjoint_action_check(s, k).pass);
            s = mutate_quantum_y(s, k);
        }
    }
}

TEST_CASE("quantum dilogarithm identities along periods") {
    SECTION("pentagon product by hand") {
        const ZMat lam = pairing_matrix(a2());
        const TruncatedSeries p1 = psi_expand(lam, 0, ev({1, 0}), 8);
        const TruncatedSeries p2 = psi_expand(lam, 0, ev({0, 1}), 8);
        const TruncatedSeries p12 = psi_expand(lam, 0, ev({1, 1}), 8);
        TruncatedSeries prod = ts_mul(p1, p2);
        prod = ts_mul(prod, series_inverse(p1));
        prod = ts_mul(prod, series_inverse(p12));
        prod = ts_mul(prod, series_inverse(p2));
        CHECK(ts_eq(prod, ts_one(lam, 8)));
    }

    SECTION("pentagon through the certified machinery") {
        const QuantumReport r = verify_qdi(a2(), {0, 1, 0, 1, 0}, 8);
        CHECK(r.pass);
        CHECK(r.id == "qdi");
        CHECK(r.order == 8);
        CHECK(r.detail == "verified to order 8");
    }

    SECTION("involutive sequences cancel trivially") {
        const QuantumReport r = verify_qdi(a2(), {0, 0}, 8);
        CHECK(r.pass);
    }

    SECTION("uncertified sequences are rejected") {
        CHECK_THROWS_AS(verify_qdi(a2(), {0}, 8), DomainError);
        CHECK_THROWS_AS(verify_qdi(a2(), {0, 1}, 8), DomainError);
    }

    SECTION("rank two level quiver over its full period") {
        const YsystemQuiver q(dynkin_a(2), 2);
        const auto seq = flatten_forward(q, q.full_period());
        const QuantumReport r = verify_qdi(ExchangeMatrix(q.b()), seq, 8);
        CHECK(r.pass);
        CHECK(r.detail == "verified to order 8");
    }

    SECTION("level two quiver on three nodes over its full period") {
        const YsystemQuiver q(dynkin_a(3), 2);
        const auto seq = flatten_forward(q, q.full_period());
        const QuantumReport r = verify_qdi(ExchangeMatrix(q.b()), seq, 6);
        CHECK(r.pass);
        CHECK(r.detail == "verified to order 6");
    }
}
