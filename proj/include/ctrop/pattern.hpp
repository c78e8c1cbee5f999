#pragma once

// Mutation bookkeeping: the C-, G-, and F-data of a mutation path,
// maintained alongside a principal-coefficient seed. Every update is
// computed from at least two independent formulations (entrywise with
// both signs, entrywise with the tropical sign, and as multiplication by
// an elementary matrix) and the results are required to agree, so a run
// that completes is itself a certificate.
//
// Sign-coherence of the C-matrix columns is assumed by the tropical-sign
// forms; it is checked on every access and a violation raises
// FalsificationError rather than being patched over.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ctrop/error.hpp"
#include "ctrop/exchange.hpp"
#include "ctrop/matrix.hpp"
#include "ctrop/seed.hpp"
#include "ctrop/semifield.hpp"

namespace ctrop {

// Sign of the k-th column of c. Columns of a C-matrix are nonzero with
// all entries of one sign; that is conjecture-backed, so failures are
// falsifications, not domain errors.
inline int column_sign(const ZMat& c, std::size_t k) {
    int sign = 0;
    for (std::size_t i = 0; i < c.rows(); ++i) {
        const Zi& v = c.at(i, k);
        if (v == 0) continue;
        const int s = v > 0 ? 1 : -1;
        check_conjecture(sign == 0 || sign == s,
                         "sign-coherence violated: mixed signs in a c-vector");
        sign = s;
    }
    check_conjecture(sign != 0, "sign-coherence violated: zero c-vector");
    return sign;
}

// C-matrix update, entrywise, valid for either sign choice.
inline ZMat mutated_c(const ZMat& c, const ZMat& b, std::size_t k, int eps) {
    const std::size_t n = c.rows();
    ZMat r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            r.at(i, j) = j == k ? -c.at(i, k)
                                : c.at(i, j) + c.at(i, k) * zi_pos(eps * b.at(k, j)) +
                                      zi_pos(-eps * c.at(i, k)) * b.at(k, j);
    return r;
}

// C-matrix update with eps fixed to the tropical sign at k; one of the
// two correction terms then vanishes.
inline ZMat mutated_c_short(const ZMat& c, const ZMat& b, std::size_t k, int eps_k) {
    const std::size_t n = c.rows();
    ZMat r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            r.at(i, j) = j == k ? -c.at(i, k)
                                : c.at(i, j) + c.at(i, k) * zi_pos(eps_k * b.at(k, j));
    return r;
}

// G-matrix update, entrywise, valid for either sign choice. Needs the
// initial exchange matrix and the current C-matrix.
inline ZMat mutated_g(const ZMat& g, const ZMat& b0, const ZMat& c, const ZMat& b,
                      std::size_t k, int eps) {
    const std::size_t n = g.rows();
    ZMat r = g;
    for (std::size_t i = 0; i < n; ++i) {
        Zi v = -g.at(i, k);
        for (std::size_t l = 0; l < n; ++l) {
            v += g.at(i, l) * zi_pos(-eps * b.at(l, k));
            v -= b0.at(i, l) * zi_pos(-eps * c.at(l, k));
        }
        r.at(i, k) = v;
    }
    return r;
}

// G-matrix update with eps fixed to the tropical sign at k; the C-term
// then vanishes.
inline ZMat mutated_g_short(const ZMat& g, const ZMat& b, std::size_t k, int eps_k) {
    const std::size_t n = g.rows();
    ZMat r = g;
    for (std::size_t i = 0; i < n; ++i) {
        Zi v = -g.at(i, k);
        for (std::size_t l = 0; l < n; ++l) v += g.at(i, l) * zi_pos(-eps_k * b.at(l, k));
        r.at(i, k) = v;
    }
    return r;
}

// Degree of a cluster variable under the grading deg x_j = e_j,
// deg y_j = -(column j of b0). Requires the variable to be homogeneous,
// which is part of what the G-matrix means.
inline std::vector<Zi> grading_degree(const XLaurent& x, const ZMat& b0) {
    const std::size_t n = b0.rows();
    std::optional<std::vector<Zi>> deg;
    for (const auto& [xe, c] : x.terms()) {
        check(c.den().is_monomial(),
              "cluster variable has a non-monomial coefficient denominator");
        const Expvec& wd = c.den().terms().begin()->first;
        for (const auto& [w, q] : c.num().terms()) {
            std::vector<Zi> d(n);
            for (std::size_t i = 0; i < n; ++i) d[i] = xe[i];
            for (std::size_t j = 0; j < n; ++j) {
                const Zi wj = Zi(w[j]) - Zi(wd[j]);
                if (wj == 0) continue;
                for (std::size_t i = 0; i < n; ++i) d[i] -= b0.at(i, j) * wj;
            }
            if (!deg)
                deg = std::move(d);
            else
                check(*deg == d, "cluster variable is not grading-homogeneous");
        }
    }
    check(deg.has_value(), "grading degree of zero");
    return *deg;
}

class ClusterPattern {
public:
    explicit ClusterPattern(ExchangeMatrix b0, bool with_x = true)
        : b0_(b0),
          bcur_(b0),
          cmat_(ZMat::identity(b0.rank())),
          gmat_(ZMat::identity(b0.rank())),
          principal_(std::move(b0), with_x),
          with_x_(with_x) {}

    std::size_t rank() const { return b0_.rank(); }
    const ExchangeMatrix& initial_b() const { return b0_; }
    const ExchangeMatrix& current_b() const { return bcur_; }
    const ZMat& c_matrix() const { return cmat_; }
    const ZMat& g_matrix() const { return gmat_; }
    const Seed<TropicalSF>& principal_seed() const { return principal_; }
    const std::vector<std::size_t>& history() const { return history_; }
    bool tracks_x() const { return with_x_; }

    std::vector<Zi> c_vector(std::size_t i) const { return cmat_.column(i); }
    std::vector<Zi> g_vector(std::size_t i) const { return gmat_.column(i); }

    // Sign of the k-th c-vector; enforces sign-coherence.
    int tropical_sign(std::size_t k) const { return column_sign(cmat_, k); }

    LaurentPoly f_polynomial(std::size_t i) const {
        check(with_x_, "pattern does not track x-variables");
        const RationalFunction f = principal_.x(i).at_x_ones();
        check(f.is_laurent(), "coefficient specialization is not a polynomial");
        return f.as_laurent();
    }

    std::vector<LaurentPoly> f_polynomials() const {
        std::vector<LaurentPoly> fs;
        for (std::size_t i = 0; i < rank(); ++i) fs.push_back(f_polynomial(i));
        return fs;
    }

    void mutate(std::size_t k) {
        const std::size_t n = rank();
        check_domain(k < n, "mutation index out of range");
        const ZMat& bp = bcur_.mat();
        const int ek = tropical_sign(k);

        ZMat cnew = mutated_c(cmat_, bp, k, 1);
        check(cnew == mutated_c(cmat_, bp, k, -1),
              "c-matrix update differed between sign expressions");
        check(cnew == mutated_c_short(cmat_, bp, k, ek),
              "c-matrix update differed from its tropical-sign form");

        ZMat gnew = mutated_g(gmat_, b0_.mat(), cmat_, bp, k, 1);
        check(gnew == mutated_g(gmat_, b0_.mat(), cmat_, bp, k, -1),
              "g-matrix update differed between sign expressions");
        check(gnew == mutated_g_short(gmat_, bp, k, ek),
              "g-matrix update differed from its tropical-sign form");

        // Elementary-matrix forms of the same updates.
        const ZMat p = p_matrix(bp, k, ek);
        const ZMat q = q_matrix(bp, k, -ek);
        check(cnew == cmat_ * p, "c-matrix update differed from its matrix form");
        check(gnew == gmat_ * q, "g-matrix update differed from its matrix form");
        check((p * p).is_identity(), "row elementary matrix is not an involution");
        check((q * q).is_identity(), "column elementary matrix is not an involution");

        const ZMat dm = ZMat::diagonal(b0_.symmetrizer());
        check(dm * q == p.transpose() * dm,
              "column form is not the transpose of the row form under the symmetrizer");

        ExchangeMatrix bnew = bcur_.mutated(k);
        check(bnew.mat() == q * bp * p,
              "exchange-matrix update differed from its matrix form");
        check(dm * bnew.mat() == p.transpose() * (dm * bp) * p,
              "skew-symmetric form is not transported by congruence");
        check(p_matrix(bnew.mat(), k, -ek) == p,
              "row elementary matrix changed across the mutation");

        principal_.mutate(k);

        cmat_ = std::move(cnew);
        gmat_ = std::move(gnew);
        bcur_ = std::move(bnew);
        history_.push_back(k);

        check(tropical_sign(k) == -ek, "tropical sign did not flip at the mutated index");
        check_invariants();
    }

    void mutate_sequence(const std::vector<std::size_t>& ks) {
        for (auto k : ks) mutate(k);
    }

private:
    void check_invariants() const {
        const std::size_t n = rank();

        // Tropical coefficients are exactly the c-vectors.
        for (std::size_t i = 0; i < n; ++i) {
            const Expvec& e = principal_.y(i).exponents();
            for (std::size_t j = 0; j < n; ++j)
                check(Zi(e[j]) == cmat_.at(j, i),
                      "tropical coefficient disagrees with its c-vector");
        }

        // Tropical duality, in integer form.
        const ZMat dm = ZMat::diagonal(b0_.symmetrizer());
        check(gmat_.transpose() * dm * cmat_ == dm,
              "tropical duality failed: g- and c-matrices are not dual");

        if (!with_x_) return;
        const Expvec zero(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const LaurentPoly f = f_polynomial(i);
            check(f.has_nonneg_exponents(),
                  "coefficient specialization is not a polynomial");
            check_conjecture(f.coeff(zero) == 1,
                             "constant term of an f-polynomial is not 1");
            const std::vector<Zi> deg = grading_degree(principal_.x(i), b0_.mat());
            check(deg == gmat_.column(i),
                  "cluster-variable degree disagrees with its g-vector");
        }
    }

    ExchangeMatrix b0_;
    ExchangeMatrix bcur_;
    ZMat cmat_;
    ZMat gmat_;
    Seed<TropicalSF> principal_;
    std::vector<std::size_t> history_;
    bool with_x_;
};

// Substitute monomial images for the variables of f. images[j] is the
// exponent vector of the image of variable j; all images share an arity.
inline LaurentPoly substitute_monomials(const LaurentPoly& f,
                                        const std::vector<Expvec>& images,
                                        std::size_t nvars_out) {
    LaurentPoly r(nvars_out);
    for (const auto& [w, q] : f.terms()) {
        Expvec e(nvars_out, 0);
        for (std::size_t j = 0; j < f.nvars(); ++j)
            if (w[j] != 0) e = expvec_add(e, expvec_scale(images[j], w[j]));
        r = r + LaurentPoly::monomial(std::move(e), q);
    }
    return r;
}

// Replays a mutation path with universal coefficients and checks the
// separation formulas: every coefficient is a monomial in the initial
// coefficients times a Laurent monomial in f-polynomials, and every
// cluster variable is a Laurent monomial times a ratio of one
// f-polynomial evaluated at the hatted and the plain coefficients.
inline void verify_separation(const ExchangeMatrix& b0,
                              const std::vector<std::size_t>& hist) {
    const std::size_t n = b0.rank();
    ClusterPattern pat(b0, true);
    Seed<UniversalSF> us(b0, true);
    for (auto k : hist) {
        pat.mutate(k);
        us.mutate(k);
    }

    const std::vector<LaurentPoly> fs = pat.f_polynomials();

    for (std::size_t i = 0; i < n; ++i) {
        Expvec ce(n, 0);
        for (std::size_t j = 0; j < n; ++j) ce[j] = zi_to_i64(pat.c_matrix().at(j, i));
        SubtractionFreeRational rhs =
            SubtractionFreeRational::from_poly(LaurentPoly::monomial(std::move(ce), Qi(1)));
        for (std::size_t j = 0; j < n; ++j) {
            const std::int64_t bji = zi_to_i64(pat.current_b().mat().at(j, i));
            if (bji != 0)
                rhs = rhs.mul(SubtractionFreeRational::from_poly(fs[j]).pow(bji));
        }
        check(us.y(i).eq(rhs), "coefficient separation formula failed");
    }

    // Monomial images of the hatted coefficients in the flat (x, y) order.
    std::vector<Expvec> yhat(n);
    for (std::size_t j = 0; j < n; ++j) {
        Expvec e(2 * n, 0);
        for (std::size_t l = 0; l < n; ++l) e[l] = zi_to_i64(b0.mat().at(l, j));
        e[n + j] += 1;
        yhat[j] = std::move(e);
    }
    std::vector<Expvec> yplain(n);
    for (std::size_t j = 0; j < n; ++j) {
        Expvec e(2 * n, 0);
        e[n + j] = 1;
        yplain[j] = std::move(e);
    }

    for (std::size_t i = 0; i < n; ++i) {
        const RationalFunction lhs = us.x(i).flatten();
        Expvec ge(2 * n, 0);
        for (std::size_t l = 0; l < n; ++l) ge[l] = zi_to_i64(pat.g_matrix().at(l, i));
        const RationalFunction rhs =
            RationalFunction::monomial(std::move(ge), Qi(1)) *
            RationalFunction::from_poly(substitute_monomials(fs[i], yhat, 2 * n)) *
            RationalFunction::from_poly(substitute_monomials(fs[i], yplain, 2 * n))
                .inverse();
        check(lhs == rhs, "cluster-variable separation formula failed");
    }
}

} // namespace ctrop
