#pragma once

// Seeds (B, x, y) over a coefficient semifield SF. Mutation evaluates
// both sign expressions of every exchange relation and requires them to
// agree, so each step certifies its own sign-independence.
//
// Cluster variables are Laurent polynomials in the initial x whose
// coefficients live in the fraction field of the initial y; divisions in
// the exchange relation must therefore be exact, which is checked.

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "ctrop/error.hpp"
#include "ctrop/exchange.hpp"
#include "ctrop/semifield.hpp"
#include "ctrop/xlaurent.hpp"

namespace ctrop {

// Lift an n-variable rational function in y to nx + n variables with
// the y-block placed after the x-block.
inline RationalFunction lift_coefficients(const RationalFunction& c, std::size_t nx) {
    const std::size_t n = nx + c.nvars();
    auto lift = [&](const LaurentPoly& p) {
        LaurentPoly r(n);
        for (const auto& [e, q] : p.terms()) {
            Expvec f(n, 0);
            for (std::size_t i = 0; i < e.size(); ++i) f[nx + i] = e[i];
            r = r + LaurentPoly::monomial(std::move(f), q);
        }
        return r;
    };
    return RationalFunction(lift(c.num()), lift(c.den()));
}

template <typename SF>
class Seed {
public:
    using Elem = typename SF::Elem;

    explicit Seed(ExchangeMatrix b, bool with_x = true)
        : b_(std::move(b)), with_x_(with_x) {
        const std::size_t n = b_.rank();
        for (std::size_t i = 0; i < n; ++i) y_.push_back(SF::generator(n, i));
        if (with_x_)
            for (std::size_t i = 0; i < n; ++i) x_.push_back(XLaurent::generator(n, n, i));
    }

    Seed(ExchangeMatrix b, std::vector<Elem> y, bool with_x = true)
        : b_(std::move(b)), y_(std::move(y)), with_x_(with_x) {
        const std::size_t n = b_.rank();
        check_domain(y_.size() == n, "coefficient tuple size mismatch");
        if (with_x_) {
            check_domain(SF::embed(y_.front()).nvars() == n,
                         "coefficient semifield does not embed; track y only");
            for (std::size_t i = 0; i < n; ++i) x_.push_back(XLaurent::generator(n, n, i));
        }
    }

    std::size_t rank() const { return b_.rank(); }
    const ExchangeMatrix& b() const { return b_; }
    const std::vector<Elem>& y() const { return y_; }
    const Elem& y(std::size_t i) const { return y_[i]; }
    bool tracks_x() const { return with_x_; }
    const std::vector<XLaurent>& x() const {
        check(with_x_, "seed does not track x-variables");
        return x_;
    }
    const XLaurent& x(std::size_t i) const {
        check(with_x_, "seed does not track x-variables");
        return x_[i];
    }
    const std::vector<std::size_t>& history() const { return history_; }

    // False once the cluster outgrew the redundant yhat bookkeeping.
    bool yhat_checked() const { return yhat_live_; }

    // Hatted coefficient as a rational function in the flat (x, y)
    // variables. While the cluster stays small it is maintained by its
    // own exchange relation and checked against recomputation after
    // every mutation; past the bookkeeping budget it is derived from
    // (y, x, B) on demand instead, since the redundant copy would cost
    // more than the mutation itself.
    RationalFunction yhat(std::size_t i) const {
        check(with_x_, "seed does not track x-variables");
        if (yhat_live_) return yhat_[i];
        auto [num, den] = yhat_parts(i);
        return num.flatten() / den.flatten();
    }

    // Numerator and denominator of y_k * prod_j x_j^{b_jk}, both
    // polynomial in the current cluster.
    std::pair<XLaurent, XLaurent> yhat_parts(std::size_t k) const {
        check(with_x_, "seed does not track x-variables");
        const std::size_t n = rank();
        const RationalFunction ye = SF::embed(y_[k]);
        XLaurent num = XLaurent::constant(n, RationalFunction::from_poly(ye.num()));
        XLaurent den = XLaurent::constant(n, RationalFunction::from_poly(ye.den()));
        for (std::size_t j = 0; j < n; ++j) {
            const std::int64_t bjk = zi_to_i64(b_.at(j, k));
            if (bjk > 0) num = num * x_[j].pow(static_cast<std::uint64_t>(bjk));
            if (bjk < 0) den = den * x_[j].pow(static_cast<std::uint64_t>(-bjk));
        }
        return {std::move(num), std::move(den)};
    }

    void mutate(std::size_t k) {
        const std::size_t n = rank();
        check_domain(k < n, "mutation index out of range");

        std::vector<Elem> ynew;
        ynew.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) {
                ynew.push_back(SF::inv(y_[k]));
                continue;
            }
            const std::int64_t bki = zi_to_i64(b_.at(k, i));
            const Elem plus = mutated_y(i, k, bki, 1);
            const Elem minus = mutated_y(i, k, bki, -1);
            check(SF::eq(plus, minus), "y mutation differed between sign expressions");
            ynew.push_back(plus);
        }

        if (with_x_) {
            const XLaurent plus = mutated_xk(k, 1);
            const XLaurent minus = mutated_xk(k, -1);
            check(plus == minus, "x mutation differed between sign expressions");

            if (yhat_live_) {
                std::vector<RationalFunction> hnew = mutated_yhat(k, 1);
                check(hnew == mutated_yhat(k, -1),
                      "yhat mutation differed between sign expressions");
                yhat_ = std::move(hnew);
            }
            x_[k] = plus;
        }

        y_ = std::move(ynew);
        b_ = b_.mutated(k);
        history_.push_back(k);

        if (with_x_ && yhat_live_) {
            check(yhat_ == recomputed_yhat(),
                  "mutated yhat disagrees with its defining product");
            if (cluster_weight() > yhat_budget) {
                yhat_live_ = false;
                yhat_.clear();
            }
        }
    }

    void mutate_sequence(const std::vector<std::size_t>& ks) {
        for (auto k : ks) mutate(k);
    }

    // Labeled-seed equality; for SF with nontrivial witnesses, y-equality
    // is semantic while x-equality is structural on canonical forms.
    bool same_labeled_seed(const Seed& o) const {
        if (!(b_ == o.b_) || with_x_ != o.with_x_) return false;
        for (std::size_t i = 0; i < rank(); ++i)
            if (!SF::eq(y_[i], o.y_[i])) return false;
        return x_ == o.x_;
    }

private:
    Elem mutated_y(std::size_t i, std::size_t k, std::int64_t bki, int eps) const {
        const std::size_t n = rank();
        // y_i y_k^{[eps b_ki]+} (1 (+) y_k^eps)^{-b_ki}
        const Elem r = SF::mul(y_[i], SF::pow(y_[k], std::max<std::int64_t>(eps * bki, 0)));
        const Elem onep = SF::add(SF::one(n), SF::pow(y_[k], eps));
        return SF::mul(r, SF::pow(onep, -bki));
    }

    // The hatted coefficients satisfy the y exchange relation with
    // addition taken in the ambient field.
    std::vector<RationalFunction> mutated_yhat(std::size_t k, int eps) const {
        const std::size_t n = rank();
        const RationalFunction one = RationalFunction::constant(2 * n, 1);
        const RationalFunction onep = one + yhat_[k].pow(eps);
        std::vector<RationalFunction> r;
        r.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) {
                r.push_back(yhat_[k].inverse());
                continue;
            }
            const std::int64_t bki = zi_to_i64(b_.at(k, i));
            r.push_back(yhat_[i] * yhat_[k].pow(std::max<std::int64_t>(eps * bki, 0)) *
                        onep.pow(-bki));
        }
        return r;
    }

    std::vector<RationalFunction> recomputed_yhat() const {
        const std::size_t n = rank();
        std::vector<RationalFunction> r;
        r.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            RationalFunction h = lift_coefficients(SF::embed(y_[i]), n);
            for (std::size_t j = 0; j < n; ++j) {
                const std::int64_t bji = zi_to_i64(b_.at(j, i));
                if (bji != 0) h = h * x_[j].flatten().pow(bji);
            }
            r.push_back(std::move(h));
        }
        return r;
    }

    XLaurent mutated_xk(std::size_t k, int eps) const {
        const std::size_t n = rank();
        auto [yn, yd] = yhat_parts(k);
        // 1 + yhat_k^eps = (yn + yd) / (eps == 1 ? yd : yn)
        const XLaurent ysum = yn + yd;
        const XLaurent& yh_den = eps == 1 ? yd : yn;
        // 1 (+) y_k^eps in the coefficient semifield.
        const RationalFunction s =
            SF::embed(SF::add(SF::one(n), SF::pow(y_[k], eps)));
        XLaurent numer = ysum.scaled(RationalFunction::from_poly(s.den()));
        for (std::size_t j = 0; j < n; ++j) {
            const std::int64_t bjk = zi_to_i64(b_.at(j, k));
            const std::int64_t e = std::max<std::int64_t>(-eps * bjk, 0);
            if (e > 0) numer = numer * x_[j].pow(static_cast<std::uint64_t>(e));
        }
        const XLaurent denom =
            (x_[k] * yh_den).scaled(RationalFunction::from_poly(s.num()));
        return numer.exact_div(denom);
    }

    // Total terms held by the cluster variables and the redundant yhat
    // copy; the budget is a deterministic cutoff, so identical runs
    // retire the bookkeeping at identical points.
    std::size_t cluster_weight() const {
        std::size_t w = 0;
        for (const auto& xi : x_) w += xi.num_terms();
        for (const auto& h : yhat_)
            w += h.num().num_terms() + h.den().num_terms();
        return w;
    }

    static constexpr std::size_t yhat_budget = 4096;

    ExchangeMatrix b_;
    std::vector<Elem> y_;
    std::vector<XLaurent> x_;
    std::vector<RationalFunction> yhat_;
    std::vector<std::size_t> history_;
    bool with_x_ = true;
    bool yhat_live_ = true;
};

} // namespace ctrop
