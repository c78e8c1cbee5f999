#pragma once

// Exchange matrices: square integer matrices B admitting a positive
// integer diagonal D with DB skew-symmetric. The symmetrizer is found by
// ratio propagation over the coupling graph and normalized per connected
// component to the smallest positive integers; mutation keeps it.

#include <cstdint>
#include <vector>

#include "ctrop/error.hpp"
#include "ctrop/matrix.hpp"
#include "ctrop/numbers.hpp"

namespace ctrop {

// Smallest positive integer diagonal making DB skew-symmetric, or an
// empty vector if none exists.
inline std::vector<Zi> find_skew_symmetrizer(const ZMat& b) {
    const std::size_t n = b.rows();
    if (b.cols() != n) return {};
    for (std::size_t i = 0; i < n; ++i) {
        if (b.at(i, i) != 0) return {};
        for (std::size_t j = 0; j < n; ++j) {
            // Opposite corners vanish together and carry opposite signs.
            if ((b.at(i, j) == 0) != (b.at(j, i) == 0)) return {};
            if (b.at(i, j) * b.at(j, i) > 0) return {};
        }
    }
    // d_j / d_i = -b_ij / b_ji on every edge; propagate rationals from a
    // root of each component, then clear denominators per component.
    std::vector<Qi> ratio(n, Qi(0));
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (std::size_t root = 0; root < n; ++root) {
        if (comp[root] >= 0) continue;
        ratio[root] = 1;
        comp[root] = ncomp;
        std::vector<std::size_t> queue{root};
        while (!queue.empty()) {
            const std::size_t i = queue.back();
            queue.pop_back();
            for (std::size_t j = 0; j < n; ++j) {
                if (b.at(i, j) == 0) continue;
                // -b_ij and b_ji have the same sign here, so after this
                // flip both parts are positive, as the constructor needs.
                Zi num = -b.at(i, j);
                Zi den = b.at(j, i);
                if (den < 0) {
                    num = -num;
                    den = -den;
                }
                const Qi rj = ratio[i] * Qi(num, den);
                if (comp[j] < 0) {
                    comp[j] = ncomp;
                    ratio[j] = rj;
                    queue.push_back(j);
                } else if (ratio[j] != rj) {
                    return {};
                }
            }
        }
        ++ncomp;
    }
    // Scale each component to coprime positive integers.
    std::vector<Zi> d(n);
    for (int c = 0; c < ncomp; ++c) {
        Zi l = 1;
        for (std::size_t i = 0; i < n; ++i)
            if (comp[i] == c) l = zi_lcm(l, boost::multiprecision::denominator(ratio[i]));
        Zi g = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (comp[i] == c) {
                d[i] = boost::multiprecision::numerator(ratio[i]) *
                       (l / boost::multiprecision::denominator(ratio[i]));
                g = zi_gcd(g, d[i]);
            }
        for (std::size_t i = 0; i < n; ++i)
            if (comp[i] == c) d[i] /= g;
    }
    // Full verification of the defining identity.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (d[i] * b.at(i, j) != -d[j] * b.at(j, i)) return {};
    return d;
}

// One-sign matrix mutation; independent of eps, which callers verify.
inline ZMat mutate_matrix(const ZMat& b, std::size_t k, int eps) {
    check_domain(k < b.rows(), "mutation index out of range");
    check_domain(eps == 1 || eps == -1, "sign must be +1 or -1");
    const std::size_t n = b.rows();
    ZMat r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == k || j == k)
                r.at(i, j) = -b.at(i, j);
            else
                r.at(i, j) = b.at(i, j) + zi_pos(-eps * b.at(i, k)) * b.at(k, j) +
                             b.at(i, k) * zi_pos(eps * b.at(k, j));
        }
    return r;
}

class ExchangeMatrix {
public:
    explicit ExchangeMatrix(ZMat b) : b_(std::move(b)), d_(find_skew_symmetrizer(b_)) {
        check_domain(!d_.empty(), "matrix is not skew-symmetrizable");
    }

    ExchangeMatrix(ZMat b, std::vector<Zi> d) : b_(std::move(b)), d_(std::move(d)) {
        check_domain(d_.size() == b_.rows() && b_.rows() == b_.cols(),
                     "symmetrizer size mismatch");
        for (const auto& v : d_) check_domain(v > 0, "symmetrizer entries must be positive");
        for (std::size_t i = 0; i < d_.size(); ++i)
            for (std::size_t j = 0; j < d_.size(); ++j)
                check_domain(d_[i] * b_.at(i, j) == -d_[j] * b_.at(j, i),
                             "diagonal does not skew-symmetrize the matrix");
    }

    std::size_t rank() const { return b_.rows(); }
    const ZMat& mat() const { return b_; }
    const std::vector<Zi>& symmetrizer() const { return d_; }
    const Zi& at(std::size_t i, std::size_t j) const { return b_.at(i, j); }

    bool is_skew_symmetric() const { return b_ == -b_.transpose(); }

    // Mutation via both sign expressions; they must coincide, and the
    // symmetrizer survives (revalidated by the constructor).
    ExchangeMatrix mutated(std::size_t k) const {
        ZMat plus = mutate_matrix(b_, k, 1);
        ZMat minus = mutate_matrix(b_, k, -1);
        check(plus == minus, "matrix mutation differed between sign expressions");
        return ExchangeMatrix(std::move(plus), d_);
    }

    bool operator==(const ExchangeMatrix& o) const { return b_ == o.b_ && d_ == o.d_; }

private:
    ZMat b_;
    std::vector<Zi> d_;
};

} // namespace ctrop
