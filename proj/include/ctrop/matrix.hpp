#pragma once

// Small dense matrices over Z for exchange matrices and the C/G matrix
// calculus, including the row/column mutation matrices P and Q.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "ctrop/error.hpp"
#include "ctrop/numbers.hpp"

namespace ctrop {

class ZMat {
public:
    ZMat() = default;
    ZMat(std::size_t rows, std::size_t cols) : nr_(rows), nc_(cols), a_(rows * cols, Zi(0)) {}

    static ZMat identity(std::size_t n) {
        ZMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static ZMat from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r == 0 ? 0 : rows.front().size();
        ZMat m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            check(rows[i].size() == c, "ragged matrix rows");
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    static ZMat diagonal(const std::vector<Zi>& d) {
        ZMat m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return nr_; }
    std::size_t cols() const { return nc_; }

    Zi& at(std::size_t i, std::size_t j) { return a_[i * nc_ + j]; }
    const Zi& at(std::size_t i, std::size_t j) const { return a_[i * nc_ + j]; }

    bool operator==(const ZMat& o) const = default;

    ZMat operator+(const ZMat& o) const {
        check(nr_ == o.nr_ && nc_ == o.nc_, "matrix shape mismatch");
        ZMat r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
        return r;
    }

    ZMat operator-(const ZMat& o) const {
        check(nr_ == o.nr_ && nc_ == o.nc_, "matrix shape mismatch");
        ZMat r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
        return r;
    }

    ZMat operator-() const {
        ZMat r = *this;
        for (auto& v : r.a_) v = -v;
        return r;
    }

    ZMat operator*(const ZMat& o) const {
        check(nc_ == o.nr_, "matrix shape mismatch");
        ZMat r(nr_, o.nc_);
        for (std::size_t i = 0; i < nr_; ++i)
            for (std::size_t k = 0; k < nc_; ++k) {
                const Zi& v = at(i, k);
                if (v == 0) continue;
                for (std::size_t j = 0; j < o.nc_; ++j) r.at(i, j) += v * o.at(k, j);
            }
        return r;
    }

    ZMat transpose() const {
        ZMat r(nc_, nr_);
        for (std::size_t i = 0; i < nr_; ++i)
            for (std::size_t j = 0; j < nc_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    bool is_identity() const {
        if (nr_ != nc_) return false;
        for (std::size_t i = 0; i < nr_; ++i)
            for (std::size_t j = 0; j < nc_; ++j)
                if (at(i, j) != Zi(i == j ? 1 : 0)) return false;
        return true;
    }

    bool is_zero() const {
        for (const auto& v : a_)
            if (v != 0) return false;
        return true;
    }

    std::vector<Zi> column(std::size_t j) const {
        std::vector<Zi> c(nr_);
        for (std::size_t i = 0; i < nr_; ++i) c[i] = at(i, j);
        return c;
    }

    std::vector<Zi> row(std::size_t i) const {
        std::vector<Zi> r(nc_);
        for (std::size_t j = 0; j < nc_; ++j) r[j] = at(i, j);
        return r;
    }

    std::string to_string() const {
        std::ostringstream out;
        out << "[";
        for (std::size_t i = 0; i < nr_; ++i) {
            if (i) out << "; ";
            for (std::size_t j = 0; j < nc_; ++j) {
                if (j) out << " ";
                out << zi_str(at(i, j));
            }
        }
        out << "]";
        return out.str();
    }

private:
    std::size_t nr_ = 0;
    std::size_t nc_ = 0;
    std::vector<Zi> a_;
};

inline Zi zi_pos(const Zi& x) { return x > 0 ? x : Zi(0); }

// Identity with the (k,k) entry flipped to -1.
inline ZMat j_matrix(std::size_t n, std::size_t k) {
    ZMat m = ZMat::identity(n);
    m.at(k, k) = -1;
    return m;
}

// J_k plus the positive part of eps*A restricted to row k.
inline ZMat p_matrix(const ZMat& a, std::size_t k, int eps) {
    check(a.rows() == a.cols(), "square matrix required");
    check_domain(eps == 1 || eps == -1, "sign must be +1 or -1");
    ZMat m = j_matrix(a.rows(), k);
    for (std::size_t j = 0; j < a.cols(); ++j) m.at(k, j) += zi_pos(eps * a.at(k, j));
    return m;
}

// J_k plus the positive part of eps*A restricted to column k.
inline ZMat q_matrix(const ZMat& a, std::size_t k, int eps) {
    check(a.rows() == a.cols(), "square matrix required");
    check_domain(eps == 1 || eps == -1, "sign must be +1 or -1");
    ZMat m = j_matrix(a.rows(), k);
    for (std::size_t i = 0; i < a.rows(); ++i) m.at(i, k) += zi_pos(eps * a.at(i, k));
    return m;
}

} // namespace ctrop
