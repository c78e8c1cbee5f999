#pragma once

// Exact iteration of the level-ell functional recursion attached to a
// simply-laced diagram. Values live on the grid (a, m) with a a diagram
// vertex and 1 <= m <= ell-1; time advances by
//
//   Y[a,m](u-1) * Y[a,m](u+1) = prod_{b ~ a} (1 + Y[b,m](u))
//                             / prod_{m' = m-1, m+1} (1 + Y[a,m'](u)^{-1})
//
// where out-of-range m' contribute a factor 1. Two consecutive time slices
// determine the whole orbit; all arithmetic is exact and subtraction-free,
// so positivity of the initial slices propagates.

#include <cstddef>
#include <utility>
#include <vector>

#include "ctrop/dynkin.hpp"
#include "ctrop/error.hpp"
#include "ctrop/numbers.hpp"

namespace ctrop {

struct YsystemOrbit {
    DynkinData diagram;
    std::size_t level = 2;
    std::vector<std::vector<Qi>> slices; // slices[u][vertex] for u = 0, 1, ...

    std::size_t columns() const { return diagram.rank; }
    std::size_t rows() const { return level - 1; }
    std::size_t size() const { return columns() * rows(); }
    std::size_t vertex(std::size_t a, std::size_t m) const { return (m - 1) * columns() + a; }

    const Qi& value(std::size_t u, std::size_t a, std::size_t m) const {
        return slices[u][vertex(a, m)];
    }
};

// Right-hand side of the recursion at every vertex of one time slice.
inline std::vector<Qi> ysystem_rhs(const DynkinData& X, std::size_t level,
                                   const std::vector<Qi>& slice) {
    const std::size_t n = X.rank;
    std::vector<Qi> out;
    out.reserve(slice.size());
    const auto idx = [&](std::size_t a, std::size_t m) { return (m - 1) * n + a; };
    for (std::size_t m = 1; m < level; ++m)
        for (std::size_t a = 0; a < n; ++a) {
            Qi v(1);
            for (std::size_t b : X.adj[a]) v *= Qi(1) + slice[idx(b, m)];
            // 1/(1 + y^{-1}) = y/(1 + y), applied for each in-range neighbor level
            for (std::size_t mp : {m - 1, m + 1})
                if (mp >= 1 && mp < level) {
                    const Qi& y = slice[idx(a, mp)];
                    v *= y / (Qi(1) + y);
                }
            out.push_back(std::move(v));
        }
    return out;
}

// Extends the two initial slices to slices 0..steps+1.
inline YsystemOrbit ysystem_iterate(const DynkinData& X, std::size_t level,
                                    std::vector<Qi> slice0, std::vector<Qi> slice1,
                                    std::size_t steps) {
    check_domain(level >= 2, "level must be at least 2");
    const std::size_t nv = X.rank * (level - 1);
    check_domain(slice0.size() == nv && slice1.size() == nv, "initial slice size mismatch");
    for (const auto& s : {slice0, slice1})
        for (const Qi& v : s) check_domain(v > 0, "initial values must be positive");

    YsystemOrbit orbit{X, level, {std::move(slice0), std::move(slice1)}};
    for (std::size_t t = 0; t < steps; ++t) {
        const std::vector<Qi> rhs = ysystem_rhs(X, level, orbit.slices.back());
        const std::vector<Qi>& prev = orbit.slices[orbit.slices.size() - 2];
        std::vector<Qi> next;
        next.reserve(nv);
        for (std::size_t v = 0; v < nv; ++v) {
            next.push_back(rhs[v] / prev[v]);
            check(next.back() > 0, "recursion produced a nonpositive value");
        }
        orbit.slices.push_back(std::move(next));
    }
    return orbit;
}

} // namespace ctrop
