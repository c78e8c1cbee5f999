#pragma once

// Simply-laced Dynkin diagram data: adjacency, Coxeter number, dimension of
// the associated simple Lie algebra, a bipartite coloring, and the diagram
// involution induced by the longest Weyl group element.

#include <cstddef>
#include <string>
#include <vector>

#include "ctrop/error.hpp"

namespace ctrop {

struct DynkinData {
    char family = 'A';
    std::size_t rank = 1;
    long coxeter = 2;
    long dim_lie = 3;
    std::vector<std::vector<std::size_t>> adj;  // 0-based adjacency lists
    std::vector<int> color;                     // proper 2-coloring, color[0] = +1
    std::vector<std::size_t> involution;        // diagram involution omega

    std::string name() const { return family + std::to_string(rank); }
};

namespace detail {

// Proper 2-coloring of a tree, +1 at vertex 0.
inline std::vector<int> bipartite_color(const std::vector<std::vector<std::size_t>>& adj) {
    std::vector<int> color(adj.size(), 0);
    std::vector<std::size_t> stack = {0};
    color[0] = 1;
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t w : adj[v])
            if (color[w] == 0) {
                color[w] = -color[v];
                stack.push_back(w);
            }
    }
    return color;
}

inline std::vector<std::vector<std::size_t>> path_graph(std::size_t n) {
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        adj[i].push_back(i + 1);
        adj[i + 1].push_back(i);
    }
    return adj;
}

} // namespace detail

inline DynkinData dynkin_a(std::size_t n) {
    check_domain(n >= 1, "type A requires rank at least 1");
    DynkinData d;
    d.family = 'A';
    d.rank = n;
    d.coxeter = static_cast<long>(n) + 1;
    d.dim_lie = static_cast<long>(n) * (static_cast<long>(n) + 2);
    d.adj = detail::path_graph(n);
    d.color = detail::bipartite_color(d.adj);
    for (std::size_t a = 0; a < n; ++a) d.involution.push_back(n - 1 - a);
    return d;
}

inline DynkinData dynkin_d(std::size_t n) {
    check_domain(n >= 4, "type D requires rank at least 4");
    DynkinData d;
    d.family = 'D';
    d.rank = n;
    d.coxeter = 2 * static_cast<long>(n) - 2;
    d.dim_lie = static_cast<long>(n) * (2 * static_cast<long>(n) - 1);
    // Path 0..n-3 with both tips n-2, n-1 attached to n-3.
    d.adj = detail::path_graph(n - 2);
    d.adj.resize(n);
    for (std::size_t tip : {n - 2, n - 1}) {
        d.adj[n - 3].push_back(tip);
        d.adj[tip].push_back(n - 3);
    }
    d.color = detail::bipartite_color(d.adj);
    for (std::size_t a = 0; a < n; ++a) d.involution.push_back(a);
    if (n % 2 == 1) std::swap(d.involution[n - 2], d.involution[n - 1]);
    return d;
}

inline DynkinData dynkin_e(std::size_t n) {
    check_domain(n >= 6 && n <= 8, "type E requires rank 6, 7, or 8");
    DynkinData d;
    d.family = 'E';
    d.rank = n;
    d.coxeter = n == 6 ? 12 : n == 7 ? 18 : 30;
    d.dim_lie = n == 6 ? 78 : n == 7 ? 133 : 248;
    // Path 0..n-2 with the branch vertex n-1 attached to vertex 2.
    d.adj = detail::path_graph(n - 1);
    d.adj.resize(n);
    d.adj[2].push_back(n - 1);
    d.adj[n - 1].push_back(2);
    d.color = detail::bipartite_color(d.adj);
    for (std::size_t a = 0; a < n; ++a) d.involution.push_back(a);
    if (n == 6) {
        // The order-2 automorphism flips the path and fixes the branch.
        std::swap(d.involution[0], d.involution[4]);
        std::swap(d.involution[1], d.involution[3]);
    }
    return d;
}

// Parse names like "A3", "D4", "E6". Anything outside A/D/E is rejected.
inline DynkinData dynkin_from_name(const std::string& name) {
    check_domain(name.size() >= 2, "diagram name must be a letter followed by a rank");
    const char family = name[0];
    std::size_t rank = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
        check_domain(name[i] >= '0' && name[i] <= '9', "malformed diagram rank");
        rank = rank * 10 + static_cast<std::size_t>(name[i] - '0');
    }
    switch (family) {
        case 'A': return dynkin_a(rank);
        case 'D': return dynkin_d(rank);
        case 'E': return dynkin_e(rank);
        default:
            throw DomainError("only simply-laced diagrams (types A, D, E) are supported");
    }
}

} // namespace ctrop
