#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "ctrop/dynkin.hpp"
#include "ctrop/error.hpp"
#include "ctrop/numbers.hpp"
#include "ctrop/period.hpp"
#include "ctrop/rng.hpp"
#include "ctrop/seed.hpp"
#include "ctrop/semifield.hpp"
#include "ctrop/yiter.hpp"

// Euler and Rogers dilogarithms in double precision, the constant
// Y-system solver, and the numeric verifiers for the dilogarithm sum
// rules attached to periodic mutation sequences.

namespace ctrop {

inline double qi_to_double(const Qi& q) { return q.convert_to<double>(); }

inline constexpr double pi_sq_over_6 = std::numbers::pi * std::numbers::pi / 6.0;

namespace detail {

// Power series sum for |x| <= 1/2; every other argument is folded into
// this range by the reductions in li2 below.
inline double li2_series(double x) {
    double term = x;
    double sum = x;
    for (int n = 2; n < 80; ++n) {
        term *= x;
        const double add = term / (n * static_cast<double>(n));
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum) + 1e-300) break;
    }
    return sum;
}

} // namespace detail

// Euler dilogarithm on (-inf, 1].
inline double li2(double x) {
    check_domain(x <= 1.0, "li2 is only evaluated for arguments at most 1");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return pi_sq_over_6;
    if (x < -1.0) {
        const double lg = std::log(-x);
        return -pi_sq_over_6 - 0.5 * lg * lg - li2(1.0 / x);
    }
    if (x > 0.5) return pi_sq_over_6 - std::log(x) * std::log1p(-x) - li2(1.0 - x);
    if (x < -0.5) {
        const double lg = std::log1p(-x);
        return -0.5 * lg * lg - li2(x / (x - 1.0));
    }
    return detail::li2_series(x);
}

// Rogers dilogarithm on [0, 1], endpoints exact.
inline double rogers_l(double x) {
    check_domain(x >= 0.0 && x <= 1.0, "rogers_l is only evaluated on [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return pi_sq_over_6;
    return li2(x) + 0.5 * std::log(x) * std::log1p(-x);
}

inline double rogers_l(const Qi& x) { return rogers_l(qi_to_double(x)); }

struct DilogReport {
    std::string identity;
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_err = 0.0;
    double tolerance = 0.0;
    std::string sample;
    // Sign counts along the mutation sequence; -1 where not applicable.
    long n_plus = -1;
    long n_minus = -1;

    bool pass() const { return abs_err <= tolerance; }
};

namespace detail {

inline DilogReport make_report(std::string identity, double lhs, double rhs, double tolerance,
                               std::string sample) {
    DilogReport r;
    r.identity = std::move(identity);
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_err = std::abs(lhs - rhs);
    r.tolerance = tolerance;
    r.sample = std::move(sample);
    return r;
}

// Track the worst point of an identity over many samples.
struct WorstCase {
    double lhs = 0.0;
    double rhs = 0.0;
    double err = -1.0;
    std::string sample;

    void offer(double l, double r, std::string s) {
        if (std::abs(l - r) > err) {
            lhs = l;
            rhs = r;
            err = std::abs(l - r);
            sample = std::move(s);
        }
    }
};

inline double unit_interior(Rng& rng) {
    return (1.0 + static_cast<double>(rng.below(999997))) / 999999.0;
}

} // namespace detail

// Random-sample checks of the functional equations relating li2 and
// rogers_l: the defining relation, its negative-argument twin, the
// reflection identity, and both five-term forms.
inline std::vector<DilogReport> verify_functional_identities(std::size_t samples,
                                                             std::uint64_t seed = 20260819u) {
    check_domain(samples >= 1, "at least one sample is required");
    Rng rng(seed);
    const double tol = 1e-11;
    detail::WorstCase defining, negative, reflection, five_term, five_term_product;
    for (std::size_t s = 0; s < samples; ++s) {
        const double x = detail::unit_interior(rng);
        const double y = detail::unit_interior(rng);
        const std::string at = "x=" + std::to_string(x) + ", y=" + std::to_string(y);

        defining.offer(rogers_l(x), li2(x) + 0.5 * std::log(x) * std::log1p(-x), at);

        const double p = 10.0 * x; // any positive argument
        negative.offer(-rogers_l(p / (1.0 + p)), li2(-p) + 0.5 * std::log(p) * std::log1p(p),
                       "x=" + std::to_string(p));

        reflection.offer(rogers_l(x) + rogers_l(1.0 - x), pi_sq_over_6, at);

        const double xy = x * y;
        five_term.offer(rogers_l(x) + rogers_l(y) + rogers_l((1.0 - x) / (1.0 - xy)) +
                            rogers_l(1.0 - xy) + rogers_l((1.0 - y) / (1.0 - xy)),
                        3.0 * pi_sq_over_6, at);
        five_term_product.offer(rogers_l(x) + rogers_l(y),
                                rogers_l(x * (1.0 - y) / (1.0 - xy)) + rogers_l(xy) +
                                    rogers_l(y * (1.0 - x) / (1.0 - xy)),
                                at);
    }
    std::vector<DilogReport> out;
    out.push_back(detail::make_report("rogers-from-li2", defining.lhs, defining.rhs, tol,
                                      defining.sample));
    out.push_back(detail::make_report("rogers-negative-arg", negative.lhs, negative.rhs, tol,
                                      negative.sample));
    out.push_back(detail::make_report("reflection", reflection.lhs, reflection.rhs, tol,
                                      reflection.sample));
    out.push_back(detail::make_report("five-term", five_term.lhs, five_term.rhs, tol,
                                      five_term.sample));
    out.push_back(detail::make_report("five-term-product", five_term_product.lhs,
                                      five_term_product.rhs, tol, five_term_product.sample));
    return out;
}

namespace detail {

// Right-hand side of the level-restricted recursion at a stationary
// point, in doubles; same neighbor structure as ysystem_rhs.
inline std::vector<double> constant_rhs(const DynkinData& diagram, std::size_t level,
                                        const std::vector<double>& y) {
    const std::size_t n = diagram.rank;
    std::vector<double> rhs(y.size(), 1.0);
    for (std::size_t m = 1; m < level; ++m)
        for (std::size_t a = 0; a < n; ++a) {
            double v = 1.0;
            for (std::size_t b : diagram.adj[a]) v *= 1.0 + y[(m - 1) * n + b];
            for (std::size_t mp : {m - 1, m + 1}) {
                if (mp < 1 || mp >= level) continue;
                const double w = y[(mp - 1) * n + a];
                v *= w / (1.0 + w);
            }
            rhs[(m - 1) * n + a] = v;
        }
    return rhs;
}

} // namespace detail

// Positive stationary solution of the level-restricted recursion, by a
// damped square-root fixed-point iteration from the all-ones start.
inline std::vector<double> solve_constant_ysystem(const DynkinData& diagram, std::size_t level) {
    check_domain(level >= 2, "level must be at least 2");
    const std::size_t size = diagram.rank * (level - 1);
    std::vector<double> y(size, 1.0);
    for (int iter = 0; iter < 100000; ++iter) {
        const std::vector<double> rhs = detail::constant_rhs(diagram, level, y);
        // Residual normalized by the solution scale: entries grow into the
        // tens for the larger diagrams, pushing the attainable absolute
        // defect above any fixed threshold.
        double residual = 0.0;
        for (std::size_t v = 0; v < size; ++v)
            residual = std::max(residual, std::abs(y[v] * y[v] - rhs[v]) / (1.0 + y[v] * y[v]));
        if (residual < 1e-14) return y;
        for (std::size_t v = 0; v < size; ++v) y[v] = 0.5 * (y[v] + std::sqrt(rhs[v]));
    }
    throw Error("constant solution iteration exceeded its budget");
}

// Stationary dilogarithm sum rule: the grid total of L(Y/(1+Y)) against
// the closed-form rational constant.
inline DilogReport verify_di6(const DynkinData& diagram, std::size_t level,
                              double tolerance = 1e-10) {
    const std::vector<double> y = solve_constant_ysystem(diagram, level);
    double sum = 0.0;
    for (double v : y) sum += rogers_l(v / (1.0 + v));
    const double lhs = sum / pi_sq_over_6;
    const double rhs =
        static_cast<double>(level) * static_cast<double>(diagram.dim_lie) /
            static_cast<double>(diagram.coxeter + static_cast<long>(level)) -
        static_cast<double>(diagram.rank);
    DilogReport r = detail::make_report("di6", lhs, rhs, tolerance,
                                        diagram.name() + " level " + std::to_string(level) +
                                            ", stationary solution");
    return r;
}

// Orbit dilogarithm sum rule: the total of L(Y/(1+Y)) over one full
// period of the recursion, from an arbitrary positive rational start.
inline DilogReport verify_di7(const DynkinData& diagram, std::size_t level,
                              const std::vector<Qi>& init0, const std::vector<Qi>& init1,
                              double tolerance = 1e-8, const std::string& sample_id = "") {
    const std::size_t period = 2 * (static_cast<std::size_t>(diagram.coxeter) + level);
    const YsystemOrbit orbit = ysystem_iterate(diagram, level, init0, init1, period - 2);
    double sum = 0.0;
    for (std::size_t u = 0; u < period; ++u)
        for (const Qi& y : orbit.slices[u]) sum += rogers_l(Qi(y / (1 + y)));
    const double lhs = sum / pi_sq_over_6;
    const double rhs = 2.0 * static_cast<double>(diagram.coxeter) *
                       static_cast<double>(diagram.rank) * static_cast<double>(level - 1);
    return detail::make_report("di7", lhs, rhs, tolerance,
                               diagram.name() + " level " + std::to_string(level) +
                                   (sample_id.empty() ? "" : ", " + sample_id));
}

enum class ClassicalIdentity { signed_sum, rogers_sum, complement_sum };

inline const char* identity_code(ClassicalIdentity id) {
    switch (id) {
        case ClassicalIdentity::signed_sum: return "di3";
        case ClassicalIdentity::rogers_sum: return "di4";
        case ClassicalIdentity::complement_sum: return "di10";
    }
    throw Error("unknown identity");
}

// Dilogarithm sum rules along a certified periodic mutation sequence:
// mutation values are computed in exact rational arithmetic and only
// converted to floating point inside L.
inline DilogReport verify_classical_di(const ExchangeMatrix& b,
                                       const std::vector<std::size_t>& sequence,
                                       const std::vector<Qi>& init, ClassicalIdentity which,
                                       double tolerance = 1e-9,
                                       const std::string& sample_id = "") {
    const auto cert = detect_period(b, sequence);
    check_domain(cert.has_value(), "the sequence could not be certified as a period");
    check_domain(init.size() == b.rank(), "one initial value per seed index is required");
    for (const Qi& v : init) check_domain(v > 0, "initial values must be positive");

    Seed<PosRatSF> seed(b, init, false);
    long n_plus = 0;
    long n_minus = 0;
    double signed_sum = 0.0;
    double rogers_sum = 0.0;
    double complement_sum = 0.0;
    for (std::size_t t = 0; t < sequence.size(); ++t) {
        const std::size_t k = sequence[t];
        const int eps = cert->sign_sequence[t];
        const Qi y = seed.y(k);
        (eps > 0 ? n_plus : n_minus) += 1;
        const Qi ye = eps > 0 ? y : Qi(1 / y);
        signed_sum += eps * rogers_l(Qi(ye / (1 + ye)));
        rogers_sum += rogers_l(Qi(y / (1 + y)));
        complement_sum += rogers_l(Qi(Qi(1) / (1 + y)));
        seed.mutate(k);
    }
    check(n_plus + n_minus == static_cast<long>(sequence.size()),
          "sign bookkeeping must cover the whole sequence");

    double lhs = 0.0;
    double rhs = 0.0;
    switch (which) {
        case ClassicalIdentity::signed_sum:
            lhs = signed_sum;
            rhs = 0.0;
            break;
        case ClassicalIdentity::rogers_sum:
            lhs = rogers_sum / pi_sq_over_6;
            rhs = static_cast<double>(n_minus);
            break;
        case ClassicalIdentity::complement_sum:
            lhs = complement_sum / pi_sq_over_6;
            rhs = static_cast<double>(n_plus);
            break;
    }
    std::string sample = sample_id;
    if (sample.empty()) {
        sample = "init=";
        for (std::size_t i = 0; i < init.size(); ++i)
            sample += (i ? "," : "") + qi_str(init[i]);
        if (sample.size() > 64) sample = sample.substr(0, 61) + "...";
    }
    DilogReport r = detail::make_report(identity_code(which), lhs, rhs, tolerance, sample);
    r.n_plus = n_plus;
    r.n_minus = n_minus;
    return r;
}

inline std::vector<DilogReport> verify_classical_di_all(const ExchangeMatrix& b,
                                                        const std::vector<std::size_t>& sequence,
                                                        const std::vector<Qi>& init,
                                                        double tolerance = 1e-9,
                                                        const std::string& sample_id = "") {
    return {verify_classical_di(b, sequence, init, ClassicalIdentity::signed_sum, tolerance,
                                sample_id),
            verify_classical_di(b, sequence, init, ClassicalIdentity::rogers_sum, tolerance,
                                sample_id),
            verify_classical_di(b, sequence, init, ClassicalIdentity::complement_sum, tolerance,
                                sample_id)};
}

} // namespace ctrop
