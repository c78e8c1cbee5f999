#pragma once

// Arbitrary-precision integer and rational scalars used throughout the
// library. Exact arithmetic is non-negotiable here: every algebraic
// identity we verify is checked over Z or Q, never in floating point.

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace ctrop {

using Zi = boost::multiprecision::cpp_int;
using Qi = boost::multiprecision::cpp_rational;

inline Zi zi_gcd(const Zi& a, const Zi& b) { return boost::multiprecision::gcd(a, b); }
inline Zi zi_lcm(const Zi& a, const Zi& b) { return boost::multiprecision::lcm(a, b); }

inline Zi zi_pow(Zi base, std::uint64_t e) {
    Zi r = 1;
    while (e != 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

// q^e for rational q and any integer e; e < 0 requires q != 0.
inline Qi qi_pow(const Qi& q, std::int64_t e) {
    if (e >= 0) {
        Qi r = 1;
        Qi b = q;
        auto n = static_cast<std::uint64_t>(e);
        while (n != 0) {
            if (n & 1) r *= b;
            b *= b;
            n >>= 1;
        }
        return r;
    }
    return qi_pow(Qi(1) / q, -e);
}

inline std::string qi_str(const Qi& q) { return q.str(); }
inline std::string zi_str(const Zi& z) { return z.str(); }

// Narrowing accessor for quantities that are structurally small
// (matrix entries, exponents); loud failure beats silent wrap.
inline std::int64_t zi_to_i64(const Zi& z) {
    if (z < std::numeric_limits<std::int64_t>::min() ||
        z > std::numeric_limits<std::int64_t>::max())
        throw std::overflow_error("integer exceeds 64-bit range: " + z.str());
    return z.convert_to<std::int64_t>();
}

} // namespace ctrop
