#pragma once

#include <stdexcept>
#include <string>

namespace ctrop {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid mathematical input: pole, nonpositive evaluation point,
// non-skew-symmetrizable matrix, malformed data.
struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(what) {}
};

// A conjecture-backed invariant failed at runtime (sign-incoherent
// c-vector, F-polynomial without constant term 1, Laurent property
// violation). These are never silently resolved: the computation stops
// and the event surfaces to the caller.
struct FalsificationError : Error {
    explicit FalsificationError(const std::string& what) : Error(what) {}
};

inline void check(bool cond, const std::string& what) {
    if (!cond) throw Error(what);
}

inline void check_domain(bool cond, const std::string& what) {
    if (!cond) throw DomainError(what);
}

inline void check_conjecture(bool cond, const std::string& what) {
    if (!cond) throw FalsificationError(what);
}

} // namespace ctrop
