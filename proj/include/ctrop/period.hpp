#pragma once

// Periodicity detection for labeled seeds: a mutation sequence is a
// nu-period when it returns the seed to a relabeling of itself. For
// skew-symmetric exchange matrices the tropical data (c-vectors plus the
// restored exchange matrix) certifies this; otherwise the claim is checked
// directly on a universal-coefficient seed.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctrop/error.hpp"
#include "ctrop/matrix.hpp"
#include "ctrop/pattern.hpp"
#include "ctrop/seed.hpp"
#include "ctrop/semifield.hpp"

namespace ctrop {

struct PeriodCertificate {
    std::vector<std::size_t> sequence;   // the certified mutation sequence
    std::vector<std::size_t> relabeling; // nu with y_i(N) = y_{nu(i)}(0)
    std::vector<int> sign_sequence;      // tropical sign at each step
    std::string method;                  // "via-tropical-criterion" or "verified-directly"
    ZMat c_final;
    ZMat b_final;

    bool is_identity_relabeling() const {
        for (std::size_t i = 0; i < relabeling.size(); ++i)
            if (relabeling[i] != i) return false;
        return true;
    }
};

// Reads a permutation nu off a 0/1 permutation matrix whose column i is
// the standard basis vector e_{nu(i)}; empty result otherwise.
inline std::optional<std::vector<std::size_t>> permutation_of(const ZMat& c) {
    const std::size_t n = c.rows();
    std::vector<std::size_t> nu(n, n);
    std::vector<bool> hit(n, false);
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t ones = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const Zi& v = c.at(i, j);
            if (v == 1) {
                ++ones;
                nu[j] = i;
            } else if (v != 0) {
                return std::nullopt;
            }
        }
        if (ones != 1 || hit[nu[j]]) return std::nullopt;
        hit[nu[j]] = true;
    }
    return nu;
}

// Replays the sequence on a universal-coefficient seed with x-variables and
// confirms the relabeling claimed by a certificate.
inline bool certificate_holds_symbolically(const ExchangeMatrix& b0,
                                           const PeriodCertificate& cert) {
    Seed<UniversalSF> run(b0, true);
    run.mutate_sequence(cert.sequence);
    const Seed<UniversalSF> init(b0, true);
    for (std::size_t i = 0; i < b0.rank(); ++i) {
        if (!UniversalSF::eq(run.y(i), init.y(cert.relabeling[i]))) return false;
        if (!(run.x(i) == init.x(cert.relabeling[i]))) return false;
    }
    return true;
}

// Certifies seq as a nu-period of the seed with exchange matrix b0, or
// returns nothing. The tropical run must end in a permutation c-matrix and
// restore b0 up to that relabeling; when b0 is not skew-symmetric the
// tropical evidence alone is not conclusive and the seed is replayed
// symbolically before a certificate is issued.
inline std::optional<PeriodCertificate> detect_period(const ExchangeMatrix& b0,
                                                      const std::vector<std::size_t>& seq) {
    ClusterPattern pattern(b0, false);
    std::vector<int> signs;
    for (std::size_t k : seq) {
        check_domain(k < b0.rank(), "mutation index out of range");
        signs.push_back(pattern.tropical_sign(k));
        pattern.mutate(k);
    }

    const auto nu = permutation_of(pattern.c_matrix());
    if (!nu) return std::nullopt;
    const ZMat& bf = pattern.current_b().mat();
    for (std::size_t i = 0; i < b0.rank(); ++i)
        for (std::size_t j = 0; j < b0.rank(); ++j)
            if (bf.at(i, j) != b0.mat().at((*nu)[i], (*nu)[j])) return std::nullopt;

    PeriodCertificate cert{seq,  *nu, std::move(signs), "", pattern.c_matrix(),
                           bf};
    if (b0.is_skew_symmetric()) {
        cert.method = "via-tropical-criterion";
        return cert;
    }
    if (!certificate_holds_symbolically(b0, cert)) return std::nullopt;
    cert.method = "verified-directly";
    return cert;
}

} // namespace ctrop
