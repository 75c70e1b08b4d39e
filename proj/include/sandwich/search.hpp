#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "sandwich/covering.hpp"

namespace sandwich {

struct SearchConfig {
    unsigned long max_m = 1500;
    std::vector<unsigned> k_candidates{default_k_candidates().begin(),
                                       default_k_candidates().end()};
    FactorBound factor_bound{};
};

struct PrimeHit {
    int d;
    unsigned long m;
    Natural value;
    PrimalityVerdict verdict;
};

struct CertifiedZero {
    CoveringCertificate certificate;
};

struct Unknown {
    unsigned long max_m_searched;
};

// PrimeHit carries the numerically smallest prime member (m ascending, then
// d ascending is value order). CertifiedZero carries a verified certificate.
// Unknown is a first-class outcome: absence of a certificate is not zero.
using SearchResult = std::variant<PrimeHit, CertifiedZero, Unknown>;

SearchResult eval(const FamilySpec& spec, const SearchConfig& cfg = {});

struct OracleHit {
    int d;
    unsigned long m;
    std::uint64_t value;
};

// Independent oracle: generate every (m, d) member with m <= max_m, sort
// numerically, trial-divide. No screens, no certificates, no digit skips.
// Throws std::domain_error once a member exceeds 12 decimal digits.
std::optional<OracleHit> brute_oracle(const FamilySpec& spec, unsigned long max_m);

}  // namespace sandwich
