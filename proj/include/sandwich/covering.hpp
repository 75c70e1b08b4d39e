#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sandwich/digitcat.hpp"
#include "sandwich/primes.hpp"

namespace sandwich {

// Closed-form arguments that certify a whole family composite without any
// covering search. The witness divides family_value(spec, d, m) for every
// admissible digit d and every m >= 1.
enum class ScreenKind {
    EvenDigitsSharedFactor,   // sandwich: digit_count(n) even and gcd(n, b+1) > 1
    OddBaseEvenN,             // sandwich: b odd, n even -> every member is even
    PrependSharedBaseFactor,  // prepend: gcd(n, b) > 1 -> value ends with n's digits
};

struct ScreenReason {
    ScreenKind kind;
    Natural witness;  // > 1
};

// A prime forced to divide every member with m >= 1 by shared factors of
// d, n and the base. Digits carrying one need no covering.
struct AutomaticDivisor {
    int d;
    std::uint64_t p;
};

// Divisibility witnesses indexed by m mod k: witnesses[i] divides both
// d*repunit(k) and the m = i member (w_0 = n), and is a proper divisor for
// i >= 1. Together these force every member with m >= 1 composite.
struct DigitCovering {
    int d;
    unsigned k;  // modulus >= 2
    std::vector<Natural> witnesses;
};

using CertificateEntry = std::variant<AutomaticDivisor, DigitCovering>;

// Proof object that a(n)/b(n)/c(n) = 0: either a screen, or one entry per
// digit 1..base-1 (coverings exactly for the admissible digits).
struct CoveringCertificate {
    FamilySpec spec;
    std::optional<ScreenReason> screen;  // when set, entries is empty
    std::vector<CertificateEntry> entries;
};

// Smallest prime killing the (d, spec) column, if any rule applies.
std::optional<std::uint64_t> automatic_divisor(Digit d, const FamilySpec& spec);

// Digits with no automatic divisor, ascending. These are the ones a
// certificate must cover.
std::vector<Digit> admissible_digits(const FamilySpec& spec);

std::optional<ScreenReason> screen(const FamilySpec& spec);

// [2, 3, 4, 6, 8, 10, 12, 16, 18, 20, 24, 30, 36, 48, 60]: repunits with
// many prime factors first; covers the minimal k values seen in practice.
std::span<const unsigned> default_k_candidates();

// For each admissible digit, the first k in candidate order such that
// g_i = gcd(d*repunit(k), w_i) > 1 for every residue i in [0, k), with
// g_i < w_i for i >= 1 (a divisor equal to the member proves nothing).
// Returns a certificate only when every admissible digit gets a covering.
std::optional<CoveringCertificate> find_covering(const FamilySpec& spec,
                                                 std::span<const unsigned> k_candidates,
                                                 FactorBound bound = {});

CoveringCertificate screen_certificate(const FamilySpec& spec, ScreenReason reason);

// Full re-derivation from scratch: digit coverage, every automatic rule,
// every witness divisibility, plus a spot check at m = i + k and i + 2k.
// Returns the first failure, or nullopt when the certificate is sound.
std::optional<std::string> verify_certificate_error(const CoveringCertificate& cert);

bool verify_certificate(const CoveringCertificate& cert);

}  // namespace sandwich
