#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sandwich/digitcat.hpp"

namespace sandwich {

// Cap for trial division when extracting certificate witnesses.
struct FactorBound {
    FactorBound() = default;
    explicit FactorBound(std::uint64_t limit) : limit(limit) {
        if (limit < 2 || limit > 10'000'000)
            throw std::invalid_argument("factor bound must be in [2, 10^7]");
    }
    std::uint64_t limit = 1'000'000;
};

// Compositeness verdicts are certain (a divisor or a failed strong test was
// found). DeterministicPrime is only reported below the published 13-base
// strong-pseudoprime bound; above it prime verdicts are ProbablePrime.
enum class PrimalityVerdict { Composite, DeterministicPrime, ProbablePrime };

inline bool prime_kind(PrimalityVerdict v) { return v != PrimalityVerdict::Composite; }

// gcd(a, 0) = a; gcd(0, 0) is rejected.
Natural gcd(const Natural& a, const Natural& b);

// Smallest prime p <= bound dividing n (n >= 2), or absent when trial
// division up to the bound finds none.
std::optional<std::uint64_t> smallest_prime_factor(const Natural& n, FactorBound bound = {});

// Deterministic for every input: fixed strong-pseudoprime bases below the
// 13-base bound, strong base-2 plus strong Lucas above it. Never reports
// Composite for a prime; n < 2 counts as "not prime".
PrimalityVerdict is_probable_prime(const Natural& n);

namespace detail {

// Strong Fermat test to the given base. Requires n odd, n > 2, base < n.
bool strong_probable_prime(const Natural& n, unsigned long base);

// Strong Lucas test with Selfridge parameters. Requires n odd, n > 2,
// and n not a perfect square.
bool strong_lucas_probable_prime(const Natural& n);

// Primes below 2048, ascending.
const std::vector<std::uint32_t>& small_primes();

}  // namespace detail

}  // namespace sandwich
