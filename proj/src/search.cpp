#include "sandwich/search.hpp"

#include <algorithm>

namespace sandwich {

SearchResult eval(const FamilySpec& spec, const SearchConfig& cfg) {
    if (auto reason = screen(spec)) return CertifiedZero{screen_certificate(spec, std::move(*reason))};
    if (auto cert = find_covering(spec, cfg.k_candidates, cfg.factor_bound))
        return CertifiedZero{std::move(*cert)};

    // (m ascending, d ascending) is value order, so the first hit is the
    // smallest prime member. Digit columns with an automatic divisor hold
    // provably composite values only; skipping them changes nothing.
    std::vector<int> digits;
    for (int dv = 1; dv < spec.base.value(); ++dv)
        if (!automatic_divisor(Digit(dv, spec.base), spec)) digits.push_back(dv);

    for (unsigned long m = 1; m <= cfg.max_m; ++m) {
        for (int dv : digits) {
            Natural value = family_value(spec, Digit(dv, spec.base), m);
            const PrimalityVerdict verdict = is_probable_prime(value);
            if (prime_kind(verdict)) return PrimeHit{dv, m, std::move(value), verdict};
        }
    }
    return Unknown{cfg.max_m};
}

namespace {

bool trial_division_prime(std::uint64_t v) {
    if (v < 2) return false;
    for (std::uint64_t p : {2, 3, 5}) {
        if (p * p > v) return true;
        if (v % p == 0) return v == p;
    }
    static constexpr int wheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    std::uint64_t p = 7;
    int w = 0;
    while (p * p <= v) {
        if (v % p == 0) return false;
        p += wheel[w];
        w = (w + 1) & 7;
    }
    return true;
}

}  // namespace

std::optional<OracleHit> brute_oracle(const FamilySpec& spec, unsigned long max_m) {
    static const Natural reach = [] {
        Natural r;
        mpz_ui_pow_ui(r.get_mpz_t(), 10, 12);
        return r;
    }();
    std::vector<OracleHit> candidates;
    for (unsigned long m = 1; m <= max_m; ++m) {
        for (int dv = 1; dv < spec.base.value(); ++dv) {
            const Natural value = family_value(spec, Digit(dv, spec.base), m);
            if (value >= reach)
                throw std::domain_error("brute_oracle: family value exceeds trial-division reach");
            candidates.push_back({dv, m, mpz_get_ui(value.get_mpz_t())});
        }
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const OracleHit& a, const OracleHit& b) { return a.value < b.value; });
    for (const OracleHit& c : candidates)
        if (trial_division_prime(c.value)) return c;
    return std::nullopt;
}

}  // namespace sandwich
