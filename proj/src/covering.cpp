#include "sandwich/covering.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace sandwich {

namespace {

std::uint64_t smallest_prime_factor_u64(std::uint64_t x) {
    for (std::uint64_t p = 2; p * p <= x; ++p)
        if (x % p == 0) return p;
    return x;
}

std::uint64_t gcd_with_ui(const Natural& a, std::uint64_t b) {
    return mpz_gcd_ui(nullptr, a.get_mpz_t(), b);
}

bool divides(const Natural& d, const Natural& n) {
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

}  // namespace

std::optional<std::uint64_t> automatic_divisor(Digit d, const FamilySpec& spec) {
    std::uint64_t best = 0;
    const auto consider = [&best](std::uint64_t shared) {
        if (shared <= 1) return;
        const std::uint64_t p = smallest_prime_factor_u64(shared);
        if (best == 0 || p < best) best = p;
    };
    // a shared prime of d and n divides every member: each one is a
    // concatenation of d-blocks and n
    consider(gcd_with_ui(spec.n, d.value()));
    if (spec.mode != Mode::Prepend) {
        // last digit is d, so value = d mod any prime of the base
        consider(std::gcd(d.value(), spec.base.value()));
    } else {
        // value ends with the digits of n
        consider(gcd_with_ui(spec.n, spec.base.value()));
    }
    if (best == 0) return std::nullopt;
    return best;
}

std::vector<Digit> admissible_digits(const FamilySpec& spec) {
    std::vector<Digit> out;
    for (int dv = 1; dv < spec.base.value(); ++dv) {
        Digit d(dv, spec.base);
        if (!automatic_divisor(d, spec)) out.push_back(d);
    }
    return out;
}

std::optional<ScreenReason> screen(const FamilySpec& spec) {
    const int b = spec.base.value();
    switch (spec.mode) {
        case Mode::Sandwich: {
            if (digit_count(spec.n, spec.base) % 2 == 0) {
                const std::uint64_t g = gcd_with_ui(spec.n, b + 1);
                if (g > 1)
                    return ScreenReason{ScreenKind::EvenDigitsSharedFactor,
                                        Natural(smallest_prime_factor_u64(g))};
            }
            if (b % 2 == 1 && mpz_even_p(spec.n.get_mpz_t()))
                return ScreenReason{ScreenKind::OddBaseEvenN, Natural(2)};
            return std::nullopt;
        }
        case Mode::Prepend: {
            const std::uint64_t g = gcd_with_ui(spec.n, b);
            if (g > 1)
                return ScreenReason{ScreenKind::PrependSharedBaseFactor,
                                    Natural(smallest_prime_factor_u64(g))};
            return std::nullopt;
        }
        case Mode::Append:
            return std::nullopt;
    }
    throw std::logic_error("bad mode");
}

std::span<const unsigned> default_k_candidates() {
    static constexpr std::array<unsigned, 15> ks = {2,  3,  4,  6,  8,  10, 12, 16,
                                                    18, 20, 24, 30, 36, 48, 60};
    return ks;
}

std::optional<CoveringCertificate> find_covering(const FamilySpec& spec,
                                                 std::span<const unsigned> k_candidates,
                                                 FactorBound bound) {
    if (k_candidates.empty()) throw std::invalid_argument("k_candidates must be nonempty");
    for (unsigned k : k_candidates)
        if (k < 2) throw std::invalid_argument("every k candidate must be >= 2");
    const unsigned k_max = *std::max_element(k_candidates.begin(), k_candidates.end());

    // gcd(d*R(k), n) = gcd(R(k), n) for admissible d, so the i = 0 test is
    // digit-independent; cache it per k.
    std::vector<Natural> repunits(k_max + 1);
    std::vector<Natural> g0(k_max + 1);
    for (unsigned k : k_candidates) {
        if (repunits[k] != 0) continue;
        repunits[k] = repunit(k, spec.base);
        g0[k] = gcd(repunits[k], spec.n);
    }

    CoveringCertificate cert{spec, std::nullopt, {}};
    for (int dv = 1; dv < spec.base.value(); ++dv) {
        const Digit d(dv, spec.base);
        if (auto p = automatic_divisor(d, spec)) {
            cert.entries.push_back(AutomaticDivisor{dv, *p});
            continue;
        }

        std::vector<Natural> members{spec.n};  // members[i] = w_i, grown on demand
        const auto member = [&](unsigned i) -> const Natural& {
            while (members.size() <= i) members.push_back(family_value(spec, d, members.size()));
            return members[i];
        };

        bool covered = false;
        for (unsigned k : k_candidates) {
            if (g0[k] <= 1) continue;
            const Natural d_rk = dv * repunits[k];
            std::vector<Natural> witnesses;
            witnesses.reserve(k);
            const auto push_witness = [&](const Natural& g) {
                auto p = smallest_prime_factor(g, bound);
                witnesses.push_back(p ? Natural(*p) : g);
            };
            push_witness(g0[k]);
            bool ok = true;
            for (unsigned i = 1; i < k; ++i) {
                const Natural& w = member(i);
                const Natural g = gcd(d_rk, w);
                // the member at m = i is w itself; a divisor equal to it proves nothing
                if (g <= 1 || g >= w) {
                    ok = false;
                    break;
                }
                push_witness(g);
            }
            if (ok) {
                cert.entries.push_back(DigitCovering{dv, k, std::move(witnesses)});
                covered = true;
                break;
            }
        }
        if (!covered) return std::nullopt;
    }
    return cert;
}

CoveringCertificate screen_certificate(const FamilySpec& spec, ScreenReason reason) {
    return CoveringCertificate{spec, std::move(reason), {}};
}

namespace {

std::string entry_tag(int d) { return "entry d=" + std::to_string(d); }

std::optional<std::string> check_screen(const CoveringCertificate& cert) {
    const FamilySpec& spec = cert.spec;
    const ScreenReason& s = *cert.screen;
    if (!cert.entries.empty()) return "screen certificate must not carry digit entries";
    if (s.witness <= 1) return "screen witness must exceed 1";
    switch (s.kind) {
        case ScreenKind::EvenDigitsSharedFactor:
            if (spec.mode != Mode::Sandwich) return "even-digit screen applies to sandwich mode only";
            if (digit_count(spec.n, spec.base) % 2 != 0)
                return "even-digit screen requires an even digit count";
            if (!divides(s.witness, spec.n)) return "screen witness does not divide n";
            if (!divides(s.witness, Natural(spec.base.value() + 1)))
                return "screen witness does not divide base+1";
            return std::nullopt;
        case ScreenKind::OddBaseEvenN:
            if (spec.mode != Mode::Sandwich) return "odd-base screen applies to sandwich mode only";
            if (spec.base.value() % 2 == 0) return "odd-base screen requires an odd base";
            if (!mpz_even_p(spec.n.get_mpz_t())) return "odd-base screen requires even n";
            if (s.witness != 2) return "odd-base screen witness must be 2";
            return std::nullopt;
        case ScreenKind::PrependSharedBaseFactor:
            if (spec.mode != Mode::Prepend) return "base-factor screen applies to prepend mode only";
            if (!divides(s.witness, spec.n)) return "screen witness does not divide n";
            if (!divides(s.witness, Natural(spec.base.value()))) return "screen witness does not divide the base";
            return std::nullopt;
    }
    return "unknown screen kind";
}

}  // namespace

std::optional<std::string> verify_certificate_error(const CoveringCertificate& cert) {
    const FamilySpec& spec = cert.spec;
    const int b = spec.base.value();

    if (cert.screen) return check_screen(cert);

    // exactly one entry per digit; coverings exactly on the admissible set
    std::vector<int> seen(b, 0);
    for (const auto& entry : cert.entries) {
        const int dv = std::visit([](const auto& e) { return e.d; }, entry);
        if (dv < 1 || dv >= b) return "entry digit out of range";
        if (seen[dv]++) return entry_tag(dv) + ": duplicate digit";
    }
    for (int dv = 1; dv < b; ++dv)
        if (!seen[dv]) return "digit " + std::to_string(dv) + " is not covered";

    for (const auto& entry : cert.entries) {
        if (const auto* autod = std::get_if<AutomaticDivisor>(&entry)) {
            const int dv = autod->d;
            const std::uint64_t p = autod->p;
            if (p < 2) return entry_tag(dv) + ": automatic divisor is not prime";
            const bool div_d = p <= std::uint64_t(dv) && dv % p == 0;
            const bool div_n = mpz_divisible_ui_p(spec.n.get_mpz_t(), p) != 0;
            const bool div_b = p <= std::uint64_t(b) && std::uint64_t(b) % p == 0;
            const bool rule_shared = div_d && div_n;
            const bool rule_last_digit = div_d && div_b && spec.mode != Mode::Prepend;
            const bool rule_trailing_n = div_n && div_b && spec.mode == Mode::Prepend;
            if (!rule_shared && !rule_last_digit && !rule_trailing_n)
                return entry_tag(dv) + ": automatic divisor satisfies no rule";
            // every rule forces p to divide the digit or the base, so p is
            // small here and trial division is exact
            if (smallest_prime_factor_u64(p) != p)
                return entry_tag(dv) + ": automatic divisor is not prime";
            if (!automatic_divisor(Digit(dv, spec.base), spec))
                return entry_tag(dv) + ": digit is admissible but lacks a covering";
        } else {
            const auto& cov = std::get<DigitCovering>(entry);
            const int dv = cov.d;
            if (automatic_divisor(Digit(dv, spec.base), spec))
                return entry_tag(dv) + ": digit is not admissible yet carries a covering";
            if (cov.k < 2) return entry_tag(dv) + ": modulus must be >= 2";
            if (cov.witnesses.size() != cov.k)
                return entry_tag(dv) + ": witness table must have one row per residue";
            const Natural d_rk = dv * repunit(cov.k, spec.base);
            for (unsigned i = 0; i < cov.k; ++i) {
                const Natural& g = cov.witnesses[i];
                const std::string at = entry_tag(dv) + " residue i=" + std::to_string(i);
                if (g <= 1) return at + ": witness must exceed 1";
                if (!divides(g, d_rk)) return at + ": witness does not divide d*repunit(k)";
                const Natural w = family_value(spec, Digit(dv, spec.base), i);
                if (!divides(g, w)) return at + ": witness does not divide the member";
                if (i >= 1 && g >= w) return at + ": witness must be a proper divisor";
                // periodicity spot check two turns around the covering
                for (unsigned long extra : {cov.k, 2 * cov.k}) {
                    if (!divides(g, family_value(spec, Digit(dv, spec.base), i + extra)))
                        return at + ": witness fails at m = i + " + std::to_string(extra);
                }
            }
        }
    }
    return std::nullopt;
}

bool verify_certificate(const CoveringCertificate& cert) {
    return !verify_certificate_error(cert).has_value();
}

}  // namespace sandwich
