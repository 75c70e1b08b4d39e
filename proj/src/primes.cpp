#include "sandwich/primes.hpp"

namespace sandwich {

Natural gcd(const Natural& a, const Natural& b) {
    if (a == 0 && b == 0) throw std::invalid_argument("gcd(0, 0) is undefined");
    Natural g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

namespace detail {

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> table = [] {
        constexpr std::uint32_t limit = 2048;
        std::vector<bool> composite(limit, false);
        std::vector<std::uint32_t> ps;
        for (std::uint32_t i = 2; i < limit; ++i) {
            if (composite[i]) continue;
            ps.push_back(i);
            for (std::uint32_t j = i * i; j < limit; j += i) composite[j] = true;
        }
        return ps;
    }();
    return table;
}

bool strong_probable_prime(const Natural& n, unsigned long base) {
    // n - 1 = q * 2^e with q odd
    Natural q = n - 1;
    const mp_bitcnt_t e = mpz_scan1(q.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(q.get_mpz_t(), q.get_mpz_t(), e);

    Natural x, b(base);
    mpz_powm(x.get_mpz_t(), b.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
    const Natural n_minus_1 = n - 1;
    if (x == 1 || x == n_minus_1) return true;
    for (mp_bitcnt_t i = 1; i < e; ++i) {
        x = x * x % n;
        if (x == n_minus_1) return true;
        if (x <= 1) return false;
    }
    return false;
}

namespace {

// x/2 mod n for odd n, x in [0, n)
Natural halve_mod(Natural x, const Natural& n) {
    if (mpz_odd_p(x.get_mpz_t())) x += n;
    mpz_fdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), 1);
    return x;
}

void reduce(Natural& x, const Natural& n) {
    mpz_mod(x.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
}

}  // namespace

bool strong_lucas_probable_prime(const Natural& n) {
    // Selfridge method A: D = 5, -7, 9, -11, ... with Jacobi(D, n) = -1.
    // Terminates because the caller has excluded perfect squares.
    long D = 5;
    for (;;) {
        const Natural Dz(D);
        const int j = mpz_jacobi(Dz.get_mpz_t(), n.get_mpz_t());
        if (j == -1) break;
        if (j == 0) return mpz_cmpabs(n.get_mpz_t(), Dz.get_mpz_t()) == 0;
        D = D > 0 ? -(D + 2) : -(D - 2);
    }
    const long Q = (1 - D) / 4;  // P = 1

    // n + 1 = s * 2^r with s odd
    Natural s = n + 1;
    const mp_bitcnt_t r = mpz_scan1(s.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(s.get_mpz_t(), s.get_mpz_t(), r);

    // U_s, V_s, Q^s by binary chaining over the bits of s
    Natural u(1), v(1), qk(Q);
    reduce(qk, n);
    const mp_bitcnt_t bits = mpz_sizeinbase(s.get_mpz_t(), 2);
    for (mp_bitcnt_t i = bits - 1; i-- > 0;) {
        // (U, V, Q^k) -> (U_2k, V_2k, Q^2k)
        u = u * v;
        reduce(u, n);
        v = v * v - 2 * qk;
        reduce(v, n);
        qk = qk * qk;
        reduce(qk, n);
        if (mpz_tstbit(s.get_mpz_t(), i)) {
            // index 2k -> 2k+1 with P = 1:
            // U' = (U + V)/2, V' = (D*U + V)/2
            Natural u_next = u + v;
            Natural v_next = D * u + v;
            reduce(u_next, n);
            reduce(v_next, n);
            u = halve_mod(std::move(u_next), n);
            v = halve_mod(std::move(v_next), n);
            qk = qk * Q;
            reduce(qk, n);
        }
    }

    if (u == 0) return true;  // U_s = 0
    // V_{s*2^j} = 0 for some 0 <= j < r
    for (mp_bitcnt_t j = 0; j < r; ++j) {
        if (v == 0) return true;
        if (j + 1 < r) {
            v = v * v - 2 * qk;
            reduce(v, n);
            qk = qk * qk;
            reduce(qk, n);
        }
    }
    return false;
}

}  // namespace detail

std::optional<std::uint64_t> smallest_prime_factor(const Natural& n, FactorBound bound) {
    if (n < 2) throw std::invalid_argument("smallest_prime_factor requires n >= 2");
    const auto divides = [&n](std::uint64_t p) {
        return mpz_divisible_ui_p(n.get_mpz_t(), p) != 0;
    };
    const auto past_sqrt = [&n](std::uint64_t p) {
        return mpz_cmp_ui(n.get_mpz_t(), p * p) < 0;
    };
    // reaching past sqrt(n) without a hit means n itself is prime
    const auto self_if_bounded = [&]() -> std::optional<std::uint64_t> {
        if (mpz_cmp_ui(n.get_mpz_t(), bound.limit) <= 0) return mpz_get_ui(n.get_mpz_t());
        return std::nullopt;
    };
    for (std::uint64_t p : {2, 3, 5}) {
        if (p > bound.limit) return std::nullopt;
        if (past_sqrt(p)) return self_if_bounded();
        if (divides(p)) return p;
    }
    static constexpr int wheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    std::uint64_t p = 7;
    int w = 0;
    while (p <= bound.limit) {
        if (past_sqrt(p)) return self_if_bounded();
        if (divides(p)) return p;
        p += wheel[w];
        w = (w + 1) & 7;
    }
    return std::nullopt;
}

PrimalityVerdict is_probable_prime(const Natural& n) {
    using V = PrimalityVerdict;
    if (n < 2) return V::Composite;  // 0 and 1: not prime
    for (std::uint32_t p : detail::small_primes()) {
        if (mpz_cmp_ui(n.get_mpz_t(), std::uint64_t(p) * p) < 0)
            return V::DeterministicPrime;  // no factor up to sqrt(n)
        if (mpz_divisible_ui_p(n.get_mpz_t(), p))
            return mpz_cmp_ui(n.get_mpz_t(), p) == 0 ? V::DeterministicPrime : V::Composite;
    }
    // n odd and > 2048^2 from here on
    // smallest composite passing the first 13 prime bases (Sorenson & Webster)
    static const Natural thirteen_base_bound("3317044064679887385961981");
    if (n < thirteen_base_bound) {
        for (unsigned long b : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41})
            if (!detail::strong_probable_prime(n, b)) return V::Composite;
        return V::DeterministicPrime;
    }
    if (!detail::strong_probable_prime(n, 2)) return V::Composite;
    if (mpz_perfect_square_p(n.get_mpz_t())) return V::Composite;
    if (!detail::strong_lucas_probable_prime(n)) return V::Composite;
    return V::ProbablePrime;
}

}  // namespace sandwich
