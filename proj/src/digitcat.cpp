#include "sandwich/digitcat.hpp"

namespace sandwich {

Natural base_pow(Base b, unsigned long e) {
    Natural r;
    mpz_ui_pow_ui(r.get_mpz_t(), b.value(), e);
    return r;
}

unsigned digit_count(const Natural& n, Base b) {
    if (n == 0) return 1;
    // mpz_sizeinbase may overestimate by one for bases that are not powers of 2
    std::size_t r = mpz_sizeinbase(n.get_mpz_t(), b.value());
    if (r == 1) return 1;
    return n < base_pow(b, r - 1) ? unsigned(r - 1) : unsigned(r);
}

Natural repunit(unsigned long k, Base b) {
    Natural r = base_pow(b, k) - 1;
    mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), b.value() - 1);
    return r;
}

Natural concat(const Natural& x, const Natural& y, Base b) {
    if (x == 0) return y;
    return x * base_pow(b, digit_count(y, b)) + y;
}

Natural family_value(const FamilySpec& spec, Digit d, unsigned long m) {
    if (m == 0) return spec.n;  // w_0 convention, every mode
    const Natural block = d.value() * repunit(m, spec.base);
    const unsigned t = digit_count(spec.n, spec.base);
    switch (spec.mode) {
        case Mode::Sandwich:
            return block * base_pow(spec.base, t + m) + spec.n * base_pow(spec.base, m) + block;
        case Mode::Prepend:
            return block * base_pow(spec.base, t) + spec.n;
        case Mode::Append:
            return spec.n * base_pow(spec.base, m) + block;
    }
    throw std::logic_error("bad mode");
}

std::string to_base_string(const Natural& n, Base b) {
    return n.get_str(b.value());
}

}  // namespace sandwich
