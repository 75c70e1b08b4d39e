#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace sandwich {

// Arbitrary-precision non-negative integer. GMP keeps the representation
// canonical and comfortably handles the multi-thousand-digit family members.
using Natural = mpz_class;

// Number base, 2..36. 36 keeps digits printable as 0-9a-z.
class Base {
public:
    explicit Base(int value) : value_(value) {
        if (value < 2 || value > 36) throw std::invalid_argument("base must be in [2, 36]");
    }
    int value() const { return value_; }
    bool operator==(const Base&) const = default;

private:
    int value_;
};

// Nonzero digit 1 <= d < base: the repeated block must not start with 0.
class Digit {
public:
    Digit(int value, Base base) : value_(value) {
        if (value < 1 || value >= base.value())
            throw std::invalid_argument("digit must be in [1, base)");
    }
    int value() const { return value_; }
    bool operator==(const Digit&) const = default;

private:
    int value_;
};

enum class Mode { Sandwich, Prepend, Append };

// One infinite family {value(m) : m >= 0} of digit-wrapped numbers.
// The repeated digit is quantified separately: certificates range over all
// admissible digits, searches enumerate them.
struct FamilySpec {
    FamilySpec(Base base, Mode mode, Natural n) : base(base), mode(mode), n(std::move(n)) {
        if (this->n < 1) throw std::invalid_argument("family core n must be >= 1");
    }
    Base base;
    Mode mode;
    Natural n;
};

// b^e
Natural base_pow(Base b, unsigned long e);

// Smallest t with n < b^t; digit_count(0) = 1 so concat stays total.
unsigned digit_count(const Natural& n, Base b);

// (b^k - 1)/(b - 1): k digits all equal to 1. repunit(0) = 0.
Natural repunit(unsigned long k, Base b);

// x * b^digit_count(y) + y. concat(0, y) = y.
Natural concat(const Natural& x, const Natural& y, Base b);

// The m-th family member. m = 0 yields n in every mode.
// Sandwich: d-block, n, d-block (2m + t digits)
// Prepend:  d-block, n          (m + t digits)
// Append:   n, d-block          (t + m digits)
Natural family_value(const FamilySpec& spec, Digit d, unsigned long m);

// Lowercase 0-9a-z rendering, most significant digit first.
std::string to_base_string(const Natural& n, Base b);

}  // namespace sandwich
