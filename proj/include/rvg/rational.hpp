#pragma once

#include <cstdint>
#include <compare>
#include <string>
#include <vector>

namespace rvg {

/// Arbitrary-size unsigned integer, little-endian 64-bit words.
///
/// Backs the exact-arithmetic verification machinery. Production
/// generation paths use fixed-capacity words instead (see generators).
class BigUint {
public:
    BigUint() = default;
    explicit BigUint(uint64_t v);
    static BigUint pow2(unsigned k);

    bool is_zero() const { return words_.empty(); }
    bool is_pow2() const;
    size_t bit_length() const;
    bool bit(size_t i) const;
    size_t trailing_zeros() const;  // undefined for zero

    int compare(const BigUint& o) const;
    bool operator==(const BigUint& o) const { return compare(o) == 0; }
    std::strong_ordering operator<=>(const BigUint& o) const;

    BigUint& operator+=(const BigUint& o);
    BigUint& operator-=(const BigUint& o);  // requires *this >= o
    BigUint& operator<<=(unsigned k);
    BigUint& operator>>=(unsigned k);
    friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }
    friend BigUint operator-(BigUint a, const BigUint& b) { return a -= b; }
    friend BigUint operator<<(BigUint a, unsigned k) { return a <<= k; }
    friend BigUint operator>>(BigUint a, unsigned k) { return a >>= k; }
    BigUint operator*(const BigUint& o) const;

    /// Quotient and remainder by shift-and-subtract.
    std::pair<BigUint, BigUint> divmod(const BigUint& d) const;
    static BigUint gcd(BigUint a, BigUint b);

    uint64_t low64() const { return words_.empty() ? 0 : words_[0]; }
    bool fits_u64() const { return words_.size() <= 1; }
    double to_double() const;
    std::string to_string() const;  // decimal

private:
    void trim();
    std::vector<uint64_t> words_;  // no trailing zero words
};

/// Exact rational, reduced form, denominator > 0.
class Rational {
public:
    Rational() : sign_(0), num_(), den_(1) {}
    Rational(int64_t v);
    Rational(int64_t num, int64_t den);
    static Rational from_parts(int sign, BigUint num, BigUint den);
    /// sign * mant * 2^exp2
    static Rational dyadic(int sign, BigUint mant, int64_t exp2);

    int sign() const { return sign_; }
    bool is_zero() const { return sign_ == 0; }
    const BigUint& num() const { return num_; }
    const BigUint& den() const { return den_; }
    bool is_dyadic() const { return den_.is_pow2(); }

    Rational operator-() const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;

    int compare(const Rational& o) const;
    bool operator==(const Rational& o) const { return compare(o) == 0; }
    std::strong_ordering operator<=>(const Rational& o) const;

    /// Digit l of the binary expansion sign*(d0.d1 d2 ...), never ending in
    /// an infinite run of 1s. digit(0) is the integer bit; requires |q| < 2.
    int digit(uint64_t l) const;

    double to_double() const;
    std::string to_string() const;  // "num/den" or integer

private:
    void reduce();
    int sign_;      // -1, 0, +1
    BigUint num_, den_;
};

/// Streams successive fraction digits of a rational in [0, 1] by long
/// division; O(words) per digit.
class DigitStream {
public:
    explicit DigitStream(const Rational& q);  // requires 0 <= q <= 1
    int next();                               // digit at position_ + 1
    uint64_t position() const { return position_; }

private:
    BigUint rem_, den_;
    uint64_t position_ = 0;
};

/// Exact dyadic value sign * mant * 2^exp2 with a 64-bit mantissa.
/// Canonical form keeps mant odd (or zero). Every value of every
/// supported number format is representable.
struct Dyadic {
    int sign = 0;        // -1, 0, +1
    uint64_t mant = 0;   // odd unless zero
    int64_t exp2 = 0;

    static Dyadic make(int sign, uint64_t mant, int64_t exp2);
    static Dyadic from_int(int64_t v);

    int compare(const Dyadic& o) const;
    bool operator==(const Dyadic& o) const { return compare(o) == 0; }
    std::strong_ordering operator<=>(const Dyadic& o) const;

    Rational to_rational() const;
    double to_double() const;  // nearest double
    std::string to_string() const;
};

}  // namespace rvg
