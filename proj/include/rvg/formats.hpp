#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "rvg/rational.hpp"

namespace rvg {

/// An n-bit string, 1 <= n <= 64, low n bits significant.
struct Code {
    uint64_t bits = 0;
    int width = 0;

    Code() = default;
    Code(uint64_t b, int w);

    bool operator==(const Code& o) const = default;
    std::string to_bit_string() const;
    std::string to_hex_string() const;  // zero-padded to ceil(width/4)
};

uint64_t width_mask(int n);

enum class RealKind { NegInf, Finite, PosInf, Bottom };

/// Real line extended with -inf, +inf and a maximal "bottom" element
/// (the NaN bucket). Finite payloads are exact dyadics.
class ExtendedReal {
public:
    ExtendedReal() : kind_(RealKind::Finite), value_{} {}
    static ExtendedReal finite(Dyadic d) { return ExtendedReal(RealKind::Finite, d); }
    static ExtendedReal neg_inf() { return ExtendedReal(RealKind::NegInf, {}); }
    static ExtendedReal pos_inf() { return ExtendedReal(RealKind::PosInf, {}); }
    static ExtendedReal bottom() { return ExtendedReal(RealKind::Bottom, {}); }

    RealKind kind() const { return kind_; }
    bool is_finite() const { return kind_ == RealKind::Finite; }
    const Dyadic& value() const { return value_; }

    /// Total order with NegInf minimal and Bottom maximal.
    int compare(const ExtendedReal& o) const;
    bool operator==(const ExtendedReal& o) const { return compare(o) == 0; }
    std::strong_ordering operator<=>(const ExtendedReal& o) const;

    double to_double() const;  // Bottom maps to quiet NaN
    std::string to_string() const;

private:
    ExtendedReal(RealKind k, Dyadic v) : kind_(k), value_(v) {}
    RealKind kind_;
    Dyadic value_;
};

enum class FormatKind {
    UnsignedInt,
    SignMagnitude,
    TwosComplement,
    FixedUnsigned,
    FixedSignMagnitude,
    FixedTwosComplement,
    IeeeFloat,
    Posit,
};

/// A binary number format: a code width n, a value map onto the extended
/// reals, and an order bijection under which dictionary order of preimages
/// agrees with value order.
class FormatSpec {
public:
    static FormatSpec unsigned_int(int n);
    static FormatSpec sign_magnitude(int n);
    static FormatSpec twos_complement(int n);
    static FormatSpec fixed_unsigned(int n, int point_offset);
    static FormatSpec fixed_sign_magnitude(int n, int point_offset);
    static FormatSpec fixed_twos_complement(int n, int point_offset);
    static FormatSpec ieee(int exp_bits, int mant_bits);
    static FormatSpec binary32() { return ieee(8, 23); }
    static FormatSpec binary64() { return ieee(11, 52); }
    static FormatSpec posit(int n);  // es = 2

    /// Parses descriptors like "f32", "f64", "float:E=5,m=2", "uint:8",
    /// "int:8", "sm:8", "posit:16", "fixed:n=16,m=8,signed=sm".
    static FormatSpec parse(const std::string& descriptor);
    std::string descriptor() const;

    FormatKind kind() const { return kind_; }
    int width() const { return width_; }
    int exp_bits() const { return exp_bits_; }
    int mant_bits() const { return mant_bits_; }
    int point_offset() const { return point_offset_; }

    /// Value map.
    ExtendedReal value(Code c) const;
    /// Value as a host double (round-to-nearest for values a double
    /// cannot hold exactly).
    double value_double(Code c) const;

    /// Order bijection: maps the n-bit string at dictionary position u to
    /// the code holding that position in the format's value order.
    Code order_to_code(Code u) const;
    Code code_to_order(Code c) const;
    /// Shorthand taking an unsigned rank in [0, 2^n).
    Code from_rank(uint64_t rank) const { return order_to_code(Code(rank, width_)); }
    uint64_t rank(Code c) const { return code_to_order(c).bits; }

    Code succ(Code c) const;  // throws std::out_of_range at the maximum
    Code pred(Code c) const;
    Code min_code() const { return from_rank(0); }
    Code max_code() const { return from_rank(width_mask(width_)); }

    /// Format order: c < c' iff c precedes c' in value order.
    std::strong_ordering compare(Code a, Code b) const;
    bool less(Code a, Code b) const { return compare(a, b) == std::strong_ordering::less; }

    bool operator==(const FormatSpec& o) const = default;

private:
    FormatSpec(FormatKind k, int n) : kind_(k), width_(n) {}
    void check_width(Code c) const;

    FormatKind kind_;
    int width_;
    int exp_bits_ = 0;      // IeeeFloat
    int mant_bits_ = 0;     // IeeeFloat
    int point_offset_ = 0;  // fixed-point scale 2^-offset
};

}  // namespace rvg
