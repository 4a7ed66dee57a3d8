#pragma once

#include <compare>
#include <cstdint>

#include "rvg/rational.hpp"

namespace rvg {

/// Exponent/mantissa sizes of the probability float format.
struct ProbConfig {
    int exp_bits;
    int mant_bits;

    static ProbConfig binary32() { return {8, 23}; }
    static ProbConfig binary64() { return {11, 52}; }

    int total_bits() const { return 1 + exp_bits + mant_bits; }
    /// All representable probabilities are multiples of 2^-grain_exp().
    int grain_exp() const { return (1 << (exp_bits - 1)) + mant_bits - 2; }
    int64_t min_exponent() const { return 2 - (int64_t{1} << (exp_bits - 1)); }

    bool operator==(const ProbConfig&) const = default;
};

/// A probability: a nonnegative float in the configured format, in [0, 1].
/// Stored as the raw bit pattern, so bit-pattern order is value order.
class ProbFloat {
public:
    static ProbFloat zero(ProbConfig cfg) { return ProbFloat(0, cfg); }
    static ProbFloat one(ProbConfig cfg);
    static ProbFloat half(ProbConfig cfg);
    /// Smallest positive representable probability.
    static ProbFloat grain(ProbConfig cfg) { return ProbFloat(1, cfg); }
    static ProbFloat from_bits(ProbConfig cfg, uint64_t bits);
    /// Rounds to nearest, ties to even. Requires x in [0, 1].
    static ProbFloat from_double(ProbConfig cfg, double x);

    uint64_t bits() const { return bits_; }
    ProbConfig config() const { return cfg_; }
    bool is_zero() const { return bits_ == 0; }
    bool is_one() const;

    /// Raw decomposition: value = sig * 2^(exp - mant_bits), with sig
    /// carrying the hidden bit for normal values.
    struct Fields {
        int64_t exp;
        uint64_t sig;
    };
    Fields decompose() const;

    double to_double() const;
    Dyadic to_dyadic() const;
    Rational to_rational() const { return to_dyadic().to_rational(); }

    ProbFloat next_up() const;
    ProbFloat next_down() const;

    int compare(const ProbFloat& o) const;
    bool operator==(const ProbFloat& o) const { return compare(o) == 0; }
    std::strong_ordering operator<=>(const ProbFloat& o) const {
        int c = compare(o);
        return c < 0   ? std::strong_ordering::less
               : c > 0 ? std::strong_ordering::greater
                       : std::strong_ordering::equal;
    }

private:
    ProbFloat(uint64_t bits, ProbConfig cfg) : bits_(bits), cfg_(cfg) {}
    uint64_t bits_;
    ProbConfig cfg_;
};

/// Segmented binary expansion of a value in (0, 1):
///
///   0 . [lead_bit x lead_len] [hi_bits : hi_len] [mid_bit x mid_len]
///       [low_bits : low_len] 0 0 0 ...
///
/// Every field fits a machine word regardless of the exponent range.
struct SegmentedExpansion {
    int64_t lead_len, hi_len, mid_len, low_len;
    int lead_bit, mid_bit;
    uint64_t hi_bits, low_bits;

    int64_t total_len() const { return lead_len + hi_len + mid_len + low_len; }
};

/// Expansion of x - x'. Requires 0 < x - x' < 1.
SegmentedExpansion expand_difference(ProbFloat x, ProbFloat xp);

/// Expansion of 1 - (x + x'). Requires x, x' in [0, 1/2] and 0 < x + x' < 1.
SegmentedExpansion expand_complement_sum(ProbFloat x, ProbFloat xp);

/// Expansion of the difference between the cumulative values encoded by
/// (d, f) and (d', f'), where a pair encodes f when d = 0 and 1 - f when
/// d = 1. The combination d = 0, d' = 1 would encode a negative
/// difference and is a logic error.
SegmentedExpansion expand_dual_difference(int d, ProbFloat f, int dp, ProbFloat fp);

/// Digit l >= 1 of the expansion; digits past the end are zero.
int expansion_digit(const SegmentedExpansion& s, uint64_t l);

}  // namespace rvg
