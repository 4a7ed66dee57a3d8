#pragma once

#include <functional>
#include <map>
#include <span>
#include <vector>

#include "rvg/dist_spec.hpp"
#include "rvg/entropy.hpp"

namespace rvg {

/// Unsigned integer in a fixed number of 64-bit words, sized once from
/// the probability format so that scaled probabilities and their running
/// doubles always fit. No dynamic growth, no allocation after sizing.
class MultiWordUInt {
public:
    explicit MultiWordUInt(int capacity_bits);

    /// Capacity that fits any scaled probability of the config and one
    /// extra doubling.
    static int capacity_bits_for(ProbConfig cfg) { return cfg.grain_exp() + 2; }
    static MultiWordUInt from_u64(uint64_t v, int capacity_bits);
    /// value(p) / 2^-grain_exp as an integer.
    static MultiWordUInt scaled(ProbFloat p);
    /// Scaled cumulative value of a dual pair.
    static MultiWordUInt scaled(const DualValue& v);

    bool is_zero() const;
    size_t bit_length() const;
    void double_self();                     // *this <<= 1
    void subtract(const MultiWordUInt& o);  // requires *this >= o
    int compare(const MultiWordUInt& o) const;
    bool operator==(const MultiWordUInt& o) const { return compare(o) == 0; }

    double to_double() const;
    Rational to_rational() const;

private:
    std::vector<uint64_t> w_;
};

/// Ratio (i, k) with i/k = (f1 - f2) / (f1 - f0), exact, not reduced.
struct ExactRatio {
    MultiWordUInt num, den;
};
ExactRatio exact_ratio(ProbFloat f0, ProbFloat f2, ProbFloat f1);
ExactRatio exact_ratio(const DualValue& v0, const DualValue& v2, const DualValue& v1);

/// One flip with probability exactly num/den of returning 1.
/// Requires 0 < num < den.
int bernoulli(MultiWordUInt num, const MultiWordUInt& den, BitSource& src);

/// Streams the binary expansion of num/den in (0, 1), never ending in an
/// infinite run of 1s (dyadic values emit their final 1 then zeros).
class BinaryExpansionStream {
public:
    BinaryExpansionStream(MultiWordUInt num, MultiWordUInt den);
    int next();

private:
    MultiWordUInt num_, den_;
    bool done_ = false;
};

/// Prefix-consistent exact probability assignment on bit strings:
/// p(empty) = 1 and p(b) = p(b0) + p(b1).
class RationalBcd {
public:
    using Fn = std::function<Rational(std::span<const uint8_t>)>;

    /// From outcome masses at a fixed depth; prefix sums are precomputed
    /// and the masses must sum to 1.
    static RationalBcd from_outcomes(const std::vector<Rational>& masses, int depth);
    /// Exact block probabilities of a CDF.
    static RationalBcd from_cdf(const FiniteCdf& f);

    Rational operator()(std::span<const uint8_t> prefix) const { return fn_(prefix); }
    int depth() const { return depth_; }

private:
    RationalBcd(Fn fn, int depth) : fn_(std::move(fn)), depth_(depth) {}
    Fn fn_;
    int depth_;
};

struct GenResult {
    Code code;
    uint64_t flips;
};

struct BitsResult {
    std::vector<uint8_t> bits;
    uint64_t flips;
};

/// Entropy-optimal generation of `depth` bits distributed per p, by lazy
/// refinement of the optimal tree; digit comparisons are exact.
BitsResult generate_bits(const RationalBcd& p, BitSource& src, int depth);

/// Entropy-optimal exact variate from a CDF: the produced code x carries
/// probability F(x) - F(pred(x)) exactly.
GenResult generate_opt(const FiniteCdf& f, BitSource& src);
/// Same output distribution via conditional bit sampling (chain rule with
/// exact Bernoulli flips); exact but entropy-suboptimal.
GenResult generate_cbs(const FiniteCdf& f, BitSource& src);

/// Dual-spec variants.
GenResult generate_opt(const DualDistFn& g, BitSource& src);
GenResult generate_cbs(const DualDistFn& g, BitSource& src);

}  // namespace rvg
