// Small-format distributions shared by the unit and acceptance suites.
#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "rvg/dist_spec.hpp"
#include "rvg/generators.hpp"

namespace fixtures {

using namespace rvg;

// Table-backed CDF; entry r is F at rank r in the format's value order.
inline FiniteCdf table_cdf_over(FormatSpec fmt, ProbConfig prob,
                                std::vector<ProbFloat> table) {
    auto shared = std::make_shared<std::vector<ProbFloat>>(std::move(table));
    return FiniteCdf::checked(
        fmt, prob, [fmt, shared](Code c) { return (*shared)[fmt.rank(c)]; });
}

inline FiniteCdf table_cdf(ProbConfig prob, std::vector<ProbFloat> table) {
    int n = 0;
    while ((size_t{1} << n) < table.size()) ++n;
    return table_cdf_over(FormatSpec::unsigned_int(n), prob, std::move(table));
}

// Uniform over 8 codes: F(r) = (r+1)/8.
inline FiniteCdf dyadic_uniform() {
    ProbConfig prob{3, 2};
    std::vector<ProbFloat> t;
    for (int r = 0; r < 8; ++r)
        t.push_back(ProbFloat::from_double(prob, (r + 1) / 8.0));
    return table_cdf(prob, std::move(t));
}

// All mass on rank 5 of a 3-bit format.
inline FiniteCdf point_mass() {
    ProbConfig prob{3, 2};
    std::vector<ProbFloat> t;
    for (int r = 0; r < 8; ++r)
        t.push_back(r >= 5 ? ProbFloat::one(prob) : ProbFloat::zero(prob));
    return table_cdf(prob, std::move(t));
}

// Two outcomes with non-power-of-two masses 5/16 and 11/16.
inline FiniteCdf two_atom() {
    ProbConfig prob{4, 3};
    return table_cdf(prob, {ProbFloat::from_double(prob, 5.0 / 16),
                            ProbFloat::one(prob)});
}

// The 16-outcome distribution with denominator 137 used in trace tests.
inline const std::array<int, 16>& denom137_weights() {
    static const std::array<int, 16> w = {6,  12, 13, 9, 10, 12, 6,  1,
                                          1,  2,  13, 8, 14, 13, 7,  10};
    return w;
}

inline std::vector<Rational> denom137_masses() {
    std::vector<Rational> m;
    for (int w : denom137_weights()) m.emplace_back(w, 137);
    return m;
}

inline RationalBcd denom137_bcd() {
    return RationalBcd::from_outcomes(denom137_masses(), 4);
}

// Cumulative sums of the 137-distribution rounded into a 4-3 float.
inline FiniteCdf denom137_rounded_cdf() {
    ProbConfig prob{4, 3};
    std::vector<ProbFloat> t;
    int acc = 0;
    for (int w : denom137_weights()) {
        acc += w;
        t.push_back(ProbFloat::from_double(prob, acc / 137.0));
    }
    return table_cdf(prob, std::move(t));
}

// Cumulative values sweep every representable probability of a 3-2 float:
// the highest-entropy distribution the probability format can carry.
inline FiniteCdf max_entropy() {
    ProbConfig prob{3, 2};
    std::vector<ProbFloat> t;
    ProbFloat v = ProbFloat::zero(prob);
    for (int r = 0; r < 16; ++r) {
        if (!v.is_one()) v = v.next_up();
        t.push_back(v);
    }
    return table_cdf(prob, std::move(t));
}

// Sixteenths ramp over a tiny float format: exercises a nontrivial order
// bijection (negative codes, zeros, infinities, the NaN bucket).
inline FiniteCdf tiny_float_ramp() {
    ProbConfig prob{3, 3};
    auto fmt = FormatSpec::ieee(2, 2);
    std::vector<ProbFloat> t;
    for (uint64_t r = 0; r < 32; ++r) {
        uint64_t k = std::min<uint64_t>((r + 2) / 2, 16);
        t.push_back(ProbFloat::from_double(prob, static_cast<double>(k) / 16.0));
    }
    return table_cdf_over(fmt, prob, std::move(t));
}

// Uniform over all 16 two's-complement values.
inline FiniteCdf signed_uniform() {
    ProbConfig prob{3, 3};
    std::vector<ProbFloat> t;
    for (int r = 0; r < 16; ++r)
        t.push_back(ProbFloat::from_double(prob, (r + 1) / 16.0));
    return table_cdf_over(FormatSpec::twos_complement(4), prob, std::move(t));
}

struct NamedCdf {
    const char* name;
    FiniteCdf cdf;
};

inline std::vector<NamedCdf> small_cdf_fixtures() {
    return {{"dyadic-uniform", dyadic_uniform()},
            {"point-mass", point_mass()},
            {"two-atom", two_atom()},
            {"denom137", denom137_rounded_cdf()},
            {"max-entropy", max_entropy()},
            {"tiny-float", tiny_float_ramp()},
            {"signed-uniform", signed_uniform()}};
}

// Exact complement survival function of a CDF whose values are all
// exactly representable after complementing (true for the dyadic
// fixtures here).
inline FiniteSf exact_complement_sf(const FiniteCdf& f) {
    auto prob = f.prob_config();
    return FiniteSf::checked(f.format(), prob, [f, prob](Code c) {
        Rational comp = Rational(1) - f(c).to_rational();
        ProbFloat s = ProbFloat::from_double(prob, comp.to_double());
        if (!(s.to_rational() == comp))
            throw std::invalid_argument("complement not representable");
        return s;
    });
}

}  // namespace fixtures
