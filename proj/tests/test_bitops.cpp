#include "doctest.h"

#include <bit>
#include <random>
#include <stdexcept>
#include <vector>

#include "rvg/bitops.hpp"

using namespace rvg;

namespace {

ProbFloat pf(ProbConfig cfg, double x) { return ProbFloat::from_double(cfg, x); }

// All probability values of a small config, in increasing order.
std::vector<ProbFloat> all_probs(ProbConfig cfg) {
    std::vector<ProbFloat> v;
    uint64_t top = ProbFloat::one(cfg).bits();
    for (uint64_t b = 0; b <= top; ++b) v.push_back(ProbFloat::from_bits(cfg, b));
    return v;
}

int oracle_digit(const Rational& q, uint64_t l) { return q.digit(l); }

}  // namespace

TEST_CASE("probability float basics") {
    auto cfg = ProbConfig{4, 3};
    CHECK(ProbFloat::zero(cfg).to_double() == 0.0);
    CHECK(ProbFloat::one(cfg).to_double() == 1.0);
    CHECK(ProbFloat::half(cfg).to_double() == 0.5);
    CHECK(ProbFloat::grain(cfg).to_rational() ==
          Rational::dyadic(1, BigUint(1), -cfg.grain_exp()));
    CHECK(cfg.grain_exp() == 9);
    CHECK_THROWS_AS(pf(cfg, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(pf(cfg, -0.1), std::invalid_argument);
}

TEST_CASE("rounding into a small config is round-to-nearest-even") {
    auto cfg = ProbConfig{4, 3};
    // Spacing in [1/2, 1) is 2^-4.
    CHECK(pf(cfg, 0.5).to_double() == 0.5);
    CHECK(pf(cfg, 0.5 + 1.0 / 64).to_double() == 0.5);        // below midpoint
    CHECK(pf(cfg, 0.5 + 3.0 / 64).to_double() == 0.5625);     // above midpoint
    CHECK(pf(cfg, 0.5 + 1.0 / 32).to_double() == 0.5);        // tie to even
    CHECK(pf(cfg, 0.5625 + 1.0 / 32).to_double() == 0.625);   // tie to even
    CHECK(pf(cfg, 1.0 - 1e-12).to_double() == 1.0);
    // Subnormals: spacing 2^-9 below 2^-6.
    CHECK(pf(cfg, 1.0 / 512).to_double() == 1.0 / 512);
    CHECK(pf(cfg, 1.4 / 512).to_double() == 1.0 / 512);
    CHECK(pf(cfg, 1.6 / 512).to_double() == 2.0 / 512);
    CHECK(pf(cfg, 1.0 / 2048).to_double() == 0.0);
}

TEST_CASE("generic rounding matches host float rounding") {
    std::mt19937_64 rng(21);
    auto host = ProbConfig::binary32();
    for (int i = 0; i < 100000; ++i) {
        double x = std::ldexp(static_cast<double>(rng() >> 11), -53);
        ProbFloat a = pf(host, x);
        CHECK(a.bits() == std::bit_cast<uint32_t>(static_cast<float>(x)));
        CHECK(a.to_double() == static_cast<double>(static_cast<float>(x)));
    }
}

TEST_CASE("difference expansion on dyadic spot cases") {
    auto cfg = ProbConfig::binary32();
    // 0.75 - 0.25 = 0.5 = (0.1)_2
    auto s = expand_difference(pf(cfg, 0.75), pf(cfg, 0.25));
    CHECK(expansion_digit(s, 1) == 1);
    for (uint64_t l = 2; l < 40; ++l) CHECK(expansion_digit(s, l) == 0);
    // 1.0 - 0.5 = 0.5 exercises the value-one entry path.
    auto t = expand_difference(pf(cfg, 1.0), pf(cfg, 0.5));
    CHECK(expansion_digit(t, 1) == 1);
    for (uint64_t l = 2; l < 40; ++l) CHECK(expansion_digit(t, l) == 0);
}

TEST_CASE("difference expansion rejects bad operands") {
    auto cfg = ProbConfig::binary32();
    CHECK_THROWS_AS(expand_difference(pf(cfg, 0.25), pf(cfg, 0.75)),
                    std::invalid_argument);
    CHECK_THROWS_AS(expand_difference(pf(cfg, 0.5), pf(cfg, 0.5)),
                    std::invalid_argument);
    CHECK_THROWS_AS(expand_difference(pf(cfg, 1.0), pf(cfg, 0.0)),
                    std::invalid_argument);
}

TEST_CASE("difference digits match the exact rational difference") {
    std::mt19937_64 rng(31);
    auto cfg = ProbConfig::binary32();
    for (int i = 0; i < 2000; ++i) {
        double a = std::ldexp(static_cast<double>(rng() >> 11), -53);
        double b = std::ldexp(static_cast<double>(rng() >> 11), -53);
        ProbFloat x = pf(cfg, std::max(a, b)), y = pf(cfg, std::min(a, b));
        if (x == y || (x.is_one() && y.is_zero())) continue;
        auto s = expand_difference(x, y);
        Rational diff = x.to_rational() - y.to_rational();
        for (uint64_t l = 1; l <= 300; ++l)
            CHECK(expansion_digit(s, l) == oracle_digit(diff, l));
    }
}

TEST_CASE("complement-sum expansion on spot cases") {
    auto cfg = ProbConfig::binary32();
    // 1 - (0.25 + 0.25) = 0.5
    auto s = expand_complement_sum(pf(cfg, 0.25), pf(cfg, 0.25));
    CHECK(expansion_digit(s, 1) == 1);
    CHECK(expansion_digit(s, 2) == 0);
    // 1 - (0.5 + 0.25) = 0.25 = (0.01)_2; exercises the value-half path.
    auto t = expand_complement_sum(pf(cfg, 0.5), pf(cfg, 0.25));
    CHECK(expansion_digit(t, 1) == 0);
    CHECK(expansion_digit(t, 2) == 1);
    CHECK(expansion_digit(t, 3) == 0);
    CHECK_THROWS_AS(expand_complement_sum(pf(cfg, 0.75), pf(cfg, 0.1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(expand_complement_sum(pf(cfg, 0.5), pf(cfg, 0.5)),
                    std::invalid_argument);
}

TEST_CASE("complement-sum digits match the exact rational value") {
    std::mt19937_64 rng(32);
    auto cfg = ProbConfig::binary32();
    for (int i = 0; i < 2000; ++i) {
        double a = std::ldexp(static_cast<double>(rng() >> 11), -54);
        double b = std::ldexp(static_cast<double>(rng() >> 11), -54);
        ProbFloat x = pf(cfg, a), y = pf(cfg, b);
        if (x.is_zero() && y.is_zero()) continue;
        auto s = expand_complement_sum(x, y);
        Rational val = Rational(1) - (x.to_rational() + y.to_rational());
        for (uint64_t l = 1; l <= 300; ++l)
            CHECK(expansion_digit(s, l) == oracle_digit(val, l));
    }
}

TEST_CASE("dual dispatch covers three cases and rejects the fourth") {
    auto cfg = ProbConfig::binary32();
    auto same = [](const SegmentedExpansion& a, const SegmentedExpansion& b) {
        return a.lead_len == b.lead_len && a.hi_len == b.hi_len &&
               a.mid_len == b.mid_len && a.low_len == b.low_len &&
               a.lead_bit == b.lead_bit && a.mid_bit == b.mid_bit &&
               a.hi_bits == b.hi_bits && a.low_bits == b.low_bits;
    };
    CHECK(same(expand_dual_difference(0, pf(cfg, 0.5), 0, pf(cfg, 0.25)),
               expand_difference(pf(cfg, 0.5), pf(cfg, 0.25))));
    CHECK(same(expand_dual_difference(1, pf(cfg, 0.25), 1, pf(cfg, 0.375)),
               expand_difference(pf(cfg, 0.375), pf(cfg, 0.25))));
    CHECK(same(expand_dual_difference(1, pf(cfg, 0.25), 0, pf(cfg, 0.25)),
               expand_complement_sum(pf(cfg, 0.25), pf(cfg, 0.25))));
    CHECK_THROWS_AS(expand_dual_difference(0, pf(cfg, 0.25), 1, pf(cfg, 0.25)),
                    std::logic_error);
}

TEST_CASE("digits past the segments are zero") {
    auto cfg = ProbConfig{4, 3};
    auto probs = all_probs(cfg);
    for (const auto& x : probs)
        for (const auto& y : probs) {
            if (y >= x || (x.is_one() && y.is_zero())) continue;
            auto s = expand_difference(x, y);
            int64_t total = s.total_len();
            for (int64_t k = 1; k <= 8; ++k)
                CHECK(expansion_digit(s, static_cast<uint64_t>(total + k)) == 0);
        }
}

TEST_CASE("exhaustive small-config difference against the oracle") {
    auto cfg = ProbConfig{4, 3};
    auto probs = all_probs(cfg);
    uint64_t max_l = static_cast<uint64_t>((1 << (cfg.exp_bits - 1)) + cfg.mant_bits + 4);
    for (const auto& x : probs)
        for (const auto& y : probs) {
            if (y >= x || (x.is_one() && y.is_zero())) continue;
            auto s = expand_difference(x, y);
            Rational diff = x.to_rational() - y.to_rational();
            for (uint64_t l = 1; l <= max_l; ++l)
                CHECK(expansion_digit(s, l) == oracle_digit(diff, l));
        }
}

TEST_CASE("reconstruction: digits sum back to the exact difference") {
    auto cfg = ProbConfig{3, 4};
    auto probs = all_probs(cfg);
    for (const auto& x : probs)
        for (const auto& y : probs) {
            if (y >= x || (x.is_one() && y.is_zero())) continue;
            auto s = expand_difference(x, y);
            Rational sum;
            for (int64_t l = 1; l <= s.total_len(); ++l)
                if (expansion_digit(s, static_cast<uint64_t>(l)))
                    sum = sum + Rational::dyadic(1, BigUint(1), -l);
            CHECK(sum == x.to_rational() - y.to_rational());
        }
}
