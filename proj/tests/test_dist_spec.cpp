#include "doctest.h"

#include <cmath>
#include <set>

#include "fixtures.hpp"
#include "rvg/dist_spec.hpp"

using namespace rvg;

namespace {

ProbFloat pf(ProbConfig cfg, double x) { return ProbFloat::from_double(cfg, x); }

}  // namespace

TEST_CASE("validator flags non-monotone callbacks with a witness") {
    ProbConfig prob{3, 2};
    auto fmt = FormatSpec::unsigned_int(4);
    auto parity = FiniteCdf::trusted(fmt, prob, [prob](Code c) {
        return std::popcount(c.bits) % 2 ? ProbFloat::one(prob) : ProbFloat::zero(prob);
    });
    auto rep = validate(parity);
    CHECK(!rep.ok());
    CHECK(!rep.violations.empty());
    auto [a, b] = rep.violations.front();
    CHECK(parity(a) > parity(b));
    CHECK_THROWS_AS(FiniteCdf::checked(fmt, prob, [prob](Code c) {
                        return std::popcount(c.bits) % 2 ? ProbFloat::one(prob)
                                                         : ProbFloat::zero(prob);
                    }),
                    SpecViolation);
}

TEST_CASE("validator checks the endpoint value") {
    ProbConfig prob{3, 2};
    auto fmt = FormatSpec::unsigned_int(4);
    auto half_top = FiniteCdf::trusted(fmt, prob, [prob](Code) { return pf(prob, 0.5); });
    auto rep = validate(half_top);
    CHECK(!rep.endpoint_ok);
    CHECK(!rep.ok());
}

TEST_CASE("valid fixtures pass validation") {
    for (auto& [name, cdf] : fixtures::small_cdf_fixtures()) {
        CAPTURE(name);
        CHECK(validate(cdf).ok());
    }
}

TEST_CASE("prefix bounds") {
    auto f = fixtures::dyadic_uniform();
    auto prob = f.prob_config();
    SUBCASE("empty prefix spans everything") {
        auto [lo, hi] = prefix_bounds(f, 0, 0);
        CHECK(lo == ProbFloat::zero(prob));
        CHECK(hi == ProbFloat::one(prob));
    }
    SUBCASE("one-bit prefix") {
        auto [lo, hi] = prefix_bounds(f, 0, 1);
        CHECK(lo == ProbFloat::zero(prob));
        CHECK(hi == pf(prob, 0.5));
    }
}

TEST_CASE("prefix block mass is additive") {
    for (auto& [name, cdf] : fixtures::small_cdf_fixtures()) {
        CAPTURE(name);
        int n = cdf.format().width();
        for (int len = 0; len < n; ++len) {
            for (uint64_t bits = 0; bits < (uint64_t{1} << len); ++bits) {
                auto whole = prefix_bounds(cdf, bits, len);
                auto left = prefix_bounds(cdf, bits << 1, len + 1);
                auto right = prefix_bounds(cdf, (bits << 1) | 1, len + 1);
                Rational pw = whole.second.to_rational() - whole.first.to_rational();
                Rational pl = left.second.to_rational() - left.first.to_rational();
                Rational pr = right.second.to_rational() - right.first.to_rational();
                CHECK(pw == pl + pr);
            }
        }
    }
}

TEST_CASE("quantile on the dyadic uniform") {
    auto f = fixtures::dyadic_uniform();
    CHECK(quantile(f, pf(f.prob_config(), 0.5)) == Code(3, 3));
    CHECK(quantile(f, ProbFloat::one(f.prob_config())) == Code(7, 3));
    CHECK(quantile(f, ProbFloat::zero(f.prob_config())) == Code(0, 3));
}

TEST_CASE("quantile is the Galois adjoint of the CDF") {
    for (auto& [name, cdf] : fixtures::small_cdf_fixtures()) {
        CAPTURE(name);
        auto& fmt = cdf.format();
        uint64_t codes = width_mask(fmt.width()) + 1;
        uint64_t top = ProbFloat::one(cdf.prob_config()).bits();
        for (uint64_t qb = 0; qb <= top; ++qb) {
            ProbFloat q = ProbFloat::from_bits(cdf.prob_config(), qb);
            Code qc = quantile(cdf, q);
            for (uint64_t r = 0; r < codes; ++r) {
                bool holds = q <= cdf.at_rank(r);
                bool le = fmt.rank(qc) <= r;
                CHECK(holds == le);
            }
        }
    }
}

TEST_CASE("dual spec assembled from CDF and SF tails") {
    auto f = fixtures::dyadic_uniform();
    auto s = fixtures::exact_complement_sf(f);
    auto g = make_ddf(f, s);
    CHECK(g.cutoff() == Code(4, 3));
    for (uint64_t r = 0; r < 8; ++r) {
        Code c = g.format().from_rank(r);
        CHECK(g(c).cumulative() == f(c).to_rational());
    }
    CHECK(validate(g).ok());
}

TEST_CASE("dual assembly keeps each tail's values exactly") {
    // A survival function that is deliberately not the complement of F.
    auto f = fixtures::dyadic_uniform();
    auto prob = f.prob_config();
    auto fmt = f.format();
    static const double sv[8] = {1.0, 0.75, 0.75, 0.5, 0.25, 0.25, 0.125, 0.0};
    auto s = FiniteSf::checked(fmt, prob, [prob](Code c) {
        return ProbFloat::from_double(prob, sv[c.bits]);
    });
    auto g = make_ddf(f, s);
    uint64_t cut = fmt.rank(g.cutoff());
    CHECK(cut == 4);
    for (uint64_t r = 0; r < 8; ++r) {
        Code c = fmt.from_rank(r);
        Rational want = r < cut ? f(c).to_rational()
                                : Rational(1) - s(c).to_rational();
        CHECK(g(c).cumulative() == want);
    }
}

TEST_CASE("dual construction rejects a survival function stuck above half") {
    auto f = fixtures::dyadic_uniform();
    auto prob = f.prob_config();
    auto fmt = f.format();
    auto stuck = FiniteSf::checked(fmt, prob, [fmt, prob](Code c) {
        return c.bits == width_mask(fmt.width()) ? ProbFloat::zero(prob)
                                                 : pf(prob, 0.75);
    });
    CHECK_THROWS_AS(make_ddf(f, stuck), SpecViolation);
}

TEST_CASE("survival function alone lifts into a dual spec") {
    auto f = fixtures::dyadic_uniform();
    auto s = fixtures::exact_complement_sf(f);
    auto g = sf_as_ddf(s);
    for (uint64_t r = 0; r < 8; ++r) {
        Code c = g.format().from_rank(r);
        CHECK(g(c).cumulative() == f(c).to_rational());
        // Right tail keeps the survival value itself.
        if (s(c) < ProbFloat::half(g.prob_config())) CHECK(g(c).d == 1);
    }
}

TEST_CASE("constant survival function fails validation") {
    ProbConfig prob{3, 2};
    auto fmt = FormatSpec::unsigned_int(3);
    auto rep = validate(FiniteSf::trusted(fmt, prob, [prob](Code) { return pf(prob, 0.3125); }));
    CHECK(!rep.endpoint_ok);
    CHECK_THROWS_AS(FiniteSf::checked(fmt, prob, [prob](Code) { return pf(prob, 0.3125); }),
                    SpecViolation);
}

TEST_CASE("dual validation rejects values in the ambiguous half") {
    ProbConfig prob{3, 2};
    auto fmt = FormatSpec::unsigned_int(2);
    auto bad = [prob](Code c) -> DualValue {
        if (c.bits == 3) return {1, ProbFloat::zero(prob)};
        return {0, pf(prob, 0.75)};  // f above 1/2
    };
    CHECK_THROWS_AS(DualDistFn::checked(fmt, prob, bad, Code(3, 2)), SpecViolation);
}

TEST_CASE("dual quantile boundary semantics") {
    auto f = fixtures::dyadic_uniform();
    auto g = make_ddf(f, fixtures::exact_complement_sf(f));
    auto prob = g.prob_config();
    CHECK(quantile(g, DualValue{0, ProbFloat::zero(prob)}) == Code(0, 3));
    // Total mass: the first code whose cumulative value is exactly 1.
    CHECK(quantile(g, DualValue{1, ProbFloat::zero(prob)}) == Code(7, 3));
    // First code at or past cumulative 1/2.
    CHECK(quantile(g, DualValue{0, pf(prob, 0.5)}) == Code(3, 3));
}

TEST_CASE("support range of small fixtures") {
    auto pm = fixtures::point_mass();
    auto [lo, hi] = support_range(pm);
    CHECK(lo == ExtendedReal::finite(Dyadic::from_int(5)));
    CHECK(hi == ExtendedReal::finite(Dyadic::from_int(5)));

    auto f = fixtures::dyadic_uniform();
    auto [ulo, uhi] = support_range(f);
    CHECK(ulo == ExtendedReal::finite(Dyadic::from_int(0)));
    CHECK(uhi == ExtendedReal::finite(Dyadic::from_int(7)));
}

TEST_CASE("coverage density closed form") {
    Rational full = coverage_density(5, 2, 0);
    CHECK(full == Rational(1, 4 * 15 + 1));
    CHECK(coverage_density(11, 52, 53).to_double() == doctest::Approx(0.001955).epsilon(1e-3));
    CHECK(coverage_density(8, 23, 32).to_double() == doctest::Approx(0.07874).epsilon(1e-3));
    CHECK_THROWS_AS(coverage_density(8, 23, 127), std::out_of_range);
    CHECK_THROWS_AS(coverage_density(8, 23, -1), std::out_of_range);
}

TEST_CASE("running-max repair turns a broken callback into a valid one") {
    ProbConfig prob{3, 2};
    auto fmt = FormatSpec::unsigned_int(4);
    auto wobble = [prob](Code c) {
        double base = (c.bits % 3 == 0) ? 0.2 : 0.1 + 0.05 * static_cast<double>(c.bits);
        return pf(prob, std::min(base, 1.0));
    };
    auto repaired = monotone_repair(fmt, prob, wobble);
    CHECK(validate(repaired).ok());
}

// Doubling of representable cumulative values when a CDF's left tail and
// an SF's right tail are combined, on the exponential over a toy
// 4-mantissa-bit float with bias 4 covering [0, 4].
TEST_CASE("dual representation doubles the representable values") {
    const int m = 4, bias = 4;
    auto round_toy = [&](double x) -> Rational {
        // round-to-nearest-even at mantissa m, min normal exponent 1-bias
        if (x <= 0) return Rational();
        int e2;
        std::frexp(x, &e2);
        int64_t q = e2 - 1;
        int64_t scale = q >= 1 - bias ? m - q : bias - 1 + m;
        double scaled = std::ldexp(x, static_cast<int>(scale));
        auto r = static_cast<int64_t>(std::rint(scaled));
        return Rational(r, 1) * Rational::dyadic(1, BigUint(1), -scale);
    };
    // x grid: all toy floats in [0, 4].
    std::vector<double> grid;
    for (int f = 0; f < (1 << m); ++f)
        grid.push_back(std::ldexp(f, 1 - bias - m));  // subnormals
    for (int e = 1 - bias; std::ldexp(1.0, e) <= 4.0; ++e)
        for (int f = 0; f < (1 << m); ++f) {
            double v = std::ldexp(1.0 + std::ldexp(f, -m), e);
            if (v <= 4.0) grid.push_back(v);
        }
    CHECK(grid.size() == 97);
    // Cutoff: first x whose rounded CDF reaches succ(1/2) = 17/32.
    Rational succ_half(17, 32);
    double cutoff = 0;
    for (double x : grid)
        if (round_toy(-std::expm1(-x)).compare(succ_half) >= 0) {
            cutoff = x;
            break;
        }
    CHECK(cutoff == 0.75);
    std::set<Rational> cdf_left, cdf_all, sf_right, sf_all, dual;
    for (double x : grid) {
        Rational fc = round_toy(-std::expm1(-x));
        Rational fs = round_toy(std::exp(-x));
        cdf_all.insert(fc);
        sf_all.insert(fs);
        if (x < cutoff) {
            cdf_left.insert(fc);
            dual.insert(fc);
        } else {
            sf_right.insert(fs);
            dual.insert(Rational(1) - fs);
        }
    }
    CHECK(cdf_all.size() == 62);
    CHECK(sf_all.size() == 53);
    CHECK(cdf_left.size() == 47);
    CHECK(sf_right.size() == 35);
    CHECK(dual.size() == 82);
}
