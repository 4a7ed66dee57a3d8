#include "rvg/bitops.hpp"

#include <bit>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "rvg/formats.hpp"

namespace rvg {

namespace {

void check_config(ProbConfig cfg) {
    if (cfg.exp_bits < 1 || cfg.exp_bits > 11 || cfg.mant_bits < 1 ||
        cfg.total_bits() > 64)
        throw std::invalid_argument("unsupported probability float config");
}

uint64_t one_bits(ProbConfig cfg) {
    uint64_t bias = (uint64_t{1} << (cfg.exp_bits - 1)) - 1;
    return bias << cfg.mant_bits;
}

uint64_t half_bits(ProbConfig cfg) {
    uint64_t bias = (uint64_t{1} << (cfg.exp_bits - 1)) - 1;
    return (bias - 1) << cfg.mant_bits;
}

}  // namespace

ProbFloat ProbFloat::one(ProbConfig cfg) {
    check_config(cfg);
    return ProbFloat(one_bits(cfg), cfg);
}

ProbFloat ProbFloat::half(ProbConfig cfg) {
    check_config(cfg);
    return ProbFloat(half_bits(cfg), cfg);
}

ProbFloat ProbFloat::from_bits(ProbConfig cfg, uint64_t bits) {
    check_config(cfg);
    if (bits > one_bits(cfg))
        throw std::invalid_argument("probability bits above 1.0");
    return ProbFloat(bits, cfg);
}

ProbFloat ProbFloat::from_double(ProbConfig cfg, double x) {
    check_config(cfg);
    if (std::isnan(x) || x < 0.0 || x > 1.0)
        throw std::invalid_argument("probability outside [0, 1]");
    if (cfg == ProbConfig::binary64())
        return ProbFloat(std::bit_cast<uint64_t>(x), cfg);
    if (cfg == ProbConfig::binary32())
        return ProbFloat(std::bit_cast<uint32_t>(static_cast<float>(x)), cfg);
    if (x == 0.0) return zero(cfg);
    int m = cfg.mant_bits;
    int64_t bias = (int64_t{1} << (cfg.exp_bits - 1)) - 1;
    int e2;
    std::frexp(x, &e2);
    int64_t q = e2 - 1;  // x in [2^q, 2^(q+1))
    if (q >= 1 - bias) {
        // Normal target; the scale is a power of two, so rint performs
        // the single correct rounding.
        double scaled = std::ldexp(x, static_cast<int>(m - q));
        auto r = static_cast<uint64_t>(std::rint(scaled));
        if (r == (uint64_t{2} << m)) {
            r >>= 1;
            ++q;
        }
        uint64_t e = static_cast<uint64_t>(q + bias);
        return ProbFloat((e << m) | (r - (uint64_t{1} << m)), cfg);
    }
    double scaled = std::ldexp(x, static_cast<int>(bias - 1 + m));
    auto r = static_cast<uint64_t>(std::rint(scaled));
    return ProbFloat(r, cfg);  // r = 2^m lands exactly on the first normal
}

bool ProbFloat::is_one() const { return bits_ == one_bits(cfg_); }

ProbFloat::Fields ProbFloat::decompose() const {
    int m = cfg_.mant_bits;
    uint64_t frac = bits_ & width_mask(m);
    uint64_t e = bits_ >> m;
    int64_t bias = (int64_t{1} << (cfg_.exp_bits - 1)) - 1;
    int64_t e_hat = static_cast<int64_t>(e) - bias + (e == 0 ? 1 : 0);
    uint64_t sig = frac + (e != 0 ? (uint64_t{1} << m) : 0);
    return {e_hat, sig};
}

double ProbFloat::to_double() const {
    auto [e, sig] = decompose();
    return std::ldexp(static_cast<double>(sig), static_cast<int>(e - cfg_.mant_bits));
}

Dyadic ProbFloat::to_dyadic() const {
    auto [e, sig] = decompose();
    return Dyadic::make(1, sig, e - cfg_.mant_bits);
}

ProbFloat ProbFloat::next_up() const {
    if (is_one()) throw std::out_of_range("no probability above 1");
    return ProbFloat(bits_ + 1, cfg_);
}

ProbFloat ProbFloat::next_down() const {
    if (is_zero()) throw std::out_of_range("no probability below 0");
    return ProbFloat(bits_ - 1, cfg_);
}

int ProbFloat::compare(const ProbFloat& o) const {
    if (!(cfg_ == o.cfg_))
        throw std::invalid_argument("probability config mismatch");
    return bits_ < o.bits_ ? -1 : (bits_ > o.bits_ ? 1 : 0);
}

// ---------------------------------------------------------------------------

namespace {

struct AlignedPair {
    int64_t shift;        // exponent gap between x and x'
    uint64_t sig, sig_p;  // significands incl. hidden bit
    uint64_t sig_p_hi, sig_p_lo;
};

// Splits the smaller operand's significand at the exponent gap so both
// halves line up against the larger operand's digit positions.
AlignedPair align(ProbFloat x, ProbFloat xp) {
    auto [e, f] = x.decompose();
    auto [ep, fp] = xp.decompose();
    int m = x.config().mant_bits;
    int em = x.config().exp_bits + m;
    int64_t shift = e - ep;
    assert(shift >= 0);
    uint64_t fp_hi = fp >> std::min<int64_t>(shift, em);
    uint64_t fp_lo = fp & ((uint64_t{1} << std::min<int64_t>(shift, m + 1)) - 1);
    return {shift, f, fp, fp_hi, fp_lo};
}

}  // namespace

SegmentedExpansion expand_difference(ProbFloat x, ProbFloat xp) {
    if (!(x.config() == xp.config()))
        throw std::invalid_argument("probability config mismatch");
    if (xp >= x || (x.is_one() && xp.is_zero()))
        throw std::invalid_argument("difference outside (0, 1)");
    int m = x.config().mant_bits;
    auto [e, f] = x.decompose();
    auto a = align(x, xp);
    int at_one = x.is_one() ? 1 : 0;

    SegmentedExpansion s;
    s.lead_len = -e - 1 + at_one;
    s.mid_len = std::max<int64_t>(a.shift - (m + 1), 0);
    s.hi_len = m + 1 - at_one;
    s.low_len = std::min<int64_t>(a.shift, m + 1);
    s.lead_bit = 0;
    s.mid_bit = a.sig_p_lo > 0 ? 1 : 0;
    s.hi_bits = f - a.sig_p_hi - static_cast<uint64_t>(s.mid_bit);
    s.low_bits = (static_cast<uint64_t>(s.mid_bit) << s.low_len) - a.sig_p_lo;

    assert(s.hi_bits < (uint64_t{1} << s.hi_len));
    assert(s.low_len >= 64 || s.low_bits < (uint64_t{1} << s.low_len));
    return s;
}

SegmentedExpansion expand_complement_sum(ProbFloat x, ProbFloat xp) {
    if (!(x.config() == xp.config()))
        throw std::invalid_argument("probability config mismatch");
    ProbFloat h = ProbFloat::half(x.config());
    if (x > h || xp > h) throw std::invalid_argument("operand above 1/2");
    if ((x.is_zero() && xp.is_zero()) || (x == h && xp == h))
        throw std::invalid_argument("sum outside (0, 1)");
    if (x < xp) std::swap(x, xp);
    int m = x.config().mant_bits;
    auto [e, f] = x.decompose();
    auto a = align(x, xp);
    int at_half = (x == h) ? 1 : 0;

    SegmentedExpansion s;
    s.lead_len = -e - 2 + at_half;
    s.mid_len = std::max<int64_t>(a.shift - (m + 1), 0);
    s.hi_len = m + 2 - at_half;
    s.low_len = std::min<int64_t>(a.shift, m + 1);
    s.lead_bit = 1;
    s.mid_bit = a.sig_p_lo > 0 ? 1 : 0;
    s.hi_bits = (uint64_t{1} << s.hi_len) - f - a.sig_p_hi -
                static_cast<uint64_t>(s.mid_bit);
    s.low_bits = (static_cast<uint64_t>(s.mid_bit) << s.low_len) - a.sig_p_lo;

    assert(s.hi_bits < (uint64_t{1} << s.hi_len));
    assert(s.low_len >= 64 || s.low_bits < (uint64_t{1} << s.low_len));
    return s;
}

SegmentedExpansion expand_dual_difference(int d, ProbFloat f, int dp, ProbFloat fp) {
    if (d == 0 && dp == 0) return expand_difference(f, fp);
    if (d == 1 && dp == 1) return expand_difference(fp, f);
    if (d == 1 && dp == 0) return expand_complement_sum(f, fp);
    throw std::logic_error("dual difference would be negative");
}

int expansion_digit(const SegmentedExpansion& s, uint64_t l) {
    assert(l >= 1);
    int64_t pos = static_cast<int64_t>(l);
    if (pos <= s.lead_len) return s.lead_bit;
    pos -= s.lead_len;
    if (pos <= s.hi_len) return (s.hi_bits >> (s.hi_len - pos)) & 1;
    pos -= s.hi_len;
    if (pos <= s.mid_len) return s.mid_bit;
    pos -= s.mid_len;
    if (pos <= s.low_len) return (s.low_bits >> (s.low_len - pos)) & 1;
    return 0;
}

}  // namespace rvg
