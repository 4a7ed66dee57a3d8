#include "rvg/generators.hpp"

#include <bit>
#include <cassert>
#include <stdexcept>

namespace rvg {

MultiWordUInt::MultiWordUInt(int capacity_bits) {
    if (capacity_bits < 1) throw std::invalid_argument("bad capacity");
    w_.assign(static_cast<size_t>(capacity_bits + 63) / 64, 0);
}

MultiWordUInt MultiWordUInt::from_u64(uint64_t v, int capacity_bits) {
    MultiWordUInt r(capacity_bits);
    r.w_[0] = v;
    return r;
}

MultiWordUInt MultiWordUInt::scaled(ProbFloat p) {
    MultiWordUInt r(capacity_bits_for(p.config()));
    auto [e, sig] = p.decompose();
    if (sig == 0) return r;
    int64_t shift = (int64_t{1} << (p.config().exp_bits - 1)) - 2 + e;
    assert(shift >= 0);
    size_t word = static_cast<size_t>(shift) / 64, bit = static_cast<size_t>(shift) % 64;
    r.w_[word] |= sig << bit;
    if (bit != 0 && word + 1 < r.w_.size()) r.w_[word + 1] |= sig >> (64 - bit);
    return r;
}

MultiWordUInt MultiWordUInt::scaled(const DualValue& v) {
    MultiWordUInt f = scaled(v.f);
    if (v.d == 0) return f;
    MultiWordUInt total(capacity_bits_for(v.f.config()));
    int g = v.f.config().grain_exp();
    total.w_[static_cast<size_t>(g) / 64] = uint64_t{1} << (g % 64);
    total.subtract(f);
    return total;
}

bool MultiWordUInt::is_zero() const {
    for (uint64_t w : w_)
        if (w) return false;
    return true;
}

size_t MultiWordUInt::bit_length() const {
    for (size_t i = w_.size(); i-- > 0;)
        if (w_[i]) return i * 64 + std::bit_width(w_[i]);
    return 0;
}

void MultiWordUInt::double_self() {
    uint64_t carry = 0;
    for (auto& w : w_) {
        uint64_t next = w >> 63;
        w = (w << 1) | carry;
        carry = next;
    }
    assert(carry == 0);
}

void MultiWordUInt::subtract(const MultiWordUInt& o) {
    assert(compare(o) >= 0 && w_.size() == o.w_.size());
    uint64_t borrow = 0;
    for (size_t i = 0; i < w_.size(); ++i) {
        uint64_t before = w_[i];
        uint64_t mid = before - o.w_[i];
        w_[i] = mid - borrow;
        borrow = (before < o.w_[i]) || (mid < borrow);
    }
}

int MultiWordUInt::compare(const MultiWordUInt& o) const {
    assert(w_.size() == o.w_.size());
    for (size_t i = w_.size(); i-- > 0;)
        if (w_[i] != o.w_[i]) return w_[i] < o.w_[i] ? -1 : 1;
    return 0;
}

double MultiWordUInt::to_double() const { return to_rational().to_double(); }

Rational MultiWordUInt::to_rational() const {
    BigUint b;
    for (size_t i = w_.size(); i-- > 0;) {
        b <<= 64;
        b += BigUint(w_[i]);
    }
    return Rational::from_parts(1, std::move(b), BigUint(1));
}

ExactRatio exact_ratio(ProbFloat f0, ProbFloat f2, ProbFloat f1) {
    if (!(f0 < f2 && f2 < f1))
        throw std::invalid_argument("ratio needs f0 < f2 < f1");
    MultiWordUInt num = MultiWordUInt::scaled(f1);
    MultiWordUInt den = num;
    num.subtract(MultiWordUInt::scaled(f2));
    den.subtract(MultiWordUInt::scaled(f0));
    return {std::move(num), std::move(den)};
}

ExactRatio exact_ratio(const DualValue& v0, const DualValue& v2, const DualValue& v1) {
    MultiWordUInt num = MultiWordUInt::scaled(v1);
    MultiWordUInt den = num;
    num.subtract(MultiWordUInt::scaled(v2));
    den.subtract(MultiWordUInt::scaled(v0));
    if (num.is_zero() || den.compare(num) <= 0)
        throw std::invalid_argument("ratio outside (0, 1)");
    return {std::move(num), std::move(den)};
}

int bernoulli(MultiWordUInt num, const MultiWordUInt& den, BitSource& src) {
    if (num.is_zero() || den.compare(num) <= 0)
        throw std::invalid_argument("bernoulli weight outside (0, 1)");
    for (;;) {
        num.double_self();
        int c = num.compare(den);
        if (c == 0) return src.next_bit();  // dyadic tail
        int b = 0;
        if (c > 0) {
            b = 1;
            num.subtract(den);
        }
        if (src.next_bit()) return b;
    }
}

BinaryExpansionStream::BinaryExpansionStream(MultiWordUInt num, MultiWordUInt den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (num_.is_zero() || den_.compare(num_) <= 0)
        throw std::invalid_argument("expansion needs 0 < num < den");
}

int BinaryExpansionStream::next() {
    if (done_) return 0;
    num_.double_self();
    int c = num_.compare(den_);
    if (c == 0) {
        done_ = true;
        return 1;
    }
    if (c > 0) {
        num_.subtract(den_);
        return 1;
    }
    return 0;
}

// ---------------------------------------------------------------------------

RationalBcd RationalBcd::from_outcomes(const std::vector<Rational>& masses, int depth) {
    if (depth < 0 || depth > 24) throw std::invalid_argument("depth out of range");
    if (masses.size() != (size_t{1} << depth))
        throw std::invalid_argument("need 2^depth outcome masses");
    // levels[k][bits] = mass of the prefix block.
    auto levels = std::make_shared<std::vector<std::vector<Rational>>>();
    levels->resize(static_cast<size_t>(depth) + 1);
    (*levels)[static_cast<size_t>(depth)] = masses;
    for (int k = depth; k-- > 0;) {
        auto& up = (*levels)[static_cast<size_t>(k + 1)];
        auto& cur = (*levels)[static_cast<size_t>(k)];
        cur.resize(size_t{1} << k);
        for (size_t b = 0; b < cur.size(); ++b) cur[b] = up[2 * b] + up[2 * b + 1];
    }
    if (!((*levels)[0][0] == Rational(1)))
        throw std::invalid_argument("outcome masses must sum to 1");
    auto fn = [levels, depth](std::span<const uint8_t> prefix) {
        if (prefix.size() > static_cast<size_t>(depth))
            return Rational();
        uint64_t bits = 0;
        for (uint8_t b : prefix) bits = (bits << 1) | (b & 1);
        return (*levels)[prefix.size()][bits];
    };
    return RationalBcd(fn, depth);
}

RationalBcd RationalBcd::from_cdf(const FiniteCdf& f) {
    int n = f.format().width();
    auto fn = [f](std::span<const uint8_t> prefix) {
        uint64_t bits = 0;
        for (uint8_t b : prefix) bits = (bits << 1) | (b & 1);
        auto [lo, hi] = prefix_bounds(f, bits, static_cast<int>(prefix.size()));
        return hi.to_rational() - lo.to_rational();
    };
    return RationalBcd(fn, n);
}

BitsResult generate_bits(const RationalBcd& p, BitSource& src, int depth) {
    if (depth > p.depth()) throw std::invalid_argument("depth beyond distribution");
    uint64_t start = src.bits_consumed();
    std::vector<uint8_t> bits;
    bits.reserve(static_cast<size_t>(depth));
    uint64_t level = 0;
    for (int i = 0; i < depth; ++i) {
        bits.push_back(0);
        Rational p0 = p(bits);
        bits.back() = 1;
        Rational p1 = p(bits);
        int d0 = p0.digit(level), d1 = p1.digit(level);
        if (d0 == 1 && d1 == 0) {
            bits.back() = 0;
            continue;
        }
        if (d0 == 0 && d1 == 1) continue;
        for (;;) {
            int x = src.next_bit();
            ++level;
            if (x == 0 && p0.digit(level) == 1) {
                bits.back() = 0;
                break;
            }
            if (x == 1 && p1.digit(level) == 1) break;
        }
    }
    return {std::move(bits), src.bits_consumed() - start};
}

// ---------------------------------------------------------------------------

namespace {

// Dictionary rank of the midpoint string: prefix, then 0, then all 1s.
uint64_t midpoint_rank(uint64_t prefix, int prefix_len, int n) {
    int tail = n - prefix_len;
    uint64_t block_lo = tail >= 64 ? 0 : prefix << tail;
    return block_lo + width_mask(tail - 1);
}

}  // namespace

GenResult generate_opt(const FiniteCdf& fcdf, BitSource& src) {
    const FormatSpec& fmt = fcdf.format();
    const int n = fmt.width();
    const uint64_t start = src.bits_consumed();
    uint64_t prefix = 0;
    uint64_t level = 0;
    ProbFloat f0 = ProbFloat::zero(fcdf.prob_config());
    ProbFloat f1 = ProbFloat::one(fcdf.prob_config());
    for (int len = 0; len < n; ++len) {
        ProbFloat f2 = fcdf.at_rank(midpoint_rank(prefix, len, n));
        prefix <<= 1;
        if (f2 == f1) continue;  // right half is empty, descend left
        if (f2 == f0) {
            prefix |= 1;
            continue;
        }
        if (f2 < f0 || f1 < f2)
            throw SpecViolation("CDF not monotone at generation time");
        SegmentedExpansion left = expand_difference(f2, f0);
        SegmentedExpansion right = expand_difference(f1, f2);
        int branch = -1;
        if (level > 0) {
            int a0 = expansion_digit(left, level);
            int a1 = expansion_digit(right, level);
            if (a0 == 1 && a1 == 0) branch = 0;
            if (a0 == 0 && a1 == 1) branch = 1;
        }
        while (branch < 0) {
            int x = src.next_bit();
            ++level;
            if (x == 0 && expansion_digit(left, level) == 1) branch = 0;
            if (x == 1 && expansion_digit(right, level) == 1) branch = 1;
        }
        if (branch == 0)
            f1 = f2;
        else {
            prefix |= 1;
            f0 = f2;
        }
    }
    return {fmt.from_rank(prefix), src.bits_consumed() - start};
}

GenResult generate_cbs(const FiniteCdf& fcdf, BitSource& src) {
    const FormatSpec& fmt = fcdf.format();
    const int n = fmt.width();
    const uint64_t start = src.bits_consumed();
    uint64_t prefix = 0;
    ProbFloat f0 = ProbFloat::zero(fcdf.prob_config());
    ProbFloat f1 = ProbFloat::one(fcdf.prob_config());
    for (int len = 0; len < n; ++len) {
        ProbFloat f2 = fcdf.at_rank(midpoint_rank(prefix, len, n));
        prefix <<= 1;
        if (f2 == f1) continue;
        if (f2 == f0) {
            prefix |= 1;
            continue;
        }
        if (f2 < f0 || f1 < f2)
            throw SpecViolation("CDF not monotone at generation time");
        auto [num, den] = exact_ratio(f0, f2, f1);
        if (bernoulli(std::move(num), den, src)) {
            prefix |= 1;
            f0 = f2;
        } else {
            f1 = f2;
        }
    }
    return {fmt.from_rank(prefix), src.bits_consumed() - start};
}

GenResult generate_opt(const DualDistFn& g, BitSource& src) {
    const FormatSpec& fmt = g.format();
    const int n = fmt.width();
    const uint64_t start = src.bits_consumed();
    uint64_t prefix = 0;
    uint64_t level = 0;
    DualValue v0{0, ProbFloat::zero(g.prob_config())};
    DualValue v1{1, ProbFloat::zero(g.prob_config())};
    for (int len = 0; len < n; ++len) {
        DualValue v2 = g(fmt.from_rank(midpoint_rank(prefix, len, n)));
        prefix <<= 1;
        if (v2 == v1) continue;
        if (v2 == v0) {
            prefix |= 1;
            continue;
        }
        if (!DualValue::lte(v0, v2) || !DualValue::lte(v2, v1))
            throw SpecViolation("dual spec not monotone at generation time");
        SegmentedExpansion left = expand_dual_difference(v2.d, v2.f, v0.d, v0.f);
        SegmentedExpansion right = expand_dual_difference(v1.d, v1.f, v2.d, v2.f);
        int branch = -1;
        if (level > 0) {
            int a0 = expansion_digit(left, level);
            int a1 = expansion_digit(right, level);
            if (a0 == 1 && a1 == 0) branch = 0;
            if (a0 == 0 && a1 == 1) branch = 1;
        }
        while (branch < 0) {
            int x = src.next_bit();
            ++level;
            if (x == 0 && expansion_digit(left, level) == 1) branch = 0;
            if (x == 1 && expansion_digit(right, level) == 1) branch = 1;
        }
        if (branch == 0)
            v1 = v2;
        else {
            prefix |= 1;
            v0 = v2;
        }
    }
    return {fmt.from_rank(prefix), src.bits_consumed() - start};
}

GenResult generate_cbs(const DualDistFn& g, BitSource& src) {
    const FormatSpec& fmt = g.format();
    const int n = fmt.width();
    const uint64_t start = src.bits_consumed();
    uint64_t prefix = 0;
    DualValue v0{0, ProbFloat::zero(g.prob_config())};
    DualValue v1{1, ProbFloat::zero(g.prob_config())};
    for (int len = 0; len < n; ++len) {
        DualValue v2 = g(fmt.from_rank(midpoint_rank(prefix, len, n)));
        prefix <<= 1;
        if (v2 == v1) continue;
        if (v2 == v0) {
            prefix |= 1;
            continue;
        }
        if (!DualValue::lte(v0, v2) || !DualValue::lte(v2, v1))
            throw SpecViolation("dual spec not monotone at generation time");
        auto [num, den] = exact_ratio(v0, v2, v1);
        if (bernoulli(std::move(num), den, src)) {
            prefix |= 1;
            v0 = v2;
        } else {
            v1 = v2;
        }
    }
    return {fmt.from_rank(prefix), src.bits_consumed() - start};
}

}  // namespace rvg
