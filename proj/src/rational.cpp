#include "rvg/rational.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace rvg {

BigUint::BigUint(uint64_t v) {
    if (v != 0) words_.push_back(v);
}

BigUint BigUint::pow2(unsigned k) {
    BigUint r;
    r.words_.assign(k / 64 + 1, 0);
    r.words_.back() = uint64_t{1} << (k % 64);
    return r;
}

void BigUint::trim() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

bool BigUint::is_pow2() const {
    if (words_.empty()) return false;
    for (size_t i = 0; i + 1 < words_.size(); ++i)
        if (words_[i] != 0) return false;
    return std::has_single_bit(words_.back());
}

size_t BigUint::bit_length() const {
    if (words_.empty()) return 0;
    return (words_.size() - 1) * 64 + std::bit_width(words_.back());
}

bool BigUint::bit(size_t i) const {
    size_t w = i / 64;
    if (w >= words_.size()) return false;
    return (words_[w] >> (i % 64)) & 1;
}

size_t BigUint::trailing_zeros() const {
    assert(!words_.empty());
    size_t i = 0;
    while (words_[i] == 0) ++i;
    return i * 64 + std::countr_zero(words_[i]);
}

int BigUint::compare(const BigUint& o) const {
    if (words_.size() != o.words_.size())
        return words_.size() < o.words_.size() ? -1 : 1;
    for (size_t i = words_.size(); i-- > 0;)
        if (words_[i] != o.words_[i]) return words_[i] < o.words_[i] ? -1 : 1;
    return 0;
}

std::strong_ordering BigUint::operator<=>(const BigUint& o) const {
    int c = compare(o);
    return c < 0   ? std::strong_ordering::less
           : c > 0 ? std::strong_ordering::greater
                   : std::strong_ordering::equal;
}

BigUint& BigUint::operator+=(const BigUint& o) {
    words_.resize(std::max(words_.size(), o.words_.size()) + 1, 0);
    unsigned __int128 carry = 0;
    for (size_t i = 0; i < words_.size(); ++i) {
        unsigned __int128 s = carry + words_[i];
        if (i < o.words_.size()) s += o.words_[i];
        words_[i] = static_cast<uint64_t>(s);
        carry = s >> 64;
    }
    trim();
    return *this;
}

BigUint& BigUint::operator-=(const BigUint& o) {
    assert(compare(o) >= 0);
    uint64_t borrow = 0;
    for (size_t i = 0; i < words_.size(); ++i) {
        uint64_t sub = (i < o.words_.size() ? o.words_[i] : 0);
        uint64_t before = words_[i];
        uint64_t mid = before - sub;
        uint64_t after = mid - borrow;
        borrow = (before < sub) || (mid < borrow);
        words_[i] = after;
    }
    trim();
    return *this;
}

BigUint& BigUint::operator<<=(unsigned k) {
    if (words_.empty() || k == 0) return *this;
    unsigned wordshift = k / 64, bitshift = k % 64;
    size_t n = words_.size();
    words_.resize(n + wordshift + 1, 0);
    for (size_t i = n; i-- > 0;) {
        uint64_t hi = bitshift ? (words_[i] >> (64 - bitshift)) : 0;
        words_[i + wordshift + 1] |= hi;
        words_[i + wordshift] = words_[i] << bitshift;
    }
    for (size_t i = 0; i < wordshift; ++i) words_[i] = 0;
    trim();
    return *this;
}

BigUint& BigUint::operator>>=(unsigned k) {
    if (words_.empty() || k == 0) return *this;
    unsigned wordshift = k / 64, bitshift = k % 64;
    if (wordshift >= words_.size()) {
        words_.clear();
        return *this;
    }
    for (size_t i = 0; i + wordshift < words_.size(); ++i) {
        uint64_t lo = words_[i + wordshift] >> bitshift;
        uint64_t hi = (bitshift && i + wordshift + 1 < words_.size())
                          ? words_[i + wordshift + 1] << (64 - bitshift)
                          : 0;
        words_[i] = lo | hi;
    }
    words_.resize(words_.size() - wordshift);
    trim();
    return *this;
}

BigUint BigUint::operator*(const BigUint& o) const {
    BigUint r;
    if (is_zero() || o.is_zero()) return r;
    r.words_.assign(words_.size() + o.words_.size(), 0);
    for (size_t i = 0; i < words_.size(); ++i) {
        unsigned __int128 carry = 0;
        for (size_t j = 0; j < o.words_.size(); ++j) {
            unsigned __int128 cur = carry + r.words_[i + j] +
                                    (unsigned __int128)words_[i] * o.words_[j];
            r.words_[i + j] = static_cast<uint64_t>(cur);
            carry = cur >> 64;
        }
        r.words_[i + o.words_.size()] += static_cast<uint64_t>(carry);
    }
    r.trim();
    return r;
}

std::pair<BigUint, BigUint> BigUint::divmod(const BigUint& d) const {
    if (d.is_zero()) throw std::domain_error("BigUint: division by zero");
    BigUint q, rem;
    if (compare(d) < 0) return {q, *this};
    size_t nbits = bit_length();
    q.words_.assign((nbits + 63) / 64, 0);
    for (size_t i = nbits; i-- > 0;) {
        rem <<= 1;
        if (bit(i)) {
            if (rem.words_.empty()) rem.words_.push_back(1);
            else rem.words_[0] |= 1;
        }
        if (rem.compare(d) >= 0) {
            rem -= d;
            q.words_[i / 64] |= uint64_t{1} << (i % 64);
        }
    }
    q.trim();
    return {q, rem};
}

BigUint BigUint::gcd(BigUint a, BigUint b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    size_t az = a.trailing_zeros(), bz = b.trailing_zeros();
    size_t shift = std::min(az, bz);
    a >>= az;
    for (;;) {
        b >>= b.trailing_zeros();
        if (a.compare(b) > 0) std::swap(a, b);
        b -= a;
        if (b.is_zero()) return a << static_cast<unsigned>(shift);
    }
}

double BigUint::to_double() const {
    if (words_.empty()) return 0.0;
    size_t nbits = bit_length();
    if (nbits <= 64) return static_cast<double>(words_[0]);
    // Top 64 bits, then scale.
    BigUint top = *this;
    top >>= static_cast<unsigned>(nbits - 64);
    return std::ldexp(static_cast<double>(top.words_[0]),
                      static_cast<int>(nbits - 64));
}

std::string BigUint::to_string() const {
    if (words_.empty()) return "0";
    std::string out;
    BigUint v = *this;
    const BigUint ten(10);
    while (!v.is_zero()) {
        auto [q, r] = v.divmod(ten);
        out.push_back(static_cast<char>('0' + r.low64()));
        v = std::move(q);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------

Rational::Rational(int64_t v) : Rational(v, 1) {}

Rational::Rational(int64_t num, int64_t den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    sign_ = (num == 0) ? 0 : ((num < 0) == (den < 0) ? 1 : -1);
    auto mag = [](int64_t x) {
        return BigUint(x < 0 ? ~static_cast<uint64_t>(x) + 1
                             : static_cast<uint64_t>(x));
    };
    num_ = mag(num);
    den_ = mag(den);
    reduce();
}

Rational Rational::from_parts(int sign, BigUint num, BigUint den) {
    if (den.is_zero()) throw std::domain_error("Rational: zero denominator");
    Rational r;
    r.sign_ = num.is_zero() ? 0 : sign;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    r.reduce();
    return r;
}

Rational Rational::dyadic(int sign, BigUint mant, int64_t exp2) {
    if (exp2 >= 0)
        return from_parts(sign, mant << static_cast<unsigned>(exp2), BigUint(1));
    return from_parts(sign, std::move(mant),
                      BigUint::pow2(static_cast<unsigned>(-exp2)));
}

void Rational::reduce() {
    if (sign_ == 0) {
        num_ = BigUint();
        den_ = BigUint(1);
        return;
    }
    BigUint g = BigUint::gcd(num_, den_);
    if (g.bit_length() > 1 || !g.bit(0)) {
        num_ = num_.divmod(g).first;
        den_ = den_.divmod(g).first;
    }
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.sign_ = -r.sign_;
    return r;
}

Rational Rational::operator+(const Rational& o) const {
    if (sign_ == 0) return o;
    if (o.sign_ == 0) return *this;
    BigUint a = num_ * o.den_;
    BigUint b = o.num_ * den_;
    BigUint den = den_ * o.den_;
    if (sign_ == o.sign_) return from_parts(sign_, a + b, std::move(den));
    int c = a.compare(b);
    if (c == 0) return Rational();
    return c > 0 ? from_parts(sign_, a - b, std::move(den))
                 : from_parts(o.sign_, b - a, std::move(den));
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
    if (sign_ == 0 || o.sign_ == 0) return Rational();
    return from_parts(sign_ * o.sign_, num_ * o.num_, den_ * o.den_);
}

int Rational::compare(const Rational& o) const {
    if (sign_ != o.sign_) return sign_ < o.sign_ ? -1 : 1;
    if (sign_ == 0) return 0;
    int c = (num_ * o.den_).compare(o.num_ * den_);
    return sign_ > 0 ? c : -c;
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    int c = compare(o);
    return c < 0   ? std::strong_ordering::less
           : c > 0 ? std::strong_ordering::greater
                   : std::strong_ordering::equal;
}

int Rational::digit(uint64_t l) const {
    if (sign_ == 0) return 0;
    // floor(|q| * 2^l) mod 2; for the reduced form this never produces a
    // trailing infinite run of 1s.
    if (den_.is_pow2()) {
        size_t k = den_.bit_length() - 1;  // den = 2^k
        if (l > k) return 0;
        return num_.bit(static_cast<size_t>(k - l)) ? 1 : 0;
    }
    BigUint scaled = num_;
    scaled <<= static_cast<unsigned>(l);
    return scaled.divmod(den_).first.bit(0) ? 1 : 0;
}

double Rational::to_double() const {
    if (sign_ == 0) return 0.0;
    double n = num_.to_double(), d = den_.to_double();
    if (std::isfinite(n) && std::isfinite(d)) return sign_ * n / d;
    auto nb = static_cast<int64_t>(num_.bit_length());
    auto db = static_cast<int64_t>(den_.bit_length());
    int64_t shift = nb - db;  // crude exponent split for huge operands
    BigUint num = num_, den = den_;
    if (shift > 0) den <<= static_cast<unsigned>(shift);
    if (shift < 0) num <<= static_cast<unsigned>(-shift);
    return sign_ * std::ldexp(num.to_double() / den.to_double(),
                              static_cast<int>(shift));
}

std::string Rational::to_string() const {
    std::string s;
    if (sign_ < 0) s = "-";
    s += num_.to_string();
    if (den_.bit_length() != 1) s += "/" + den_.to_string();
    return s;
}

// ---------------------------------------------------------------------------

DigitStream::DigitStream(const Rational& q) {
    if (q.sign() < 0 || q.compare(Rational(1)) > 0)
        throw std::domain_error("DigitStream: value outside [0, 1]");
    rem_ = q.num();
    den_ = q.den();
    if (rem_.compare(den_) == 0) rem_ = BigUint();  // 1 = (1.000...), fraction 0
}

int DigitStream::next() {
    ++position_;
    rem_ <<= 1;
    if (rem_.compare(den_) >= 0) {
        rem_ -= den_;
        return 1;
    }
    return 0;
}

// ---------------------------------------------------------------------------

Dyadic Dyadic::make(int sign, uint64_t mant, int64_t exp2) {
    Dyadic d;
    if (mant == 0 || sign == 0) return d;
    int tz = std::countr_zero(mant);
    d.sign = sign < 0 ? -1 : 1;
    d.mant = mant >> tz;
    d.exp2 = exp2 + tz;
    return d;
}

Dyadic Dyadic::from_int(int64_t v) {
    if (v == 0) return Dyadic{};
    uint64_t mag = v < 0 ? ~static_cast<uint64_t>(v) + 1 : static_cast<uint64_t>(v);
    return make(v < 0 ? -1 : 1, mag, 0);
}

int Dyadic::compare(const Dyadic& o) const {
    if (sign != o.sign) return sign < o.sign ? -1 : 1;
    if (sign == 0) return 0;
    auto cmp_mag = [](const Dyadic& a, const Dyadic& b) {
        int64_t atop = a.exp2 + std::bit_width(a.mant);
        int64_t btop = b.exp2 + std::bit_width(b.mant);
        if (atop != btop) return atop < btop ? -1 : 1;
        // Align mantissas below a common msb; widths <= 64 so the shifted
        // compare fits in 128 bits.
        int aw = std::bit_width(a.mant), bw = std::bit_width(b.mant);
        unsigned __int128 am = (unsigned __int128)a.mant << (64 - aw);
        unsigned __int128 bm = (unsigned __int128)b.mant << (64 - bw);
        return am < bm ? -1 : (am > bm ? 1 : 0);
    };
    int c = cmp_mag(*this, o);
    return sign > 0 ? c : -c;
}

std::strong_ordering Dyadic::operator<=>(const Dyadic& o) const {
    int c = compare(o);
    return c < 0   ? std::strong_ordering::less
           : c > 0 ? std::strong_ordering::greater
                   : std::strong_ordering::equal;
}

Rational Dyadic::to_rational() const {
    if (sign == 0) return Rational();
    return Rational::dyadic(sign, BigUint(mant), exp2);
}

double Dyadic::to_double() const {
    if (sign == 0) return 0.0;
    return sign * std::ldexp(static_cast<double>(mant), static_cast<int>(exp2));
}

std::string Dyadic::to_string() const { return to_rational().to_string(); }

}  // namespace rvg
