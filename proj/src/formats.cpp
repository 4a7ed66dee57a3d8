#include "rvg/formats.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace rvg {

uint64_t width_mask(int n) {
    return n >= 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
}

Code::Code(uint64_t b, int w) : bits(b), width(w) {
    if (w < 1 || w > 64) throw std::invalid_argument("Code: width out of range");
    if (b & ~width_mask(w)) throw std::invalid_argument("Code: bits above width");
}

std::string Code::to_bit_string() const {
    std::string s(static_cast<size_t>(width), '0');
    for (int i = 0; i < width; ++i)
        if ((bits >> (width - 1 - i)) & 1) s[static_cast<size_t>(i)] = '1';
    return s;
}

std::string Code::to_hex_string() const {
    int digits = (width + 3) / 4;
    static const char* hex = "0123456789abcdef";
    std::string s(static_cast<size_t>(digits), '0');
    for (int i = 0; i < digits; ++i)
        s[static_cast<size_t>(digits - 1 - i)] = hex[(bits >> (4 * i)) & 0xf];
    return s;
}

int ExtendedReal::compare(const ExtendedReal& o) const {
    auto level = [](RealKind k) {
        switch (k) {
            case RealKind::NegInf: return 0;
            case RealKind::Finite: return 1;
            case RealKind::PosInf: return 2;
            case RealKind::Bottom: return 3;
        }
        return 3;
    };
    int la = level(kind_), lb = level(o.kind_);
    if (la != lb) return la < lb ? -1 : 1;
    if (kind_ == RealKind::Finite) return value_.compare(o.value_);
    return 0;
}

std::strong_ordering ExtendedReal::operator<=>(const ExtendedReal& o) const {
    int c = compare(o);
    return c < 0   ? std::strong_ordering::less
           : c > 0 ? std::strong_ordering::greater
                   : std::strong_ordering::equal;
}

double ExtendedReal::to_double() const {
    switch (kind_) {
        case RealKind::NegInf: return -std::numeric_limits<double>::infinity();
        case RealKind::PosInf: return std::numeric_limits<double>::infinity();
        case RealKind::Bottom: return std::numeric_limits<double>::quiet_NaN();
        case RealKind::Finite: return value_.to_double();
    }
    return 0;
}

std::string ExtendedReal::to_string() const {
    switch (kind_) {
        case RealKind::NegInf: return "-inf";
        case RealKind::PosInf: return "inf";
        case RealKind::Bottom: return "nan";
        case RealKind::Finite: return value_.to_string();
    }
    return {};
}

// ---------------------------------------------------------------------------

FormatSpec FormatSpec::unsigned_int(int n) {
    if (n < 1 || n > 64) throw std::invalid_argument("format width out of range");
    return FormatSpec(FormatKind::UnsignedInt, n);
}

FormatSpec FormatSpec::sign_magnitude(int n) {
    if (n < 2 || n > 64) throw std::invalid_argument("format width out of range");
    return FormatSpec(FormatKind::SignMagnitude, n);
}

FormatSpec FormatSpec::twos_complement(int n) {
    if (n < 2 || n > 64) throw std::invalid_argument("format width out of range");
    return FormatSpec(FormatKind::TwosComplement, n);
}

FormatSpec FormatSpec::fixed_unsigned(int n, int point_offset) {
    FormatSpec f = unsigned_int(n);
    f.kind_ = FormatKind::FixedUnsigned;
    f.point_offset_ = point_offset;
    return f;
}

FormatSpec FormatSpec::fixed_sign_magnitude(int n, int point_offset) {
    FormatSpec f = sign_magnitude(n);
    f.kind_ = FormatKind::FixedSignMagnitude;
    f.point_offset_ = point_offset;
    return f;
}

FormatSpec FormatSpec::fixed_twos_complement(int n, int point_offset) {
    FormatSpec f = twos_complement(n);
    f.kind_ = FormatKind::FixedTwosComplement;
    f.point_offset_ = point_offset;
    return f;
}

FormatSpec FormatSpec::ieee(int exp_bits, int mant_bits) {
    if (exp_bits < 1 || mant_bits < 1 || 1 + exp_bits + mant_bits > 64)
        throw std::invalid_argument("float format out of range");
    FormatSpec f(FormatKind::IeeeFloat, 1 + exp_bits + mant_bits);
    f.exp_bits_ = exp_bits;
    f.mant_bits_ = mant_bits;
    return f;
}

FormatSpec FormatSpec::posit(int n) {
    if (n < 3 || n > 64) throw std::invalid_argument("posit width out of range");
    return FormatSpec(FormatKind::Posit, n);
}

void FormatSpec::check_width(Code c) const {
    if (c.width != width_) throw std::invalid_argument("code width mismatch");
}

namespace {

// Sign-magnitude order bijection on n bits (sign + n-1 magnitude):
// 0 b...  ->  1 ~b...   ;   1 b...  ->  0 b...
uint64_t phi_sm(uint64_t u, int n) {
    uint64_t sign = uint64_t{1} << (n - 1);
    uint64_t mag = width_mask(n - 1);
    if (u & sign) return u & mag;
    return sign | (~u & mag);
}

uint64_t phi_sm_inv(uint64_t c, int n) {
    uint64_t sign = uint64_t{1} << (n - 1);
    uint64_t mag = width_mask(n - 1);
    if (c & sign) return ~c & mag;
    return sign | (c & mag);
}

// NaN block threshold for a float format: the code 1 1^E 0^m. Strings
// above it in dictionary order sit at the top of the value order already.
uint64_t float_nan_threshold(int E, int m) {
    return ((width_mask(E + 1)) << m);
}

}  // namespace

Code FormatSpec::order_to_code(Code u) const {
    check_width(u);
    switch (kind_) {
        case FormatKind::UnsignedInt:
        case FormatKind::FixedUnsigned:
            return u;
        case FormatKind::SignMagnitude:
        case FormatKind::FixedSignMagnitude:
            return Code(phi_sm(u.bits, width_), width_);
        case FormatKind::TwosComplement:
        case FormatKind::FixedTwosComplement:
        case FormatKind::Posit:
            return Code(u.bits ^ (uint64_t{1} << (width_ - 1)), width_);
        case FormatKind::IeeeFloat: {
            uint64_t thr = float_nan_threshold(exp_bits_, mant_bits_);
            if (u.bits > thr) return u;
            uint64_t bias = (uint64_t{1} << mant_bits_) - 1;
            return Code(phi_sm(u.bits + bias, width_), width_);
        }
    }
    throw std::logic_error("unreachable");
}

Code FormatSpec::code_to_order(Code c) const {
    check_width(c);
    switch (kind_) {
        case FormatKind::UnsignedInt:
        case FormatKind::FixedUnsigned:
            return c;
        case FormatKind::SignMagnitude:
        case FormatKind::FixedSignMagnitude:
            return Code(phi_sm_inv(c.bits, width_), width_);
        case FormatKind::TwosComplement:
        case FormatKind::FixedTwosComplement:
        case FormatKind::Posit:
            return Code(c.bits ^ (uint64_t{1} << (width_ - 1)), width_);
        case FormatKind::IeeeFloat: {
            uint64_t thr = float_nan_threshold(exp_bits_, mant_bits_);
            if (c.bits > thr) return c;
            uint64_t bias = (uint64_t{1} << mant_bits_) - 1;
            return Code(phi_sm_inv(c.bits, width_) - bias, width_);
        }
    }
    throw std::logic_error("unreachable");
}

ExtendedReal FormatSpec::value(Code c) const {
    check_width(c);
    int n = width_;
    switch (kind_) {
        case FormatKind::UnsignedInt:
        case FormatKind::FixedUnsigned: {
            int off = kind_ == FormatKind::FixedUnsigned ? point_offset_ : 0;
            return ExtendedReal::finite(Dyadic::make(1, c.bits, -off));
        }
        case FormatKind::SignMagnitude:
        case FormatKind::FixedSignMagnitude: {
            int off = kind_ == FormatKind::FixedSignMagnitude ? point_offset_ : 0;
            uint64_t mag = c.bits & width_mask(n - 1);
            int sign = (c.bits >> (n - 1)) & 1 ? -1 : 1;
            return ExtendedReal::finite(Dyadic::make(sign, mag, -off));
        }
        case FormatKind::TwosComplement:
        case FormatKind::FixedTwosComplement: {
            int off = kind_ == FormatKind::FixedTwosComplement ? point_offset_ : 0;
            if ((c.bits >> (n - 1)) & 1) {
                // -2^(n-1) + low bits
                uint64_t mag = (uint64_t{1} << (n - 1)) - (c.bits & width_mask(n - 1));
                return ExtendedReal::finite(Dyadic::make(-1, mag, -off));
            }
            return ExtendedReal::finite(Dyadic::make(1, c.bits, -off));
        }
        case FormatKind::IeeeFloat: {
            int E = exp_bits_, m = mant_bits_;
            uint64_t frac = c.bits & width_mask(m);
            uint64_t e = (c.bits >> m) & width_mask(E);
            int sign = (c.bits >> (E + m)) & 1 ? -1 : 1;
            uint64_t emax = width_mask(E);
            if (e == emax) {
                if (frac == 0)
                    return sign > 0 ? ExtendedReal::pos_inf() : ExtendedReal::neg_inf();
                return ExtendedReal::bottom();
            }
            int64_t bias = (int64_t{1} << (E - 1)) - 1;
            if (e == 0)
                return ExtendedReal::finite(Dyadic::make(sign, frac, 1 - bias - m));
            uint64_t mant = (uint64_t{1} << m) | frac;
            return ExtendedReal::finite(
                Dyadic::make(sign, mant, static_cast<int64_t>(e) - bias - m));
        }
        case FormatKind::Posit: {
            if (c.bits == 0) return ExtendedReal::finite(Dyadic{});
            if (c.bits == uint64_t{1} << (n - 1)) return ExtendedReal::neg_inf();
            int s = (c.bits >> (n - 1)) & 1;
            // Regime: run of identical bits after the sign, then an optional
            // terminator, then up to 2 exponent bits, then the fraction.
            // Fields cut off by the width are zero.
            int b1 = (c.bits >> (n - 2)) & 1;
            int k = 1;
            while (k < n - 1 && (int)((c.bits >> (n - 2 - k)) & 1) == b1) ++k;
            int pos = 1 + k + 1;  // bits consumed incl. terminator
            int e = 0;
            for (int i = 0; i < 2; ++i) {
                e <<= 1;
                if (pos + i < n) e |= (c.bits >> (n - 1 - (pos + i))) & 1;
            }
            int mbits = n - pos - 2 > 0 ? n - pos - 2 : 0;
            uint64_t frac = mbits > 0 ? c.bits & width_mask(mbits) : 0;
            int64_t regime = b1 ? k - 1 : -k;
            int64_t q = (1 - 2 * s) * (4 * regime + e + s);
            if (s == 0) {
                // (1 + 0.frac) * 2^q
                uint64_t mant = (uint64_t{1} << mbits) | frac;
                return ExtendedReal::finite(Dyadic::make(1, mant, q - mbits));
            }
            // (-2 + 0.frac) * 2^q
            uint64_t mant = (uint64_t{2} << mbits) - frac;
            return ExtendedReal::finite(Dyadic::make(-1, mant, q - mbits));
        }
    }
    throw std::logic_error("unreachable");
}

double FormatSpec::value_double(Code c) const { return value(c).to_double(); }

Code FormatSpec::succ(Code c) const {
    uint64_t r = rank(c);
    if (r == width_mask(width_)) throw std::out_of_range("succ of maximal code");
    return from_rank(r + 1);
}

Code FormatSpec::pred(Code c) const {
    uint64_t r = rank(c);
    if (r == 0) throw std::out_of_range("pred of minimal code");
    return from_rank(r - 1);
}

std::strong_ordering FormatSpec::compare(Code a, Code b) const {
    uint64_t ra = rank(a), rb = rank(b);
    return ra <=> rb;
}

// ---------------------------------------------------------------------------

namespace {

std::map<std::string, std::string> parse_kv(const std::string& body) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad format field: " + item);
        kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return kv;
}

int to_int(const std::string& s) {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad integer: " + s);
    return v;
}

}  // namespace

FormatSpec FormatSpec::parse(const std::string& descriptor) {
    if (descriptor == "f32") return binary32();
    if (descriptor == "f64") return binary64();
    auto colon = descriptor.find(':');
    std::string head = descriptor.substr(0, colon);
    std::string body = colon == std::string::npos ? "" : descriptor.substr(colon + 1);
    if (head == "uint") return unsigned_int(to_int(body));
    if (head == "int") return twos_complement(to_int(body));
    if (head == "sm") return sign_magnitude(to_int(body));
    if (head == "posit") return posit(to_int(body));
    if (head == "float") {
        auto kv = parse_kv(body);
        return ieee(to_int(kv.at("E")), to_int(kv.at("m")));
    }
    if (head == "fixed") {
        auto kv = parse_kv(body);
        int n = to_int(kv.at("n"));
        int m = kv.count("m") ? to_int(kv.at("m")) : 0;
        std::string s = kv.count("signed") ? kv.at("signed") : "u";
        if (s == "u") return fixed_unsigned(n, m);
        if (s == "sm") return fixed_sign_magnitude(n, m);
        if (s == "tc") return fixed_twos_complement(n, m);
        throw std::invalid_argument("bad signedness: " + s);
    }
    throw std::invalid_argument("unknown format descriptor: " + descriptor);
}

std::string FormatSpec::descriptor() const {
    switch (kind_) {
        case FormatKind::UnsignedInt: return "uint:" + std::to_string(width_);
        case FormatKind::SignMagnitude: return "sm:" + std::to_string(width_);
        case FormatKind::TwosComplement: return "int:" + std::to_string(width_);
        case FormatKind::FixedUnsigned:
            return "fixed:n=" + std::to_string(width_) + ",m=" + std::to_string(point_offset_) + ",signed=u";
        case FormatKind::FixedSignMagnitude:
            return "fixed:n=" + std::to_string(width_) + ",m=" + std::to_string(point_offset_) + ",signed=sm";
        case FormatKind::FixedTwosComplement:
            return "fixed:n=" + std::to_string(width_) + ",m=" + std::to_string(point_offset_) + ",signed=tc";
        case FormatKind::IeeeFloat:
            if (exp_bits_ == 8 && mant_bits_ == 23) return "f32";
            if (exp_bits_ == 11 && mant_bits_ == 52) return "f64";
            return "float:E=" + std::to_string(exp_bits_) + ",m=" + std::to_string(mant_bits_);
        case FormatKind::Posit: return "posit:" + std::to_string(width_);
    }
    return {};
}

}  // namespace rvg
