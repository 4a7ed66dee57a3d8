#include "rvg/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace rvg {

int rational_digit(const Rational& q, uint64_t l) {
    if (q.sign() < 0 || q.compare(Rational(1)) > 0)
        throw std::domain_error("digit extraction outside [0, 1]");
    return q.digit(l);
}

Rational DdgEnumeration::expected_flips() const {
    Rational sum;
    for (const auto& [c, mass] : cost_terms)
        sum = sum + Rational(static_cast<int64_t>(c)) * mass;
    return sum;
}

Rational DdgEnumeration::total_mass() const {
    Rational sum;
    for (const auto& [_, mass] : outcomes) sum = sum + mass;
    return sum;
}

namespace {

// Replay with an exact cutoff; unlike ReplaySource it permits an empty
// prefix, which probes generators that may halt without flipping.
class PrefixProbe final : public BitSource {
public:
    explicit PrefixProbe(const std::vector<uint8_t>& bits) : bits_(bits) {}

protected:
    int generate() override {
        if (pos_ >= bits_.size()) throw SourceExhausted();
        return bits_[pos_++];
    }

private:
    const std::vector<uint8_t>& bits_;
    size_t pos_ = 0;
};

uint64_t pack_bits(const std::vector<uint8_t>& bits, size_t len) {
    uint64_t v = 0;
    for (size_t i = 0; i < len; ++i) v = (v << 1) | (bits[i] & 1);
    return v;
}

}  // namespace

DdgEnumeration enumerate_ddg(const std::function<Code(BitSource&)>& gen, int depth) {
    if (depth < 0 || depth > 64) throw std::invalid_argument("depth outside [0, 64]");
    DdgEnumeration result;
    std::vector<uint8_t> path;
    auto advance = [&path]() -> bool {
        while (!path.empty() && path.back() == 1) path.pop_back();
        if (path.empty()) return false;
        path.back() = 1;
        return true;
    };
    for (;;) {
        PrefixProbe probe(path);
        bool exhausted = false;
        Code out;
        uint64_t used = 0;
        try {
            out = gen(probe);
            used = probe.bits_consumed();
        } catch (const SourceExhausted&) {
            exhausted = true;
        }
        if (!exhausted) {
            Rational mass = Rational::dyadic(1, BigUint(1), -static_cast<int64_t>(used));
            auto [it, fresh] = result.outcomes.emplace(out.bits, mass);
            if (!fresh) it->second = it->second + mass;
            auto [ct, cfresh] = result.cost_terms.emplace(used, mass);
            if (!cfresh) ct->second = ct->second + mass;
            result.halts.push_back(
                {pack_bits(path, used), static_cast<int>(used), out});
            path.resize(used);  // all extensions halt identically
            if (!advance()) break;
        } else if (static_cast<int>(path.size()) < depth) {
            path.push_back(0);
        } else {
            result.residual =
                result.residual + Rational::dyadic(1, BigUint(1), -depth);
            if (!advance()) break;
        }
    }
    return result;
}

// ---------------------------------------------------------------------------

namespace {

// sum of (position) * 2^-position * digit over a block of digits starting
// at start_pos.
Rational weighted_digit_sum(const std::vector<int>& digits, uint64_t start_pos) {
    Rational sum;
    for (size_t i = 0; i < digits.size(); ++i) {
        if (!digits[i]) continue;
        int64_t pos = static_cast<int64_t>(start_pos + i);
        sum = sum + Rational::dyadic(1, BigUint(static_cast<uint64_t>(pos)), -pos);
    }
    return sum;
}

// Cost contribution of one outcome mass: sum_l l * 2^-l * digit_l.
// Long division with remainder-cycle detection keeps the sum exact for
// repeating expansions.
Rational cost_of_mass(const Rational& q) {
    if (q.is_zero() || q == Rational(1)) return Rational();
    std::map<BigUint, uint64_t> seen;
    std::vector<int> digits;
    BigUint rem = q.num();
    const BigUint& den = q.den();
    uint64_t pos = 1;
    for (;;) {
        if (rem.is_zero()) return weighted_digit_sum(digits, 1);
        auto [it, fresh] = seen.emplace(rem, pos);
        if (!fresh) {
            uint64_t s = it->second;
            uint64_t period = pos - s;
            std::vector<int> head(digits.begin(),
                                  digits.begin() + static_cast<int64_t>(s - 1));
            std::vector<int> cycle(digits.begin() + static_cast<int64_t>(s - 1),
                                   digits.end());
            Rational sum = weighted_digit_sum(head, 1);
            // Repeat the cycle: sum_j>=0 of (p + j*T) 2^-(p+jT) d_p
            //   = d_p 2^-p [ p/(1-r) + T r/(1-r)^2 ],  r = 2^-T.
            Rational r = Rational::dyadic(1, BigUint(1),
                                          -static_cast<int64_t>(period));
            Rational one(1);
            Rational geo = one - r;
            Rational inv_geo = Rational::from_parts(1, geo.den(), geo.num());
            Rational drift = r * inv_geo * inv_geo *
                             Rational(static_cast<int64_t>(period));
            for (size_t i = 0; i < cycle.size(); ++i) {
                if (!cycle[i]) continue;
                int64_t p = static_cast<int64_t>(s + i);
                Rational w = Rational(p) * inv_geo + drift;
                sum = sum + Rational::dyadic(1, BigUint(1), -p) * w;
            }
            return sum;
        }
        rem <<= 1;
        if (rem.compare(den) >= 0) {
            rem -= den;
            digits.push_back(1);
        } else {
            digits.push_back(0);
        }
        ++pos;
    }
}

}  // namespace

Rational knuth_yao_cost(const std::vector<Rational>& masses) {
    Rational total;
    Rational sum;
    for (const auto& q : masses) {
        total = total + q;
        sum = sum + cost_of_mass(q);
    }
    if (!(total == Rational(1)))
        throw std::invalid_argument("masses must sum to 1");
    return sum;
}

Rational knuth_yao_cost(const FiniteCdf& f) { return knuth_yao_cost(cdf_masses(f)); }

double shannon_entropy(const std::vector<Rational>& masses) {
    double h = 0;
    for (const auto& q : masses) {
        if (q.is_zero()) continue;
        double p = q.to_double();
        h -= p * std::log2(p);
    }
    return h;
}

std::vector<Rational> cdf_masses(const FiniteCdf& f) {
    int n = f.format().width();
    if (n > 20) throw std::invalid_argument("mass enumeration only for small formats");
    uint64_t count = width_mask(n) + 1;
    std::vector<Rational> masses;
    masses.reserve(count);
    Rational prev;
    for (uint64_t r = 0; r < count; ++r) {
        Rational cur = f.at_rank(r).to_rational();
        masses.push_back(cur - prev);
        prev = cur;
    }
    return masses;
}

std::vector<Rational> ddf_masses(const DualDistFn& g) {
    int n = g.format().width();
    if (n > 20) throw std::invalid_argument("mass enumeration only for small formats");
    uint64_t count = width_mask(n) + 1;
    std::vector<Rational> masses;
    masses.reserve(count);
    Rational prev;
    for (uint64_t r = 0; r < count; ++r) {
        Rational cur = g(g.format().from_rank(r)).cumulative();
        masses.push_back(cur - prev);
        prev = cur;
    }
    return masses;
}

}  // namespace rvg
