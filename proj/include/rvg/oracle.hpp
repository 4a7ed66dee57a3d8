#pragma once

#include <functional>
#include <map>
#include <vector>

#include "rvg/dist_spec.hpp"
#include "rvg/entropy.hpp"
#include "rvg/formats.hpp"
#include "rvg/rational.hpp"

namespace rvg {

/// Digit l >= 1 of the binary expansion of q in [0, 1], never ending in
/// an infinite run of 1s.
int rational_digit(const Rational& q, uint64_t l);

struct HaltRecord {
    uint64_t input_bits;  // consumed prefix, packed msb-first
    int input_len;
    Code output;
};

/// Full map of a generator's behavior on all input strings up to a depth:
/// exact outcome masses, flip-count masses, the halting set itself, and
/// the unexplored mass. Masses plus residual always sum to 1.
struct DdgEnumeration {
    std::map<uint64_t, Rational> outcomes;    // code bits -> mass
    std::map<uint64_t, Rational> cost_terms;  // flip count -> mass
    std::vector<HaltRecord> halts;
    Rational residual;

    Rational expected_flips() const;  // sum of c * Pr(C = c) over halts
    Rational total_mass() const;
};

/// Explores every input path of a deterministic generator by replaying
/// prefixes, depth-first, up to `depth` input bits. The generator must
/// consume bits only through the supplied source.
DdgEnumeration enumerate_ddg(const std::function<Code(BitSource&)>& gen, int depth);

/// Minimal expected flip count of any exact generator for the given
/// outcome masses: sum over outcomes of sum_l l * 2^-l * digit_l(mass).
/// Exact even for non-dyadic masses (periodic expansions are summed in
/// closed form).
Rational knuth_yao_cost(const std::vector<Rational>& masses);
/// Same, for the code-block distribution of a CDF.
Rational knuth_yao_cost(const FiniteCdf& f);

/// Base-2 Shannon entropy of the masses (zero-mass outcomes ignored).
double shannon_entropy(const std::vector<Rational>& masses);

/// Exact block masses F(b) - F(pred(b)) in format order.
std::vector<Rational> cdf_masses(const FiniteCdf& f);
/// Exact block masses of a dual spec.
std::vector<Rational> ddf_masses(const DualDistFn& g);

}  // namespace rvg
