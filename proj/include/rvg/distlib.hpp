#pragma once

#include <map>
#include <string>
#include <vector>

#include "rvg/dist_spec.hpp"

namespace rvg {

/// A named distribution family with real-valued cumulative and survival
/// functions evaluated in binary64. Parameter domains are enforced at
/// lookup time.
struct Distribution {
    std::string name;
    bool discrete = false;
    std::function<double(double)> cdf;
    std::function<double(double)> sf;
};

/// Distribution names constructible by lookup().
std::vector<std::string> catalog();

/// Binds name + parameters to concrete CDF/SF closures.
/// Throws std::invalid_argument for unknown names or bad parameters.
Distribution lookup(const std::string& name,
                    const std::map<std::string, double>& params);

/// Finite-precision specs: the closure is evaluated in binary64 at the
/// code's value and the result rounded into the probability format.
FiniteCdf make_cdf(const Distribution& d, FormatSpec fmt, ProbConfig prob);
FiniteSf make_sf(const Distribution& d, FormatSpec fmt, ProbConfig prob);
DualDistFn make_dual(const Distribution& d, FormatSpec fmt, ProbConfig prob);

/// The raw evaluation closures behind the spec constructors, for callers
/// that want to validate without the constructors' mandatory check.
FiniteCdf::Fn cdf_eval(const Distribution& d, FormatSpec fmt, ProbConfig prob);
FiniteSf::Fn sf_eval(const Distribution& d, FormatSpec fmt, ProbConfig prob);

enum class UnitRounding { Up, Down };

/// Uniform distribution on the unit interval over a float format: the
/// exact law of an ideal uniform real rounded up (covering (0, 1]) or
/// down (covering [0, 1)) to the format.
FiniteCdf uniform_unit_cdf(FormatSpec fmt, ProbConfig prob, UnitRounding rounding);

}  // namespace rvg
