#include "rvg/distlib.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rvg {

namespace {

double require(const std::map<std::string, double>& params, const std::string& key) {
    auto it = params.find(key);
    if (it == params.end())
        throw std::invalid_argument("missing parameter '" + key + "'");
    return it->second;
}

void check(bool cond, const std::string& what) {
    if (!cond) throw std::invalid_argument("parameter domain: " + what);
}

constexpr double kSqrt2 = 1.4142135623730951;

}  // namespace

std::vector<std::string> catalog() {
    return {"cauchy",  "exponential", "flat",     "gaussian", "geometric",
            "gumbel1", "gumbel2",     "laplace",  "logistic", "pareto",
            "rayleigh", "weibull"};
}

Distribution lookup(const std::string& name,
                    const std::map<std::string, double>& params) {
    Distribution d;
    d.name = name;
    if (name == "exponential") {
        double s = require(params, "s");
        check(s > 0, "s > 0");
        d.cdf = [s](double x) { return x <= 0 ? 0.0 : -std::expm1(-x / s); };
        d.sf = [s](double x) { return x <= 0 ? 1.0 : std::exp(-x / s); };
    } else if (name == "cauchy") {
        double a = require(params, "a");
        check(a > 0, "a > 0");
        d.cdf = [a](double x) { return 0.5 + std::atan(x / a) / M_PI; };
        d.sf = [a](double x) { return 0.5 - std::atan(x / a) / M_PI; };
    } else if (name == "flat") {
        double a = require(params, "a"), b = require(params, "b");
        check(a < b, "a < b");
        d.cdf = [a, b](double x) {
            return x <= a ? 0.0 : (x >= b ? 1.0 : (x - a) / (b - a));
        };
        d.sf = [a, b](double x) {
            return x <= a ? 1.0 : (x >= b ? 0.0 : (b - x) / (b - a));
        };
    } else if (name == "gaussian") {
        double s = require(params, "s");
        check(s > 0, "s > 0");
        d.cdf = [s](double x) { return 0.5 * std::erfc(-x / (s * kSqrt2)); };
        d.sf = [s](double x) { return 0.5 * std::erfc(x / (s * kSqrt2)); };
    } else if (name == "gumbel1") {
        double a = require(params, "a"), b = require(params, "b");
        check(a > 0 && b > 0, "a, b > 0");
        d.cdf = [a, b](double x) { return std::exp(-b * std::exp(-a * x)); };
        d.sf = [a, b](double x) { return -std::expm1(-b * std::exp(-a * x)); };
    } else if (name == "gumbel2") {
        double a = require(params, "a"), b = require(params, "b");
        check(a > 0 && b > 0, "a, b > 0");
        d.cdf = [a, b](double x) {
            return x <= 0 ? 0.0 : std::exp(-b * std::pow(x, -a));
        };
        d.sf = [a, b](double x) {
            return x <= 0 ? 1.0 : -std::expm1(-b * std::pow(x, -a));
        };
    } else if (name == "laplace") {
        double a = require(params, "a");
        check(a > 0, "a > 0");
        d.cdf = [a](double x) {
            return x < 0 ? 0.5 * std::exp(x / a) : 1.0 - 0.5 * std::exp(-x / a);
        };
        d.sf = [a](double x) {
            return x < 0 ? 1.0 - 0.5 * std::exp(x / a) : 0.5 * std::exp(-x / a);
        };
    } else if (name == "logistic") {
        double a = require(params, "a");
        check(a > 0, "a > 0");
        d.cdf = [a](double x) { return 1.0 / (1.0 + std::exp(-x / a)); };
        d.sf = [a](double x) { return 1.0 / (1.0 + std::exp(x / a)); };
    } else if (name == "pareto") {
        double a = require(params, "a"), b = require(params, "b");
        check(a > 0 && b > 0, "a, b > 0");
        d.cdf = [a, b](double x) {
            return x <= b ? 0.0 : -std::expm1(a * std::log(b / x));
        };
        d.sf = [a, b](double x) {
            return x <= b ? 1.0 : std::exp(a * std::log(b / x));
        };
    } else if (name == "rayleigh") {
        double s = require(params, "s");
        check(s > 0, "s > 0");
        d.cdf = [s](double x) {
            return x <= 0 ? 0.0 : -std::expm1(-x * x / (2 * s * s));
        };
        d.sf = [s](double x) {
            return x <= 0 ? 1.0 : std::exp(-x * x / (2 * s * s));
        };
    } else if (name == "weibull") {
        double a = require(params, "a"), b = require(params, "b");
        check(a > 0 && b > 0, "a, b > 0");
        d.cdf = [a, b](double x) {
            return x <= 0 ? 0.0 : -std::expm1(-std::pow(x / a, b));
        };
        d.sf = [a, b](double x) {
            return x <= 0 ? 1.0 : std::exp(-std::pow(x / a, b));
        };
    } else if (name == "geometric") {
        double p = require(params, "p");
        check(p > 0 && p <= 1, "0 < p <= 1");
        d.discrete = true;
        // Failure count before the first success.
        d.cdf = [p](double x) {
            if (x < 0) return 0.0;
            double k = std::floor(x);
            return -std::expm1((k + 1) * std::log1p(-p));
        };
        d.sf = [p](double x) {
            if (x < 0) return 1.0;
            double k = std::floor(x);
            return std::exp((k + 1) * std::log1p(-p));
        };
    } else {
        throw std::invalid_argument("unknown distribution: " + name);
    }
    return d;
}

namespace {

double clamp_unit(double x) {
    if (std::isnan(x)) return 1.0;
    return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x);
}

double cdf_input(const ExtendedReal& v) {
    switch (v.kind()) {
        case RealKind::NegInf: return -std::numeric_limits<double>::infinity();
        case RealKind::PosInf: return std::numeric_limits<double>::infinity();
        default: return v.to_double();
    }
}

}  // namespace

FiniteCdf::Fn cdf_eval(const Distribution& d, FormatSpec fmt, ProbConfig prob) {
    auto cdf = d.cdf;
    return [cdf, fmt, prob](Code c) {
        ExtendedReal v = fmt.value(c);
        if (v.kind() == RealKind::Bottom)
            return ProbFloat::one(prob);  // NaN bucket sorts above everything
        return ProbFloat::from_double(prob, clamp_unit(cdf(cdf_input(v))));
    };
}

FiniteSf::Fn sf_eval(const Distribution& d, FormatSpec fmt, ProbConfig prob) {
    auto sf = d.sf;
    return [sf, fmt, prob](Code c) {
        ExtendedReal v = fmt.value(c);
        if (v.kind() == RealKind::Bottom) return ProbFloat::zero(prob);
        return ProbFloat::from_double(prob, clamp_unit(sf(cdf_input(v))));
    };
}

FiniteCdf make_cdf(const Distribution& d, FormatSpec fmt, ProbConfig prob) {
    return FiniteCdf::checked(fmt, prob, cdf_eval(d, fmt, prob));
}

FiniteSf make_sf(const Distribution& d, FormatSpec fmt, ProbConfig prob) {
    return FiniteSf::checked(fmt, prob, sf_eval(d, fmt, prob));
}

DualDistFn make_dual(const Distribution& d, FormatSpec fmt, ProbConfig prob) {
    return make_ddf(make_cdf(d, fmt, prob), make_sf(d, fmt, prob));
}

FiniteCdf uniform_unit_cdf(FormatSpec fmt, ProbConfig prob, UnitRounding rounding) {
    if (fmt.kind() != FormatKind::IeeeFloat)
        throw std::invalid_argument("unit uniform needs a float format");
    if (prob.exp_bits < fmt.exp_bits() || prob.mant_bits < fmt.mant_bits())
        throw std::invalid_argument(
            "probability format too narrow to hold the format's unit values");
    // Cumulative value of rounding an ideal uniform real UP to the format:
    // exactly the clamped code value.
    auto round_up_at = [fmt, prob](Code c) {
        ExtendedReal v = fmt.value(c);
        switch (v.kind()) {
            case RealKind::Bottom:
            case RealKind::PosInf: return ProbFloat::one(prob);
            case RealKind::NegInf: return ProbFloat::zero(prob);
            default: break;
        }
        return ProbFloat::from_double(prob, clamp_unit(v.to_double()));
    };
    if (rounding == UnitRounding::Up)
        return FiniteCdf::checked(fmt, prob, round_up_at);
    Code top = fmt.max_code();
    auto fn = [fmt, prob, round_up_at, top](Code c) {
        if (fmt.value(c).kind() == RealKind::Bottom || c == top)
            return ProbFloat::one(prob);
        return round_up_at(fmt.succ(c));
    };
    return FiniteCdf::checked(fmt, prob, fn);
}

}  // namespace rvg
