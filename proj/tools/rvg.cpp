// Command-line front end: generate variates, benchmark entropy and
// throughput, report support ranges and unit-interval coverage, compute
// quantiles, validate specs.
#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rvg/distlib.hpp"
#include "rvg/generators.hpp"
#include "rvg/oracle.hpp"

using namespace rvg;
using nlohmann::json;

namespace {

std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

std::map<std::string, double> parse_params(const std::string& s) {
    std::map<std::string, double> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--param", "expected key=value: " + item);
        out[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    }
    return out;
}

ProbConfig parse_prob(const std::string& s) {
    if (s == "f32") return ProbConfig::binary32();
    if (s == "f64") return ProbConfig::binary64();
    auto fmt = FormatSpec::parse(s);
    if (fmt.kind() != FormatKind::IeeeFloat)
        throw CLI::ValidationError("--prob", "must be a float format");
    return ProbConfig{fmt.exp_bits(), fmt.mant_bits()};
}

// Either flavor of generator input.
using Spec = std::variant<FiniteCdf, DualDistFn>;

Spec build_spec(const std::string& dist, const std::map<std::string, double>& params,
                const std::string& kind, const FormatSpec& fmt, ProbConfig prob) {
    if (dist == "parity") {
        // Deliberately broken fixture for exercising the validator.
        auto fn = [prob](Code c) {
            int ones = 0;
            for (int i = 0; i < c.width; ++i) ones += (c.bits >> i) & 1;
            return ones % 2 ? ProbFloat::one(prob) : ProbFloat::zero(prob);
        };
        return FiniteCdf::trusted(fmt, prob, fn);
    }
    if (dist == "nonmonotone") {
        // Broken fixture whose violation sits between interior cumulative
        // bounds, so only the generation-time guard can catch it.
        if (fmt.width() != 3)
            throw CLI::ValidationError("--format", "nonmonotone fixture needs uint:3");
        auto fn = [prob](Code c) {
            static const double v[8] = {0.5, 0.25, 0.75, 0.8, 0.9, 0.95, 0.975, 1.0};
            return ProbFloat::from_double(prob, v[c.bits]);
        };
        return FiniteCdf::trusted(fmt, prob, fn);
    }
    if (dist == "uniform-up" || dist == "uniform-down") {
        // Exact unit-interval uniforms over the output format itself;
        // probabilities use the format's own shape.
        if (fmt.kind() != FormatKind::IeeeFloat)
            throw CLI::ValidationError("--format", "unit uniform needs a float format");
        ProbConfig own{fmt.exp_bits(), fmt.mant_bits()};
        return uniform_unit_cdf(fmt, own,
                                dist == "uniform-up" ? UnitRounding::Up
                                                     : UnitRounding::Down);
    }
    auto d = lookup(dist, params);
    if (kind == "cdf") return make_cdf(d, fmt, prob);
    if (kind == "sf") return sf_as_ddf(make_sf(d, fmt, prob));
    if (kind == "ddf") return make_dual(d, fmt, prob);
    throw CLI::ValidationError("--spec", "must be cdf, sf or ddf");
}

GenResult run_one(const Spec& spec, const std::string& method, BitSource& src) {
    return std::visit(
        [&](const auto& s) {
            return method == "cbs" ? generate_cbs(s, src) : generate_opt(s, src);
        },
        spec);
}

std::unique_ptr<BitSource> make_source(std::optional<uint64_t> seed,
                                       const std::string& replay_path) {
    if (!replay_path.empty()) {
        std::ifstream in(replay_path);
        if (!in) throw CLI::ValidationError("--replay", "cannot open " + replay_path);
        return std::make_unique<ReplaySource>(parse_replay_bits(in));
    }
    if (seed) return std::make_unique<PrngSource>(*seed);
    return std::make_unique<OsSource>();
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw CLI::ValidationError("--output", "cannot open " + path);
    return file;
}

// Placeholder parameters for list commands when --param is omitted.
std::map<std::string, double> default_params(const std::string& name) {
    if (name == "flat") return {{"a", 0.0}, {"b", 1.0}};
    if (name == "geometric") return {{"p", 0.5}};
    return {{"s", 1.0}, {"a", 1.0}, {"b", 1.0}, {"p", 0.5}};
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

struct BenchRecord {
    std::string dist, spec, method;
    uint64_t count;
    double bits_per_variate;
    double variates_per_sec;
    uint64_t seed;
};

BenchRecord bench_cell(const std::string& dist, const Spec& spec,
                       const std::string& method, uint64_t count, uint64_t seed,
                       const std::string& kind) {
    PrngSource src(seed);
    uint64_t warmup = std::min<uint64_t>(count / 10 + 1, 10000);
    for (uint64_t i = 0; i < warmup; ++i) (void)run_one(spec, method, src);
    uint64_t bits_before = src.bits_consumed();
    std::vector<double> rates;
    uint64_t done = 0;
    const int reps = 5;
    for (int rep = 0; rep < reps; ++rep) {
        uint64_t batch = count / reps + (rep < static_cast<int>(count % reps) ? 1 : 0);
        auto t0 = std::chrono::steady_clock::now();
        for (uint64_t i = 0; i < batch; ++i) (void)run_one(spec, method, src);
        auto t1 = std::chrono::steady_clock::now();
        double secs = std::chrono::duration<double>(t1 - t0).count();
        if (batch > 0 && secs > 0) rates.push_back(static_cast<double>(batch) / secs);
        done += batch;
    }
    std::sort(rates.begin(), rates.end());
    double rate = rates.empty() ? 0.0 : rates[rates.size() / 2];
    double bits = static_cast<double>(src.bits_consumed() - bits_before) /
                  static_cast<double>(done);
    return {dist, kind, method, done, bits, rate, seed};
}

int guarded(const std::function<void()>& body) {
    try {
        body();
        return 0;
    } catch (const SpecViolation& e) {
        std::cerr << "spec violation: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact random variate generation from finite-precision distribution specs"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<uint64_t> seed;
    std::string prob_str = "f32";
    std::string format_str = "f64";
    std::string output_path;
    bool as_json = false;
    app.add_option("--seed", seed, "PRNG seed; omit for OS entropy");
    app.add_option("--prob", prob_str, "probability float format (f32, f64, float:E=..,m=..)");
    app.add_option("--format", format_str, "output number format descriptor");
    app.add_option("--output", output_path, "write results to a file");
    app.add_flag("--json", as_json, "machine-readable output where supported");

    std::string dist, params_str, spec_kind = "cdf", method = "opt", replay_path;
    uint64_t count = 1;
    double qarg = 0.5;
    std::string dists_str, specs_str = "cdf", range_specs_str = "cdf,sf,ddf",
        methods_str = "opt,cbs";
    int cov_exp = 11, cov_mant = 52, cov_level = -1;
    bool compare_division = false;

    auto* gen = app.add_subcommand("generate", "draw variates");
    gen->fallthrough();
    gen->add_option("--dist", dist, "distribution name")->required();
    gen->add_option("--param", params_str, "comma-separated key=value parameters");
    gen->add_option("--spec", spec_kind, "cdf, sf or ddf");
    gen->add_option("--method", method, "opt or cbs");
    gen->add_option("--count", count, "number of variates");
    gen->add_option("--replay", replay_path, "replay bit file instead of a PRNG");

    auto* bench = app.add_subcommand("bench", "bits/variate and variates/sec CSV");
    bench->fallthrough();
    bench->add_option("--dist", dists_str, "comma-separated names (default: whole catalog)");
    bench->add_option("--param", params_str, "parameters applied to every listed name");
    bench->add_option("--spec", specs_str, "comma-separated spec kinds");
    bench->add_option("--method", methods_str, "comma-separated methods");
    bench->add_option("--count", count, "variates per cell")->required();

    auto* range = app.add_subcommand("range", "support range per spec kind");
    range->fallthrough();
    range->add_option("--dist", dists_str, "comma-separated names (default: whole catalog)");
    range->add_option("--param", params_str, "parameters applied to every listed name");
    range->add_option("--spec", range_specs_str, "comma-separated spec kinds");

    auto* cov = app.add_subcommand("coverage", "unit-interval float coverage");
    cov->fallthrough();
    cov->add_option("--exp", cov_exp, "exponent bits (analytic mode)");
    cov->add_option("--mant", cov_mant, "mantissa bits (analytic mode)");
    cov->add_option("--level", cov_level, "division level l (analytic mode)");
    cov->add_option("--count", count, "empirical mode: variates to draw");
    cov->add_flag("--compare-division", compare_division,
                  "empirical mode: also tally the i/2^n division method");

    auto* quant = app.add_subcommand("quantile", "least code reaching a cumulative value");
    quant->fallthrough();
    quant->add_option("--dist", dist, "distribution name")->required();
    quant->add_option("--param", params_str, "parameters");
    quant->add_option("--spec", spec_kind, "cdf, sf or ddf");
    quant->add_option("--q", qarg, "cumulative probability")->required();

    auto* val = app.add_subcommand("validate", "check a spec's contract");
    val->fallthrough();
    val->add_option("--dist", dist, "distribution name")->required();
    val->add_option("--param", params_str, "parameters");
    val->add_option("--spec", spec_kind, "cdf, sf or ddf");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    bool format_given = app.count("--format") > 0;
    // Discrete distributions default to an integer code space.
    auto format_for = [&](const std::string& name, const FormatSpec& fmt) {
        if (!format_given && name == "geometric") return FormatSpec::unsigned_int(16);
        return fmt;
    };

    std::ofstream file;

    if (gen->parsed()) {
        return guarded([&] {
            auto fmt = FormatSpec::parse(format_str);
            auto prob = parse_prob(prob_str);
            auto spec = build_spec(dist, parse_params(params_str), spec_kind, fmt, prob);
            auto src = make_source(seed, replay_path);
            auto& out = open_output(file, output_path);
            for (uint64_t i = 0; i < count; ++i) {
                auto r = run_one(spec, method, *src);
                out << fmt_double(fmt.value_double(r.code)) << " "
                    << r.code.to_hex_string() << "\n";
            }
        });
    }

    if (bench->parsed()) {
        return guarded([&] {
            auto fmt = FormatSpec::parse(format_str);
            auto prob = parse_prob(prob_str);
            auto params = parse_params(params_str);
            auto names = dists_str.empty() ? catalog() : split_list(dists_str);
            auto& out = open_output(file, output_path);
            out << "dist,spec,method,count,bits_per_variate,variates_per_sec,seed\n";
            uint64_t base_seed = seed.value_or(0);
            uint64_t cell = 0;
            for (const auto& name : names) {
                std::map<std::string, double> p = params;
                if (p.empty()) p = default_params(name);
                FormatSpec f = format_for(name, fmt);
                for (const auto& kind : split_list(specs_str)) {
                    Spec spec = build_spec(name, p, kind, f, prob);
                    for (const auto& m : split_list(methods_str)) {
                        auto rec = bench_cell(name, spec, m, count, base_seed + cell, kind);
                        ++cell;
                        out << rec.dist << "," << rec.spec << "," << rec.method << ","
                            << rec.count << "," << fmt_double(rec.bits_per_variate)
                            << "," << fmt_double(rec.variates_per_sec) << ","
                            << rec.seed << "\n";
                    }
                }
            }
        });
    }

    if (range->parsed()) {
        return guarded([&] {
            auto fmt = FormatSpec::parse(format_str);
            auto prob = parse_prob(prob_str);
            auto params = parse_params(params_str);
            auto names = dists_str.empty() ? catalog() : split_list(dists_str);
            auto& out = open_output(file, output_path);
            json rows = json::array();
            if (!as_json) out << "dist spec min max micros\n";
            for (const auto& name : names) {
                std::map<std::string, double> p = params;
                if (p.empty()) p = default_params(name);
                FormatSpec f = format_for(name, fmt);
                for (const auto& kind : split_list(range_specs_str)) {
                    Spec spec = build_spec(name, p, kind, f, prob);
                    auto t0 = std::chrono::steady_clock::now();
                    auto r = std::visit([](const auto& s) { return support_range(s); },
                                        spec);
                    auto t1 = std::chrono::steady_clock::now();
                    double us = std::chrono::duration<double, std::micro>(t1 - t0).count();
                    if (as_json) {
                        rows.push_back({{"dist", name},
                                        {"spec", kind},
                                        {"min", r.first.to_double()},
                                        {"max", r.second.to_double()},
                                        {"micros", us}});
                    } else {
                        out << name << " " << kind << " "
                            << fmt_double(r.first.to_double()) << " "
                            << fmt_double(r.second.to_double()) << " "
                            << fmt_double(us) << "\n";
                    }
                }
            }
            if (as_json) out << rows.dump(2) << "\n";
        });
    }

    if (cov->parsed()) {
        return guarded([&] {
            auto& out = open_output(file, output_path);
            if (cov_level >= 0) {
                Rational d = coverage_density(cov_exp, cov_mant, cov_level);
                if (as_json) {
                    out << json{{"exp", cov_exp},
                                {"mant", cov_mant},
                                {"level", cov_level},
                                {"density", d.to_double()}}
                               .dump(2)
                        << "\n";
                } else {
                    out << d.to_string() << " = " << fmt_double(d.to_double() * 100)
                        << "%\n";
                }
                return;
            }
            // Empirical mode over a small float format.
            auto fmt = FormatSpec::parse(format_str);
            if (fmt.kind() != FormatKind::IeeeFloat || fmt.width() > 10)
                throw CLI::ValidationError("--format",
                                           "empirical coverage needs a float format of width <= 10");
            ProbConfig prob{fmt.exp_bits(), fmt.mant_bits()};
            auto f = uniform_unit_cdf(fmt, prob, UnitRounding::Down);
            auto src = make_source(seed, replay_path);
            std::vector<uint64_t> observed(width_mask(fmt.width()) + 1, 0);
            for (uint64_t i = 0; i < count; ++i)
                ++observed[generate_opt(f, *src).code.bits];
            std::vector<uint64_t> division(observed.size(), 0);
            if (compare_division) {
                int n = fmt.width();
                for (uint64_t i = 0; i < count; ++i) {
                    uint64_t word = 0;
                    for (int b = 0; b < n; ++b)
                        word = (word << 1) | static_cast<uint64_t>(src->next_bit());
                    double u = static_cast<double>(word) / std::exp2(n);
                    auto pf = ProbFloat::from_double(prob, u);
                    ++division[pf.bits()];
                }
            }
            auto masses = cdf_masses(f);
            out << "value observed expected" << (compare_division ? " division" : "")
                << "\n";
            for (uint64_t r = 0; r < masses.size(); ++r) {
                if (masses[r].is_zero()) continue;
                Code c = fmt.from_rank(r);
                out << fmt_double(fmt.value_double(c)) << " " << observed[c.bits]
                    << " "
                    << fmt_double(masses[r].to_double() * static_cast<double>(count));
                if (compare_division) out << " " << division[c.bits];
                out << "\n";
            }
        });
    }

    if (quant->parsed()) {
        return guarded([&] {
            auto fmt = FormatSpec::parse(format_str);
            auto prob = parse_prob(prob_str);
            auto spec = build_spec(dist, parse_params(params_str), spec_kind, fmt, prob);
            Code c(0, fmt.width());
            std::string cumulative;
            if (std::holds_alternative<FiniteCdf>(spec)) {
                const auto& f = std::get<FiniteCdf>(spec);
                c = quantile(f, ProbFloat::from_double(f.prob_config(), qarg));
                cumulative = fmt_double(f(c).to_double());
            } else {
                const auto& g = std::get<DualDistFn>(spec);
                ProbConfig gp = g.prob_config();
                DualValue target =
                    qarg <= 0.5 ? DualValue{0, ProbFloat::from_double(gp, qarg)}
                                : DualValue{1, ProbFloat::from_double(gp, 1.0 - qarg)};
                c = quantile(g, target);
                cumulative = fmt_double(g(c).cumulative().to_double());
            }
            auto& out = open_output(file, output_path);
            if (as_json) {
                out << json{{"code", c.to_hex_string()},
                            {"value", fmt.value_double(c)},
                            {"cumulative", cumulative}}
                           .dump(2)
                    << "\n";
            } else {
                out << c.to_hex_string() << " " << fmt_double(fmt.value_double(c))
                    << " " << cumulative << "\n";
            }
        });
    }

    if (val->parsed()) {
        try {
            auto fmt = FormatSpec::parse(format_str);
            auto prob = parse_prob(prob_str);
            ValidationReport rep;
            if (dist == "parity") {
                auto spec = build_spec(dist, {}, "cdf", fmt, prob);
                rep = validate(std::get<FiniteCdf>(spec));
            } else {
                auto d = lookup(dist, parse_params(params_str));
                if (spec_kind == "cdf") {
                    rep = validate(FiniteCdf::trusted(fmt, prob, cdf_eval(d, fmt, prob)));
                } else if (spec_kind == "sf") {
                    rep = validate(FiniteSf::trusted(fmt, prob, sf_eval(d, fmt, prob)));
                } else if (spec_kind == "ddf") {
                    // Dual assembly already fails loudly when either tail is
                    // unusable; a successful build validates by construction.
                    rep = validate(make_dual(d, fmt, prob));
                } else {
                    throw CLI::ValidationError("--spec", "must be cdf, sf or ddf");
                }
            }
            std::cout << rep.summary() << "\n";
            return rep.ok() ? 0 : 2;
        } catch (const SpecViolation& e) {
            std::cout << "FAILED: " << e.what() << "\n";
            return 2;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }

    return 0;
}
