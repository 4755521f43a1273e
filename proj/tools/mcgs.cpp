// mcgs: synthesis, verification, benchmarking and recurrence analysis from the command line.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mcgs/analysis.hpp"
#include "mcgs/bench.hpp"
#include "mcgs/lowering.hpp"
#include "mcgs/sim_verify.hpp"
#include "mcgs/synth_ctrl_u.hpp"
#include "mcgs/synth_mcx.hpp"

using namespace mcgs;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
    if (const char* env = std::getenv("MCGS_SEED")) {
        try {
            std::size_t pos = 0;
            const std::uint64_t v = std::stoull(env, &pos, 0);
            if (pos == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        throw UsageError(std::string("MCGS_SEED is not an integer: ") + env);
    }
    return kDefaultSeed;
}

struct SynthFlags {
    std::size_t n = 0;
    std::string method = "auto";
    std::size_t base_threshold = 26;
    std::size_t linear_cutover = 51;
    bool no_cancel = false;
    bool no_orientation = false;

    SynthesisConfig config() const {
        SynthesisConfig cfg;
        try {
            cfg.method = parse_method(method);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        cfg.base_threshold = base_threshold;
        cfg.linear_cutover = linear_cutover;
        cfg.optimize_cancellation = !no_cancel;
        if (no_orientation) cfg.orientation_rule = OrientationRule::none;
        try {
            cfg.validate();
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        return cfg;
    }
};

void add_synth_flags(CLI::App* cmd, SynthFlags& f) {
    cmd->add_option("--n", f.n, "number of controls")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--method", f.method, "linear | original | optimized | auto")
        ->check(CLI::IsMember({"linear", "original", "optimized", "auto", "recursive_original",
                               "recursive_optimized"}));
    cmd->add_option("--base-threshold", f.base_threshold, "largest n handled by the linear base case");
    cmd->add_option("--linear-cutover", f.linear_cutover, "auto uses linear up to this n");
    cmd->add_flag("--no-cancel", f.no_cancel, "skip the cancellation pass");
    cmd->add_flag("--no-orientation", f.no_orientation, "do not invert the first and third columns");
}

std::string metrics_line(std::size_t n, const std::string& method, const Metrics& m) {
    std::ostringstream os;
    os << "n=" << n << " method=" << method << " abstract_depth=" << m.abstract_depth
       << " lowered_depth=" << m.lowered_depth << " cx_count=" << m.cx_count << " total_gates=" << m.total_gates
       << " ancillas=" << m.ancillas;
    return os.str();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    return f;
}

int cmd_synth(const SynthFlags& f, const std::string& out_path) {
    const SynthesisConfig cfg = f.config();
    const Circuit c = synthesize_mcx(f.n, cfg);
    const Metrics m = compute_metrics(c);
    const std::string line = metrics_line(f.n, to_string(cfg.method), m);
    if (out_path.empty() || out_path == "-") {
        write_qasm(c, std::cout);
        std::cerr << line << '\n';
    } else {
        auto out = open_out(out_path);
        write_qasm(c, out);
        if (!out) throw std::runtime_error("write failed: " + out_path);
        std::cout << line << '\n';
    }
    return kExitOk;
}

int report_result(const EquivalenceReport& r) {
    write_report(r, std::cout);
    std::cout << (r.passed() ? "PASS" : "FAIL") << '\n';
    return r.passed() ? kExitOk : kExitFail;
}

CheckMode parse_mode(const std::string& s) {
    if (s == "exhaustive") return CheckMode::exhaustive;
    if (s == "sampled") return CheckMode::sampled;
    throw UsageError("unknown mode '" + s + "'");
}

int cmd_verify(const SynthFlags& f, const std::string& mode, std::size_t samples, std::uint64_t seed) {
    const SynthesisConfig cfg = f.config();
    McxCheckOptions opts;
    if (mode != "auto") opts.mode = parse_mode(mode);
    if (opts.mode == CheckMode::exhaustive && f.n + 2 > kMaxExhaustiveWidth)
        throw UsageError("exhaustive mode supports n <= " + std::to_string(kMaxExhaustiveWidth - 2));
    opts.samples = samples;
    opts.seed = seed;
    return report_result(check_mcx(synthesize_mcx(f.n, cfg), f.n, opts));
}

std::vector<Qubit> first_qubits(std::size_t n) {
    std::vector<Qubit> q(n);
    for (std::size_t i = 0; i < n; ++i) q[i] = static_cast<Qubit>(i);
    return q;
}

void require_dense(std::size_t n) {
    if (n + 1 > kMaxDenseWidth)
        throw UsageError("unitary check supports n <= " + std::to_string(kMaxDenseWidth - 1));
}

struct AngleFlags {
    double alpha = 0.0;
    double theta = 0.0;
    double beta = 0.0;
    double phase = 0.0;
    Mat2 su2() const { return rz(alpha) * ry(theta) * rz(beta); }
};

int cmd_verify_su2(std::size_t n, const AngleFlags& a, const SynthFlags& f) {
    require_dense(n);
    const Mat2 w = a.su2();
    const Circuit c = mcsu2(n, w, f.config());
    const auto ctl = first_qubits(n);
    return report_result(check_unitary(c, controlled_unitary_matrix(n + 1, ctl, static_cast<Qubit>(n), w), 1e-9));
}

int cmd_verify_u2(std::size_t n, const AngleFlags& a, double epsilon, const SynthFlags& f) {
    require_dense(n);
    if (!(epsilon > 0.0)) throw UsageError("--epsilon must be positive");
    const Mat2 u = std::polar(1.0, a.phase) * a.su2();
    const auto [c, plan] = mcu2_approx(n, u, epsilon, f.config());
    std::cout << "steps=" << plan.steps << " residual_error=" << plan.residual_error << " epsilon=" << epsilon
              << '\n';
    const auto ctl = first_qubits(n);
    return report_result(
        check_unitary(c, controlled_unitary_matrix(n + 1, ctl, static_cast<Qubit>(n), u), epsilon + 1e-9));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    return out;
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("malformed " + what + ": '" + s + "'");
}

std::vector<Method> parse_methods(const std::string& s) {
    std::vector<Method> out;
    for (const auto& m : split(s, ',')) {
        try {
            out.push_back(parse_method(m));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    if (out.empty()) throw UsageError("no methods given");
    return out;
}

std::vector<std::size_t> parse_ns(const std::string& list, const std::string& geometric) {
    if (!list.empty() && !geometric.empty()) throw UsageError("give either --n or --geometric, not both");
    if (!geometric.empty()) {
        const auto parts = split(geometric, ':');
        if (parts.size() != 3) throw UsageError("--geometric expects lo:hi:ratio");
        const double lo = parse_double(parts[0], "range bound"), hi = parse_double(parts[1], "range bound");
        const double ratio = parse_double(parts[2], "ratio");
        if (lo < 1 || hi < lo || !(ratio > 1.0)) throw UsageError("--geometric needs 1 <= lo <= hi and ratio > 1");
        return geometric_range(static_cast<std::size_t>(lo), static_cast<std::size_t>(hi), ratio);
    }
    std::vector<std::size_t> ns;
    for (const auto& s : split(list, ',')) {
        const double v = parse_double(s, "control count");
        if (v < 1 || v != static_cast<double>(static_cast<std::size_t>(v)))
            throw UsageError("control counts must be positive integers");
        ns.push_back(static_cast<std::size_t>(v));
    }
    if (ns.empty()) throw UsageError("empty n range");
    return ns;
}

struct BenchFlags {
    std::string n_list;
    std::string geometric;
    std::string methods = "linear,original,optimized";
    std::string csv = "-";
    std::string svg;
    std::string crossover_csv;
    std::size_t crossover_max = 300;
    bool record_time = false;
};

int cmd_bench(const BenchFlags& b, const SynthFlags& f, std::uint64_t seed) {
    const auto ns = parse_ns(b.n_list, b.geometric);
    const auto methods = parse_methods(b.methods);
    const SynthesisConfig cfg = f.config();
    const auto rows = run_bench(ns, methods, cfg, {.seed = seed, .record_time = b.record_time});
    if (b.csv == "-") {
        write_bench_csv(rows, std::cout);
    } else {
        auto out = open_out(b.csv);
        write_bench_csv(rows, out);
    }
    if (!b.svg.empty()) {
        auto out = open_out(b.svg);
        write_bench_svg(rows, out);
    }
    if (!b.crossover_csv.empty()) {
        std::vector<CrossoverRow> xs;
        for (Method m : {Method::recursive_optimized, Method::recursive_original})
            xs.push_back(bench_crossover(m, Method::linear, "lowered_depth", 1, b.crossover_max, cfg));
        auto out = open_out(b.crossover_csv);
        write_crossover_csv(xs, out);
    }
    return kExitOk;
}

RecurrenceSpec parse_terms(const std::string& s, double constant) {
    RecurrenceSpec spec;
    spec.constant = constant;
    for (const auto& t : split(s, ',')) {
        const auto ab = split(t, ':');
        if (ab.size() != 2) throw UsageError("term '" + t + "' is not a:b");
        spec.terms.push_back({parse_double(ab[0], "coefficient"), parse_double(ab[1], "divisor")});
    }
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return spec;
}

int cmd_exponent(const std::string& terms, double constant) {
    std::printf("%.6f\n", akra_bazzi_exponent(parse_terms(terms, constant)));
    return kExitOk;
}

int cmd_crossover(const std::string& a, const std::string& b, const std::string& metric, std::size_t lo,
                  std::size_t hi, const SynthFlags& f) {
    if (lo < 1 || lo > hi) throw UsageError("need 1 <= --min <= --max");
    try {
        metric_value(BenchRow{}, metric);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto ma = parse_methods(a), mb = parse_methods(b);
    if (ma.size() != 1 || mb.size() != 1) throw UsageError("--a and --b take one method each");
    const CrossoverRow row = bench_crossover(ma[0], mb[0], metric, lo, hi, f.config());
    if (row.crossover) std::cout << *row.crossover << '\n';
    else std::cout << "none\n";
    return kExitOk;
}

int cmd_predict(std::size_t n, const std::string& variant, std::size_t threshold, bool measure) {
    if (threshold < 3) throw UsageError("--base-threshold must be at least 3");
    DepthVariant v;
    if (variant == "original") v = DepthVariant::original;
    else if (variant == "optimized") v = DepthVariant::optimized;
    else throw UsageError("unknown variant '" + variant + "'");
    const std::size_t predicted = predict_depth(n, linear_profile_table(threshold), v, threshold);
    std::cout << "predicted=" << predicted;
    if (v == DepthVariant::original)
        std::cout << " recurrence_bound=" << recurrence_depth(n, linear_depth_table(threshold), threshold);
    if (measure) {
        SynthesisConfig cfg;
        cfg.base_threshold = threshold;
        cfg.linear_cutover = threshold;
        const Circuit c =
            v == DepthVariant::original ? mcx_recursive_original(n, cfg) : mcx_recursive_optimized(n, cfg);
        std::cout << " measured=" << abstract_depth(c);
    }
    std::cout << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-controlled gate synthesis with one borrowed ancilla"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "mcgs 1.0");

    std::uint64_t seed = 0;
    bool seed_given = false;
    auto add_seed = [&](CLI::App* cmd) {
        cmd->add_option_function<std::uint64_t>(
            "--seed",
            [&](std::uint64_t v) {
                seed = v;
                seed_given = true;
            },
            "RNG seed (default MCGS_SEED or 0xC0FFEE)");
    };

    // synth
    SynthFlags synth_flags;
    std::string synth_out;
    auto* synth = app.add_subcommand("synth", "synthesize C^nX and write OpenQASM-like text");
    add_synth_flags(synth, synth_flags);
    synth->add_option("--out,-o", synth_out, "output file (default: standard output)");

    // verify [su2 | u2]
    SynthFlags verify_flags;
    std::string verify_mode = "auto";
    std::size_t samples = 1000;
    auto* verify = app.add_subcommand("verify", "check a synthesized circuit against the ideal gate");
    verify->require_subcommand(0, 1);
    verify->add_option("--n", verify_flags.n, "number of controls")->check(CLI::PositiveNumber);
    verify->add_option("--method", verify_flags.method, "linear | original | optimized | auto");
    verify->add_option("--base-threshold", verify_flags.base_threshold);
    verify->add_option("--linear-cutover", verify_flags.linear_cutover);
    verify->add_flag("--no-cancel", verify_flags.no_cancel);
    verify->add_flag("--no-orientation", verify_flags.no_orientation);
    verify->add_option("--mode", verify_mode, "auto | exhaustive | sampled")
        ->check(CLI::IsMember({"auto", "exhaustive", "sampled"}));
    verify->add_option("--samples", samples, "random inputs in sampled mode");
    add_seed(verify);

    AngleFlags angles;
    double epsilon = 1e-4;
    std::size_t ctl_n = 0;
    auto* su2 = verify->add_subcommand("su2", "check C^n(W), W = Rz(alpha) Ry(theta) Rz(beta), on the dense oracle");
    su2->add_option("--n", ctl_n, "number of controls")->required()->check(CLI::PositiveNumber);
    su2->add_option("--alpha", angles.alpha);
    su2->add_option("--theta", angles.theta);
    su2->add_option("--beta", angles.beta);
    auto* u2 = verify->add_subcommand("u2", "check approximate C^n(U), U = e^{i phase} W, on the dense oracle");
    u2->add_option("--n", ctl_n, "number of controls")->required()->check(CLI::PositiveNumber);
    u2->add_option("--alpha", angles.alpha);
    u2->add_option("--theta", angles.theta);
    u2->add_option("--beta", angles.beta);
    u2->add_option("--phase", angles.phase);
    u2->add_option("--epsilon", epsilon, "target spectral error");

    // bench
    BenchFlags bench_flags;
    SynthFlags bench_synth;
    auto* bench = app.add_subcommand("bench", "depth and CX sweep as CSV (and SVG)");
    bench->add_option("--n", bench_flags.n_list, "comma-separated control counts");
    bench->add_option("--geometric", bench_flags.geometric, "lo:hi:ratio");
    bench->add_option("--methods", bench_flags.methods, "comma-separated methods");
    bench->add_option("--csv", bench_flags.csv, "CSV output (default: standard output)");
    bench->add_option("--svg", bench_flags.svg, "optional SVG chart of lowered depth");
    bench->add_option("--crossover-csv", bench_flags.crossover_csv,
                      "also write optimized/original vs linear lowered-depth crossovers");
    bench->add_option("--crossover-max", bench_flags.crossover_max, "upper end of the crossover scan");
    bench->add_option("--base-threshold", bench_synth.base_threshold);
    bench->add_option("--linear-cutover", bench_synth.linear_cutover);
    bench->add_flag("--time", bench_flags.record_time, "record wall-clock milliseconds (CSV no longer stable)");
    add_seed(bench);

    // analyze exponent | crossover | predict
    auto* analyze = app.add_subcommand("analyze", "recurrence exponents, crossovers and depth predictions");
    analyze->require_subcommand(1);
    std::string terms;
    double constant = 0.0;
    auto* exponent = analyze->add_subcommand("exponent", "root of sum a_i / b_i^alpha = 1");
    exponent->add_option("--terms", terms, "a:b pairs, e.g. 4:2,12:4,60:8")->required();
    exponent->add_option("--constant", constant, "non-recursive cost (does not affect the exponent)");

    std::string xa = "optimized", xb = "linear", metric = "lowered_depth";
    std::size_t xmin = 1, xmax = 300;
    SynthFlags cross_synth;
    auto* crossover = analyze->add_subcommand("crossover", "smallest n from which --a stays below --b");
    crossover->add_option("--a", xa);
    crossover->add_option("--b", xb);
    crossover->add_option("--metric", metric, "abstract_depth | lowered_depth | cx_count | total_gates");
    crossover->add_option("--min", xmin);
    crossover->add_option("--max", xmax);
    crossover->add_option("--base-threshold", cross_synth.base_threshold);
    crossover->add_option("--linear-cutover", cross_synth.linear_cutover);

    std::size_t pn = 0, pthreshold = 26;
    std::string variant = "original";
    bool measure = false;
    auto* predict = analyze->add_subcommand("predict", "depth predicted over the partition plan");
    predict->add_option("--n", pn)->required()->check(CLI::PositiveNumber);
    predict->add_option("--variant", variant, "original | optimized");
    predict->add_option("--base-threshold", pthreshold);
    predict->add_flag("--measure", measure, "also synthesize and print the measured depth");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (!seed_given) seed = default_seed();
        if (*synth) return cmd_synth(synth_flags, synth_out);
        if (*verify) {
            if (*su2) return cmd_verify_su2(ctl_n, angles, verify_flags);
            if (*u2) return cmd_verify_u2(ctl_n, angles, epsilon, verify_flags);
            if (verify_flags.n == 0) throw UsageError("verify needs --n");
            return cmd_verify(verify_flags, verify_mode, samples, seed);
        }
        if (*bench) return cmd_bench(bench_flags, bench_synth, seed);
        if (*exponent) return cmd_exponent(terms, constant);
        if (*crossover) return cmd_crossover(xa, xb, metric, xmin, xmax, cross_synth);
        if (*predict) return cmd_predict(pn, variant, pthreshold, measure);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFail;
    }
    return kExitUsage;
}
