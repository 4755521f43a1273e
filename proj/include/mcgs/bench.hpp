#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mcgs/synth_mcx.hpp"

namespace mcgs {

/// One CSV row of a depth/CX sweep.
struct BenchRow {
    std::size_t n = 0;
    std::string method;
    std::size_t abstract_depth = 0;
    std::size_t lowered_depth = 0;
    std::size_t cx_count = 0;
    std::size_t total_gates = 0;
    std::size_t ancillas = 0;
    std::uint64_t seed = 0;
    double wall_ms = 0.0;
};

inline constexpr const char* kBenchCsvHeader =
    "n,method,abstract_depth,lowered_depth,cx_count,total_gates,ancillas,seed,wall_ms";

/// Base threshold of the original recursion used as the comparison baseline.
inline constexpr std::size_t kOriginalBaselineThreshold = 30;

/// Config for a method as the benchmark runs it: the original recursion uses the baseline
/// threshold, everything else uses `cfg` unchanged.
SynthesisConfig bench_config(Method method, const SynthesisConfig& cfg);

struct BenchOptions {
    std::uint64_t seed = 0;
    /// When false wall_ms is written as 0 so that reruns are byte-identical.
    bool record_time = false;
};

BenchRow bench_one(std::size_t n, Method method, const SynthesisConfig& cfg, const BenchOptions& opts = {});
/// Rows sorted by (n, method name).
std::vector<BenchRow> run_bench(const std::vector<std::size_t>& ns, const std::vector<Method>& methods,
                                const SynthesisConfig& cfg, const BenchOptions& opts = {});

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out);
/// Static line chart of lowered depth against n, one polyline per method.
void write_bench_svg(const std::vector<BenchRow>& rows, std::ostream& out);

/// Value of a named metric column: abstract_depth, lowered_depth, cx_count or total_gates.
/// Throws std::invalid_argument for other names.
double metric_value(const BenchRow& row, const std::string& metric);

/// Smallest n in [lo, hi] from which method a stays strictly below method b on `metric`,
/// each method run with bench_config.
struct CrossoverRow {
    std::string metric;
    std::string method_a;
    std::string method_b;
    std::size_t lo = 0;
    std::size_t hi = 0;
    std::optional<std::size_t> crossover;
};

inline constexpr const char* kCrossoverCsvHeader = "metric,method_a,method_b,lo,hi,crossover";

CrossoverRow bench_crossover(Method a, Method b, const std::string& metric, std::size_t lo, std::size_t hi,
                             const SynthesisConfig& cfg);
/// `crossover` is written as "none" when absent.
void write_crossover_csv(const std::vector<CrossoverRow>& rows, std::ostream& out);

/// Roughly geometric integer sweep lo, lo*ratio, ... up to hi (inclusive, deduplicated).
std::vector<std::size_t> geometric_range(std::size_t lo, std::size_t hi, double ratio);

}  // namespace mcgs
