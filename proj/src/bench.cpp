#include "mcgs/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

#include "mcgs/analysis.hpp"

namespace mcgs {

SynthesisConfig bench_config(Method method, const SynthesisConfig& cfg) {
    SynthesisConfig out = cfg;
    out.method = method;
    if (method == Method::recursive_original) {
        out.base_threshold = kOriginalBaselineThreshold;
        out.linear_cutover = std::max(out.linear_cutover, out.base_threshold);
    }
    return out;
}

BenchRow bench_one(std::size_t n, Method method, const SynthesisConfig& cfg, const BenchOptions& opts) {
    const SynthesisConfig run_cfg = bench_config(method, cfg);
    const auto start = std::chrono::steady_clock::now();
    const Circuit c = synthesize_mcx(n, run_cfg);
    const Metrics m = compute_metrics(c);
    const auto stop = std::chrono::steady_clock::now();

    BenchRow row;
    row.n = n;
    row.method = to_string(method);
    row.abstract_depth = m.abstract_depth;
    row.lowered_depth = m.lowered_depth;
    row.cx_count = m.cx_count;
    row.total_gates = m.total_gates;
    row.ancillas = m.ancillas;
    row.seed = opts.seed;
    if (opts.record_time) row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    return row;
}

std::vector<BenchRow> run_bench(const std::vector<std::size_t>& ns, const std::vector<Method>& methods,
                                const SynthesisConfig& cfg, const BenchOptions& opts) {
    if (ns.empty() || methods.empty()) throw std::invalid_argument("bench needs at least one n and one method");
    std::vector<BenchRow> rows;
    for (std::size_t n : ns) {
        for (Method m : methods) rows.push_back(bench_one(n, m, cfg, opts));
    }
    std::sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
        return a.n != b.n ? a.n < b.n : a.method < b.method;
    });
    return rows;
}

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out) {
    out << kBenchCsvHeader << '\n';
    for (const auto& r : rows) {
        out << r.n << ',' << r.method << ',' << r.abstract_depth << ',' << r.lowered_depth << ',' << r.cx_count
            << ',' << r.total_gates << ',' << r.ancillas << ',' << r.seed << ',' << std::fixed
            << std::setprecision(3) << r.wall_ms << std::defaultfloat << '\n';
    }
}

void write_bench_svg(const std::vector<BenchRow>& rows, std::ostream& out) {
    constexpr double width = 640, height = 400, margin = 50;
    std::map<std::string, std::vector<std::pair<double, double>>> series;
    double max_n = 1, max_d = 1;
    for (const auto& r : rows) {
        series[r.method].emplace_back(static_cast<double>(r.n), static_cast<double>(r.lowered_depth));
        max_n = std::max(max_n, static_cast<double>(r.n));
        max_d = std::max(max_d, static_cast<double>(r.lowered_depth));
    }
    auto sx = [&](double n) { return margin + (width - 2 * margin) * n / max_n; };
    auto sy = [&](double d) { return height - margin - (height - 2 * margin) * d / max_d; };
    static const char* colors[] = {"#1f77b4", "#d62728", "#000000", "#2ca02c", "#9467bd"};

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin << "\" y2=\""
        << height - margin << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\"" << height - margin
        << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double n = max_n * i / 4.0;
        const double d = max_d * i / 4.0;
        out << "<text x=\"" << sx(n) << "\" y=\"" << height - margin + 15 << "\" font-size=\"10\">"
            << static_cast<long long>(n) << "</text>\n";
        out << "<text x=\"2\" y=\"" << sy(d) << "\" font-size=\"10\">" << static_cast<long long>(d) << "</text>\n";
    }
    std::size_t k = 0;
    for (const auto& [method, pts] : series) {
        const char* color = colors[k % std::size(colors)];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
        for (const auto& [n, d] : pts) out << sx(n) << ',' << sy(d) << ' ';
        out << "\"/>\n";
        out << "<text x=\"" << width - margin - 80 << "\" y=\"" << margin + 15 * static_cast<double>(k)
            << "\" font-size=\"11\" fill=\"" << color << "\">" << method << "</text>\n";
        ++k;
    }
    out << "<text x=\"" << width / 2 - 60 << "\" y=\"" << height - 10
        << "\" font-size=\"11\">controls n (lowered depth, basis {1q, cx})</text>\n";
    out << "</svg>\n";
}

double metric_value(const BenchRow& row, const std::string& metric) {
    if (metric == "abstract_depth") return static_cast<double>(row.abstract_depth);
    if (metric == "lowered_depth") return static_cast<double>(row.lowered_depth);
    if (metric == "cx_count") return static_cast<double>(row.cx_count);
    if (metric == "total_gates") return static_cast<double>(row.total_gates);
    throw std::invalid_argument("unknown metric '" + metric + "'");
}

CrossoverRow bench_crossover(Method a, Method b, const std::string& metric, std::size_t lo, std::size_t hi,
                             const SynthesisConfig& cfg) {
    if (lo == 0 || lo > hi) throw std::invalid_argument("invalid crossover range");
    metric_value(BenchRow{}, metric);
    std::vector<std::size_t> ns;
    std::vector<double> va, vb;
    for (std::size_t n = lo; n <= hi; ++n) {
        ns.push_back(n);
        va.push_back(metric_value(bench_one(n, a, cfg), metric));
        vb.push_back(a == b ? va.back() : metric_value(bench_one(n, b, cfg), metric));
    }
    return CrossoverRow{metric, to_string(a), to_string(b), lo, hi, find_crossover(ns, va, vb)};
}

void write_crossover_csv(const std::vector<CrossoverRow>& rows, std::ostream& out) {
    out << kCrossoverCsvHeader << '\n';
    for (const auto& r : rows) {
        out << r.metric << ',' << r.method_a << ',' << r.method_b << ',' << r.lo << ',' << r.hi << ',';
        if (r.crossover) out << *r.crossover;
        else out << "none";
        out << '\n';
    }
}

std::vector<std::size_t> geometric_range(std::size_t lo, std::size_t hi, double ratio) {
    if (lo == 0 || lo > hi || !(ratio > 1.0)) throw std::invalid_argument("invalid geometric range");
    std::vector<std::size_t> out;
    for (double x = static_cast<double>(lo); x <= static_cast<double>(hi) + 1e-9; x *= ratio) {
        const auto v = static_cast<std::size_t>(std::llround(x));
        if (out.empty() || out.back() != v) out.push_back(v);
    }
    return out;
}

}  // namespace mcgs
