#include <gtest/gtest.h>

#include <sstream>

#include "mcgs/bench.hpp"

namespace mcgs {
namespace {

TEST(Bench, RowCountAndOrder) {
    const auto rows = run_bench({256, 64, 128}, {Method::recursive_optimized, Method::linear, Method::recursive_original},
                                SynthesisConfig{});
    ASSERT_EQ(rows.size(), 9u);
    EXPECT_EQ(rows.front().n, 64u);
    EXPECT_EQ(rows.front().method, "linear");
    EXPECT_EQ(rows.back().n, 256u);
    EXPECT_EQ(rows.back().method, "original");
}

TEST(Bench, OptimizedBelowOriginalEveryRow) {
    const auto rows = run_bench({64, 128, 256}, {Method::recursive_original, Method::recursive_optimized},
                                SynthesisConfig{});
    for (std::size_t i = 0; i < rows.size(); i += 2) {
        ASSERT_EQ(rows[i].method, "optimized");
        ASSERT_EQ(rows[i + 1].method, "original");
        EXPECT_LT(rows[i].lowered_depth, rows[i + 1].lowered_depth);
        EXPECT_LT(rows[i].abstract_depth, rows[i + 1].abstract_depth);
    }
}

TEST(Bench, CsvIsByteStable) {
    const auto rows = run_bench({30, 60}, {Method::linear, Method::auto_select}, SynthesisConfig{}, {.seed = 9});
    std::ostringstream a, b;
    write_bench_csv(rows, a);
    write_bench_csv(run_bench({30, 60}, {Method::linear, Method::auto_select}, SynthesisConfig{}, {.seed = 9}), b);
    EXPECT_EQ(a.str(), b.str());
    EXPECT_EQ(a.str().substr(0, a.str().find('\n')), kBenchCsvHeader);
    EXPECT_NE(a.str().find("30,linear,"), std::string::npos);
    EXPECT_NE(a.str().find(",9,0.000\n"), std::string::npos);
}

TEST(Bench, OriginalUsesBaselineThreshold) {
    const SynthesisConfig cfg = bench_config(Method::recursive_original, SynthesisConfig{});
    EXPECT_EQ(cfg.base_threshold, kOriginalBaselineThreshold);
    EXPECT_EQ(bench_config(Method::recursive_optimized, SynthesisConfig{}).base_threshold, 26u);
    EXPECT_NO_THROW(cfg.validate());
}

TEST(Bench, EmptyInputsRejected) {
    EXPECT_THROW(run_bench({}, {Method::linear}, SynthesisConfig{}), std::invalid_argument);
    EXPECT_THROW(run_bench({5}, {}, SynthesisConfig{}), std::invalid_argument);
}

TEST(Bench, SvgHasOnePolylinePerMethod) {
    const auto rows = run_bench({40, 80}, {Method::linear, Method::recursive_optimized}, SynthesisConfig{});
    std::ostringstream os;
    write_bench_svg(rows, os);
    const std::string s = os.str();
    std::size_t count = 0;
    for (std::size_t pos = 0; (pos = s.find("<polyline", pos)) != std::string::npos; ++pos) ++count;
    EXPECT_EQ(count, 2u);
    EXPECT_EQ(s.rfind("</svg>"), s.size() - 7);
}

TEST(Bench, GeometricRange) {
    EXPECT_EQ(geometric_range(64, 512, 2.0), (std::vector<std::size_t>{64, 128, 256, 512}));
    const auto r = geometric_range(64, 256, std::sqrt(2.0));
    EXPECT_EQ(r, (std::vector<std::size_t>{64, 91, 128, 181, 256}));
    EXPECT_THROW(geometric_range(10, 5, 2.0), std::invalid_argument);
    EXPECT_THROW(geometric_range(1, 5, 1.0), std::invalid_argument);
}

TEST(Bench, MetricValue) {
    BenchRow r;
    r.cx_count = 7;
    EXPECT_EQ(metric_value(r, "cx_count"), 7.0);
    EXPECT_THROW(metric_value(r, "depth"), std::invalid_argument);
}

TEST(Bench, CrossoverSelfIsNone) {
    const CrossoverRow row = bench_crossover(Method::linear, Method::linear, "lowered_depth", 1, 20, SynthesisConfig{});
    EXPECT_FALSE(row.crossover.has_value());
    std::ostringstream os;
    write_crossover_csv({row}, os);
    EXPECT_EQ(os.str(), std::string(kCrossoverCsvHeader) + "\nlowered_depth,linear,linear,1,20,none\n");
}

}  // namespace
}  // namespace mcgs
