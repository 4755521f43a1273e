#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "mcgs/optimizer.hpp"
#include "mcgs/sim_verify.hpp"
#include "mcgs/synth_mcx.hpp"

namespace mcgs {
namespace {

SynthesisConfig with_threshold(std::size_t t) {
    SynthesisConfig cfg;
    cfg.base_threshold = t;
    cfg.linear_cutover = t;
    return cfg;
}

TEST(Partition, SixteenControls) {
    const PartitionPlan p = partition(16);
    EXPECT_EQ(p.p, 4u);
    EXPECT_EQ(p.r0.size(), 8u);
    ASSERT_EQ(p.groups.size(), 2u);
    EXPECT_EQ(p.groups[0].size(), 4u);
    EXPECT_EQ(p.groups[1].size(), 4u);
    EXPECT_EQ(p.b, 2u);
    EXPECT_EQ(p.r, 0u);
}

TEST(Partition, TenControls) {
    const PartitionPlan p = partition(10);
    EXPECT_EQ(p.p, 3u);
    EXPECT_EQ(p.r0.size(), 6u);
    ASSERT_EQ(p.b, 2u);
    EXPECT_EQ(p.groups[0].size(), 3u);
    EXPECT_EQ(p.groups[1].size(), 1u);
    EXPECT_EQ(p.r, 1u);
}

TEST(Partition, HundredThreeControls) {
    const PartitionPlan p = partition(103);
    EXPECT_EQ(p.p, 10u);
    EXPECT_EQ(p.r0.size(), 20u);
    EXPECT_EQ(p.b, 9u);
    EXPECT_EQ(p.r, 3u);
    for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(p.groups[i].size(), 10u);
    EXPECT_EQ(p.groups[8].size(), 3u);
}

TEST(Partition, RejectsSmallN) { EXPECT_THROW(partition(3), std::invalid_argument); }

TEST(Partition, InvariantsHoldWheneverSplittable) {
    for (std::size_t n = 4; n <= 5000; ++n) {
        const PartitionPlan p = partition(n);
        EXPECT_EQ(p.p * p.p <= n && (p.p + 1) * (p.p + 1) > n, true) << n;
        EXPECT_EQ(p.r0.size(), 2 * p.p);
        std::vector<std::size_t> all(p.r0);
        for (const auto& g : p.groups) {
            EXPECT_LE(g.size(), p.p);
            all.insert(all.end(), g.begin(), g.end());
        }
        std::vector<std::size_t> expect(n);
        std::iota(expect.begin(), expect.end(), 0);
        EXPECT_EQ(all, expect) << n;
        if (!p.splittable()) {
            EXPECT_LT(n, 3 * p.p) << n;
            continue;
        }
        EXPECT_LE(p.b + 2, p.p + 2);
        EXPECT_GE(p.b + 2, p.p) << n;
        EXPECT_GE(p.r0_b.size(), p.b) << n;
        EXPECT_EQ(p.r0_star.size() + p.r0_b.size(), p.r0.size());
        if (p.r > 0) EXPECT_EQ(p.groups.back().size(), p.r);
        else EXPECT_EQ(p.groups.back().size(), p.p);
    }
}

TEST(Config, Validation) {
    SynthesisConfig cfg;
    cfg.base_threshold = 2;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg.base_threshold = 26;
    cfg.linear_cutover = 20;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg.linear_cutover = 51;
    EXPECT_NO_THROW(cfg.validate());
}

TEST(Config, ParseMethod) {
    EXPECT_EQ(parse_method("linear"), Method::linear);
    EXPECT_EQ(parse_method("original"), Method::recursive_original);
    EXPECT_EQ(parse_method("recursive_optimized"), Method::recursive_optimized);
    EXPECT_EQ(parse_method("auto"), Method::auto_select);
    EXPECT_THROW(parse_method("fast"), std::invalid_argument);
    for (Method m : {Method::linear, Method::recursive_original, Method::recursive_optimized, Method::auto_select})
        EXPECT_EQ(parse_method(to_string(m)), m);
}

TEST(Linear, SmallCases) {
    EXPECT_TRUE(same_gates(mcx_linear(1), Circuit(3, {Gate::cx(0, 1)})));
    EXPECT_TRUE(same_gates(mcx_linear(2), Circuit(4, {Gate::ccx(0, 1, 2)})));
    // Three controls with a dirty ancilla take four Toffolis.
    const Circuit c3 = mcx_linear(3);
    EXPECT_EQ(c3.size(), 4u);
    EXPECT_EQ(count_x_type_with_controls(c3, 2), 4u);
    EXPECT_THROW(mcx_linear(0), std::invalid_argument);
}

TEST(Linear, OnlySmallGates) {
    for (std::size_t n = 1; n <= 40; ++n) {
        const Circuit c = mcx_linear(n);
        EXPECT_EQ(c.width(), n + 2);
        for (const auto& g : c.gates()) EXPECT_LE(g.num_controls(), 2u);
    }
}

TEST(Linear, FiveControlsExhaustive) {
    const EquivalenceReport r = check_mcx(mcx_linear(5), 5);
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.checked, 128u);
}

TEST(Linear, DepthGrowsLinearly) {
    const double d100 = static_cast<double>(abstract_depth(mcx_linear(100)));
    const double d200 = static_cast<double>(abstract_depth(mcx_linear(200)));
    EXPECT_NEAR(d200 / d100, 2.0, 0.1);
}

TEST(Original, TopLevelGateMultiset) {
    SynthesisConfig cfg = with_threshold(4);
    cfg.max_expansion_depth = 1;
    const Circuit c = mcx_recursive_original(16, cfg);
    std::map<std::size_t, std::size_t> by_controls;
    std::size_t open_gates = 0;
    for (const auto& g : c.gates()) {
        ++by_controls[g.num_controls()];
        open_gates += g.has_open_control();
    }
    // Both C^3X gates have two open controls: four X layers of two gates each.
    EXPECT_EQ(by_controls, (std::map<std::size_t, std::size_t>{{0, 8}, {3, 2}, {4, 8}, {8, 2}}));
    EXPECT_EQ(open_gates, 0u);
    // Parallel C^4X gates sit in four layers of two.
    EXPECT_EQ(abstract_depth(c), 2 + 4 + 2 * 3u);
    EXPECT_TRUE(check_mcx(c, 16).passed());
}

TEST(Original, ShortCircuitsBelowThreshold) {
    EXPECT_TRUE(same_gates(mcx_recursive_original(4), mcx_linear(4)));
    EXPECT_TRUE(same_gates(mcx_recursive_original(26), mcx_linear(26)));
    EXPECT_FALSE(same_gates(mcx_recursive_original(27), mcx_linear(27)));
}

TEST(Original, EightControlsExhaustive) {
    const EquivalenceReport r = check_mcx(mcx_recursive_original(8, with_threshold(3)), 8);
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.checked, 1024u);
}

TEST(Optimized, EightControlsExhaustive) {
    EXPECT_TRUE(check_mcx(mcx_recursive_optimized(8, with_threshold(3)), 8).passed());
}

TEST(Optimized, BelowOriginalAt128) {
    const Circuit o = mcx_recursive_original(128);
    const Circuit z = mcx_recursive_optimized(128);
    EXPECT_LT(abstract_depth(z), abstract_depth(o));
    EXPECT_LT(cx_count(z), cx_count(o));
}

TEST(Optimized, NeverDeeperThanOriginal) {
    for (std::size_t t : {3u, 16u, 26u}) {
        const SynthesisConfig cfg = with_threshold(t);
        for (std::size_t n = 1; n <= 200; ++n) {
            EXPECT_LE(abstract_depth(mcx_recursive_optimized(n, cfg)), abstract_depth(mcx_recursive_original(n, cfg)))
                << "t=" << t << " n=" << n;
        }
    }
}

TEST(Optimized, WithoutCancellationIsOriginalUpToOrientation) {
    SynthesisConfig cfg = with_threshold(4);
    cfg.optimize_cancellation = false;
    const Circuit z = mcx_recursive_optimized(40, cfg);
    const Circuit o = mcx_recursive_original(40, cfg);
    EXPECT_EQ(z.size(), o.size());
    EXPECT_TRUE(check_mcx(z, 40).passed());
    cfg.orientation_rule = OrientationRule::none;
    EXPECT_TRUE(same_gates(mcx_recursive_optimized(40, cfg), o));
}

// Count surviving sub-blocks per column for every group after one level of cancellation.
std::vector<std::vector<std::size_t>> column_block_counts(std::size_t n, std::size_t threshold) {
    SynthesisConfig cfg = with_threshold(threshold);
    cfg.max_expansion_depth = 2;
    cfg.label_blocks = true;
    const Circuit c = mcx_recursive_optimized(n, cfg);
    const PartitionPlan plan = partition(n);
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < plan.b; ++i) {
        std::set<Qubit> wires(plan.groups[i].begin(), plan.groups[i].end());
        wires.insert(static_cast<Qubit>(plan.r0_star[i]));
        wires.insert(static_cast<Qubit>(plan.r0_b[i]));
        std::vector<std::size_t> counts;
        for (int col : {1, 3, 5, 7}) {
            const std::string prefix = "s" + std::to_string(col) + "/s";
            std::set<std::string> blocks;
            for (const auto& g : c.gates()) {
                if (g.label().rfind(prefix, 0) != 0) continue;
                const auto sup = g.support();
                if (std::all_of(sup.begin(), sup.end(), [&](Qubit q) { return wires.count(q) > 0; }))
                    blocks.insert(g.label().substr(0, prefix.size() + 1));
            }
            counts.push_back(blocks.size());
        }
        out.push_back(counts);
    }
    return out;
}

TEST(Optimized, FirstLevelColumnsKeepSixFiveFiveSixBlocks) {
    const auto counts = column_block_counts(36, 3);
    ASSERT_EQ(counts.size(), 4u);
    // The first group lends a wire to the A block, which stops the cancellation across it.
    EXPECT_EQ(counts[0], (std::vector<std::size_t>{6, 6, 6, 6}));
    for (std::size_t i = 1; i < counts.size(); ++i) EXPECT_EQ(counts[i], (std::vector<std::size_t>{6, 5, 5, 6}));
}

TEST(Optimized, FullR0bMovesTheCBorrowToTheFirstGroup) {
    // n = 48: p = 6 and six full groups, so b equals |R0^b| and the C block borrows from R1 too.
    const PartitionPlan plan = partition(48);
    ASSERT_EQ(plan.b, plan.r0_b.size());
    const auto counts = column_block_counts(48, 3);
    EXPECT_EQ(counts[0], (std::vector<std::size_t>{8, 8, 8, 8}));
    for (std::size_t i = 1; i < counts.size(); ++i) EXPECT_EQ(counts[i], (std::vector<std::size_t>{6, 5, 5, 6})) << i;
}

TEST(Optimized, SixFiveFiveSixAtLargerSize) {
    const auto counts = column_block_counts(150, 10);
    for (std::size_t i = 1; i < counts.size(); ++i) {
        if (partition(150).groups[i].size() <= 10) continue;
        EXPECT_EQ(counts[i], (std::vector<std::size_t>{6, 5, 5, 6})) << i;
    }
}

TEST(Auto, Dispatch) {
    EXPECT_TRUE(same_gates(mcx_auto(51), mcx_linear(51)));
    EXPECT_TRUE(same_gates(mcx_auto(52), mcx_recursive_optimized(52)));
    EXPECT_TRUE(same_gates(mcx_auto(2), Circuit(4, {Gate::ccx(0, 1, 2)})));
}

TEST(Synthesize, DispatchesOnMethod) {
    SynthesisConfig cfg;
    cfg.method = Method::recursive_original;
    EXPECT_TRUE(same_gates(synthesize_mcx(60, cfg), mcx_recursive_original(60)));
    cfg.method = Method::linear;
    EXPECT_TRUE(same_gates(synthesize_mcx(60, cfg), mcx_linear(60)));
}

TEST(Synthesize, Deterministic) {
    const SynthesisConfig cfg = with_threshold(5);
    EXPECT_TRUE(same_gates(mcx_recursive_optimized(90, cfg), mcx_recursive_optimized(90, cfg)));
}

TEST(Synthesize, RolesFollowLayout) {
    const Circuit c = mcx_recursive_optimized(30, with_threshold(4));
    EXPECT_EQ(c.roles().target, std::vector<Qubit>{30});
    EXPECT_EQ(c.roles().ancilla, std::vector<Qubit>{31});
    EXPECT_EQ(c.roles().controls.size(), 30u);
}

// Exhaustive correctness over small sizes and several thresholds, including ones that make
// every level recurse.
class McxExhaustive : public ::testing::TestWithParam<std::size_t> {};

TEST_P(McxExhaustive, AllMethodsAllInputs) {
    const std::size_t t = GetParam();
    const SynthesisConfig cfg = with_threshold(t);
    for (std::size_t n = 1; n <= 14; ++n) {
        for (const Circuit& c : {mcx_linear(n), mcx_recursive_original(n, cfg), mcx_recursive_optimized(n, cfg),
                                 mcx_auto(n, cfg)}) {
            const EquivalenceReport r = check_mcx(c, n);
            EXPECT_EQ(r.mode, CheckMode::exhaustive);
            EXPECT_TRUE(r.passed()) << "t=" << t << " n=" << n;
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Thresholds, McxExhaustive, ::testing::Values(3u, 4u, 6u));

// On arbitrary wires every borrowed qubit, including idle bystanders, is restored.
TEST(EmitGates, ArbitraryWiresAreRestored) {
    std::mt19937_64 rng(3);
    for (Method m : {Method::linear, Method::recursive_original, Method::recursive_optimized}) {
        for (std::size_t n : {5u, 9u, 13u}) {
            const std::size_t w = n + 4;
            std::vector<Qubit> wires(w);
            std::iota(wires.begin(), wires.end(), 0);
            std::shuffle(wires.begin(), wires.end(), rng);
            std::vector<Qubit> controls(wires.begin(), wires.begin() + static_cast<std::ptrdiff_t>(n));
            const Qubit target = wires[n];
            const Qubit borrowed = wires[n + 1];
            const Circuit c(w, emit_mcx_gates(m, with_threshold(3), controls, target, borrowed));
            for (std::uint64_t x = 0; x < (1ull << w); ++x) {
                const BasisState in = BasisState::from_index(w, x);
                BasisState expect = in;
                bool all = true;
                for (Qubit q : controls) all = all && in.get(q);
                if (all) expect.flip(target);
                ASSERT_EQ(simulate_reversible(c, in), expect) << to_string(m) << " n=" << n << " x=" << x;
            }
        }
    }
}

TEST(EmitGates, AutoGatesAreCancelledAboveCutover) {
    const SynthesisConfig cfg = with_threshold(4);
    std::vector<Qubit> ctl(20);
    std::iota(ctl.begin(), ctl.end(), 0);
    const auto gates = mcx_auto_gates(cfg, ctl, 20, 21);
    EXPECT_EQ(gates.size(), cancel_gates(gates).size());
    EXPECT_TRUE(check_mcx(Circuit(22, gates), 20).passed());
}

}  // namespace
}  // namespace mcgs
