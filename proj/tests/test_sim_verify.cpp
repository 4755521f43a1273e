#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "mcgs/sim_verify.hpp"
#include "mcgs/synth_mcx.hpp"

namespace mcgs {
namespace {

BasisState bits(const std::string& s) {
    BasisState b(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) b.set(i, s[i] == '1');
    return b;
}

Gate c3x() {
    const Qubit ctl[] = {0, 1, 2};
    return Gate::mcx(ctl, 3);
}

TEST(SimulateReversible, AllOnesFlips) {
    EXPECT_EQ(simulate_reversible(Circuit(4, {c3x()}), bits("1110")), bits("1111"));
}

TEST(SimulateReversible, MissingControlKeeps) {
    EXPECT_EQ(simulate_reversible(Circuit(4, {c3x()}), bits("1010")), bits("1010"));
}

TEST(SimulateReversible, OpenControlFiresOnZero) {
    const Gate g = Gate::mcx(std::vector<ControlSpec>{{0, Polarity::open}, {1, Polarity::closed}}, 2);
    EXPECT_EQ(simulate_reversible(Circuit(3, {g}), bits("010")), bits("011"));
    EXPECT_EQ(simulate_reversible(Circuit(3, {g}), bits("110")), bits("110"));
}

TEST(SimulateReversible, RejectsUnitary) {
    EXPECT_THROW(simulate_reversible(Circuit(1, {Gate::unitary(ry(0.1), 0)}), BasisState(1)), UnsupportedGate);
}

TEST(BasisState, IndexAndString) {
    const BasisState b = BasisState::from_index(5, 0b00110);
    EXPECT_EQ(b.str(), "01100");
    EXPECT_TRUE(b.get(1));
    EXPECT_FALSE(b.get(0));
}

Circuit random_x_circuit(std::mt19937_64& rng, std::size_t w, std::size_t gates) {
    Circuit c(w);
    for (std::size_t i = 0; i < gates; ++i) {
        const Qubit t = static_cast<Qubit>(rng() % w);
        std::vector<ControlSpec> ctl;
        for (Qubit q = 0; q < w; ++q)
            if (q != t && rng() % 4 == 0) ctl.push_back({q, rng() % 3 == 0 ? Polarity::open : Polarity::closed});
        c.push_back(Gate::mcx(ctl, t));
    }
    return c;
}

TEST(SimulateReversible, AgreesWithDensePermutation) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const Circuit c = random_x_circuit(rng, 8, 40);
        const DenseMatrix u = dense_unitary(c);
        for (std::uint64_t x = 0; x < 256; ++x) {
            const BasisState out = simulate_reversible(c, BasisState::from_index(8, x));
            std::uint64_t y = 0;
            for (std::size_t q = 0; q < 8; ++q) y |= static_cast<std::uint64_t>(out.get(q)) << q;
            EXPECT_EQ(u(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)), Complex(1.0));
        }
    }
}

TEST(SimulateReversible, LanesMatchScalar) {
    std::mt19937_64 rng(32);
    const Circuit c = random_x_circuit(rng, 12, 100);
    std::vector<std::uint64_t> lanes(12);
    for (auto& l : lanes) l = rng();
    std::vector<std::uint64_t> in = lanes;
    simulate_reversible_lanes(c, lanes);
    for (int k = 0; k < 64; ++k) {
        BasisState x(12);
        for (std::size_t q = 0; q < 12; ++q) x.set(q, (in[q] >> k) & 1);
        const BasisState y = simulate_reversible(c, x);
        for (std::size_t q = 0; q < 12; ++q) EXPECT_EQ(y.get(q), ((lanes[q] >> k) & 1) != 0);
    }
}

TEST(DenseUnitary, IsPermutationForXType) {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t w = 1 + rng() % 8;
        const DenseMatrix u = dense_unitary(random_x_circuit(rng, w, 30));
        for (Eigen::Index col = 0; col < u.cols(); ++col) {
            int ones = 0;
            for (Eigen::Index row = 0; row < u.rows(); ++row) {
                const Complex z = u(row, col);
                EXPECT_TRUE(z == Complex(0.0) || z == Complex(1.0));
                ones += z == Complex(1.0);
            }
            EXPECT_EQ(ones, 1);
        }
    }
}

TEST(DenseUnitary, SingleX) {
    const DenseMatrix u = dense_unitary(Circuit(1, {Gate::x(0)}));
    DenseMatrix x(2, 2);
    x << 0, 1, 1, 0;
    EXPECT_EQ(u, x);
}

TEST(DenseUnitary, QubitZeroIsLeastSignificant) {
    const DenseMatrix u = dense_unitary(Circuit(2, {Gate::x(0)}));
    EXPECT_EQ(u(1, 0), Complex(1.0));
    EXPECT_EQ(u(3, 2), Complex(1.0));
}

TEST(DenseUnitary, RowUpdatesAgree) {
    Circuit c(3);
    c.push_back(Gate::unitary(rz(0.3) * ry(1.2), 0));
    c.push_back(Gate::controlled_unitary(ry(0.7), {0, Polarity::open}, 2));
    c.push_back(Gate::ccx(0, 2, 1));
    DenseMatrix m = DenseMatrix::Identity(8, 8);
    for (const auto& g : c.gates()) apply_gate_rows(g, m);
    EXPECT_LE((m - dense_unitary(c)).norm(), 1e-14);
}

TEST(DenseUnitary, WidthCap) {
    EXPECT_THROW(dense_unitary(Circuit(kMaxDenseWidth + 1)), ResourceError);
    EXPECT_NO_THROW(dense_unitary(Circuit(3)));
}

TEST(SpectralDistance, Examples) {
    const DenseMatrix i2 = DenseMatrix::Identity(2, 2);
    DenseMatrix x(2, 2);
    x << 0, 1, 1, 0;
    EXPECT_EQ(spectral_distance(i2, i2), 0.0);
    EXPECT_NEAR(spectral_distance(i2, x), 2.0, 1e-14);
    EXPECT_GE(spectral_distance_upper_bound(i2, x) + 1e-14, 2.0);
    EXPECT_THROW(spectral_distance(i2, DenseMatrix::Identity(4, 4)), std::invalid_argument);
}

TEST(SpectralDistance, BoundDominatesExact) {
    std::mt19937_64 rng(34);
    for (int i = 0; i < 20; ++i) {
        const DenseMatrix a = DenseMatrix::Random(8, 8);
        const DenseMatrix b = DenseMatrix::Random(8, 8);
        const double exact = spectral_distance(a, b);
        EXPECT_GE(spectral_distance_upper_bound(a, b) + 1e-12, exact);
        EXPECT_NEAR(spectral_distance_within(a, b, 0.0), exact, 1e-12);
    }
}

TEST(StateVector, MatchesDense) {
    std::mt19937_64 rng(35);
    Circuit c(5);
    for (int i = 0; i < 20; ++i) {
        c.push_back(Gate::unitary(rz(0.1 * i) * ry(0.3 * i), static_cast<Qubit>(i % 5)));
        c.push_back(Gate::cx(static_cast<Qubit>(i % 5), static_cast<Qubit>((i + 2) % 5)));
    }
    Eigen::VectorXcd psi = Eigen::VectorXcd::Random(32);
    psi.normalize();
    const Eigen::VectorXcd expect = dense_unitary(c) * psi;
    apply_to_state(c, psi);
    EXPECT_LE((psi - expect).norm(), 1e-12);
}

TEST(CheckMcx, LinearFiveExhaustive) {
    const EquivalenceReport r = check_mcx(mcx_linear(5), 5);
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.mode, CheckMode::exhaustive);
    EXPECT_EQ(r.checked, 128u);
}

TEST(CheckMcx, DetectsWrongCircuit) {
    const EquivalenceReport r = check_mcx(Circuit(4, {Gate::cx(0, 2)}), 2);
    EXPECT_FALSE(r.passed());
    ASSERT_FALSE(r.failures.empty());
    // Control 0 set alone must not flip the target.
    bool saw_single = false;
    for (const auto& f : r.failures) saw_single = saw_single || f.input == "1000";
    EXPECT_TRUE(saw_single);
    EXPECT_EQ(r.failure_count, 4u);
}

TEST(CheckMcx, DetectsDirtyAncilla) {
    Circuit c = mcx_linear(4);
    c.push_back(Gate::cx(0, 5));
    EXPECT_FALSE(check_mcx(c, 4).passed());
}

TEST(CheckMcx, WidthMismatch) { EXPECT_THROW(check_mcx(mcx_linear(5), 4), std::invalid_argument); }

TEST(CheckMcx, SampledHundred) {
    const EquivalenceReport r = check_mcx(mcx_recursive_optimized(100), 100);
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.mode, CheckMode::sampled);
    EXPECT_EQ(r.checked, 1000u + 206u);
    EXPECT_EQ(r.seed, kDefaultSeed);
}

TEST(CheckMcx, SampledCatchesSingleZeroBug) {
    // Target flips when control 7 is zero but all others are one: random sampling alone would
    // almost never hit this input, the critical patterns always do.
    Circuit c = mcx_recursive_optimized(40);
    std::vector<ControlSpec> ctl;
    for (Qubit q = 0; q < 40; ++q) ctl.push_back({q, q == 7 ? Polarity::open : Polarity::closed});
    c.push_back(Gate::mcx(ctl, 40));
    EXPECT_FALSE(check_mcx(c, 40).passed());
}

TEST(CheckMcx, SampledIsReproducible) {
    McxCheckOptions o;
    o.mode = CheckMode::sampled;
    o.seed = 5;
    const Circuit c = mcx_linear(12);
    std::ostringstream a, b;
    write_report(check_mcx(c, 12, o), a);
    write_report(check_mcx(c, 12, o), b);
    EXPECT_EQ(a.str(), b.str());
    EXPECT_NE(a.str().find("seed"), std::string::npos);
}

TEST(CriticalPatterns, Count) {
    const auto p = critical_patterns(10);
    EXPECT_EQ(p.size(), 26u);
    for (const auto& s : p) EXPECT_EQ(s.width(), 12u);
}

TEST(CheckUnitary, ControlledMatrixOracle) {
    const Qubit ctl[] = {0};
    const DenseMatrix expect = controlled_unitary_matrix(2, ctl, 1, ry(0.4));
    const Circuit c(2, {Gate::controlled_unitary(ry(0.4), {0, Polarity::closed}, 1)});
    const EquivalenceReport r = check_unitary(c, expect, 1e-12);
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.mode, CheckMode::unitary);
    EXPECT_FALSE(check_unitary(Circuit(2), expect, 1e-12).passed());
}

}  // namespace
}  // namespace mcgs
