#include "mcgs/sim_verify.hpp"

#include <algorithm>
#include <bit>
#include <random>

namespace mcgs {

BasisState BasisState::from_index(std::size_t width, std::uint64_t index) {
    BasisState s(width);
    for (std::size_t q = 0; q < width && q < 64; ++q) s.set(q, ((index >> q) & 1u) != 0);
    return s;
}

std::string BasisState::str() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = bits_[i] ? '1' : '0';
    return s;
}

namespace {

void require_x_type(const Circuit& c) {
    for (const auto& g : c.gates()) {
        if (!g.is_x_type()) throw UnsupportedGate("reversible simulation needs X-type gates only");
    }
}

}  // namespace

BasisState simulate_reversible(const Circuit& c, const BasisState& x) {
    if (x.width() != c.width()) throw std::invalid_argument("basis state width does not match circuit");
    require_x_type(c);
    BasisState s = x;
    for (const auto& g : c.gates()) {
        bool fire = true;
        for (const auto& ctl : g.controls()) {
            if (s.get(ctl.qubit) == ctl.is_open()) {
                fire = false;
                break;
            }
        }
        if (fire) s.flip(g.target());
    }
    return s;
}

void simulate_reversible_lanes(const Circuit& c, std::vector<std::uint64_t>& lanes) {
    if (lanes.size() != c.width()) throw std::invalid_argument("lane count does not match circuit width");
    require_x_type(c);
    for (const auto& g : c.gates()) {
        std::uint64_t mask = ~std::uint64_t{0};
        for (const auto& ctl : g.controls()) mask &= ctl.is_open() ? ~lanes[ctl.qubit] : lanes[ctl.qubit];
        lanes[g.target()] ^= mask;
    }
}

std::string to_string(CheckMode m) {
    switch (m) {
        case CheckMode::exhaustive: return "exhaustive";
        case CheckMode::sampled: return "sampled";
        case CheckMode::unitary: return "unitary";
    }
    return "unknown";
}

void write_report(const EquivalenceReport& r, std::ostream& out) {
    out << "mode=" << to_string(r.mode) << " checked=" << r.checked << " failures=" << r.failure_count;
    if (r.mode == CheckMode::unitary) out << " max_distance=" << r.max_distance << " tolerance=" << r.tolerance;
    if (r.mode == CheckMode::sampled) out << " seed=" << r.seed;
    out << " result=" << (r.passed() ? "PASS" : "FAIL") << '\n';
    for (const auto& f : r.failures) {
        out << "  counterexample input=" << f.input << " expected=" << f.expected << " got=" << f.got << '\n';
    }
}

std::vector<BasisState> critical_patterns(std::size_t n) {
    const std::size_t w = n + 2;
    std::vector<BasisState> base;
    BasisState ones(w);
    for (std::size_t i = 0; i < n; ++i) ones.set(i, true);
    base.push_back(ones);
    BasisState ones_t = ones;
    ones_t.set(n, true);
    base.push_back(ones_t);
    base.emplace_back(w);
    for (std::size_t i = 0; i < n; ++i) {
        BasisState s = ones;
        s.set(i, false);
        base.push_back(s);
    }
    std::vector<BasisState> out;
    for (const auto& s : base) {
        for (bool anc : {false, true}) {
            BasisState t = s;
            t.set(n + 1, anc);
            out.push_back(t);
        }
    }
    return out;
}

namespace {

constexpr std::uint64_t kLowPatterns[6] = {0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
                                           0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};

BasisState lane_state(const std::vector<std::uint64_t>& lanes, unsigned j) {
    BasisState s(lanes.size());
    for (std::size_t q = 0; q < lanes.size(); ++q) s.set(q, ((lanes[q] >> j) & 1u) != 0);
    return s;
}

/// Checks one batch; `valid` masks the lanes in use.
void check_batch(const Circuit& c, std::size_t n, const std::vector<std::uint64_t>& in, std::uint64_t valid,
                 EquivalenceReport& report, std::size_t max_recorded) {
    std::vector<std::uint64_t> out = in;
    simulate_reversible_lanes(c, out);
    std::uint64_t all = ~std::uint64_t{0};
    for (std::size_t q = 0; q < n; ++q) all &= in[q];
    std::uint64_t bad = 0;
    for (std::size_t q = 0; q < in.size(); ++q) {
        const std::uint64_t expect = q == n ? in[q] ^ all : in[q];
        bad |= expect ^ out[q];
    }
    bad &= valid;
    report.checked += static_cast<std::size_t>(std::popcount(valid));
    report.failure_count += static_cast<std::size_t>(std::popcount(bad));
    while (bad != 0 && report.failures.size() < max_recorded) {
        const auto j = static_cast<unsigned>(std::countr_zero(bad));
        bad &= bad - 1;
        BasisState x = lane_state(in, j);
        BasisState expected = x;
        bool fire = true;
        for (std::size_t q = 0; q < n; ++q) fire = fire && x.get(q);
        if (fire) expected.flip(n);
        report.failures.push_back({x.str(), expected.str(), lane_state(out, j).str()});
    }
}

}  // namespace

EquivalenceReport check_mcx(const Circuit& c, std::size_t n, const McxCheckOptions& opts) {
    const std::size_t w = n + 2;
    if (c.width() != w) {
        throw std::invalid_argument("check_mcx: circuit width " + std::to_string(c.width()) + " != n+2 = " +
                                    std::to_string(w));
    }
    EquivalenceReport report;
    report.mode = opts.mode.value_or(w <= kMaxExhaustiveWidth ? CheckMode::exhaustive : CheckMode::sampled);
    report.seed = opts.seed;

    std::vector<std::uint64_t> lanes(w);
    if (report.mode == CheckMode::exhaustive) {
        if (w > kMaxExhaustiveWidth) throw ResourceError("exhaustive check limited to width 20");
        const std::uint64_t total = std::uint64_t{1} << w;
        const std::uint64_t valid = total >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << total) - 1;
        for (std::uint64_t base = 0; base < total; base += 64) {
            for (std::size_t q = 0; q < w; ++q) {
                lanes[q] = q < 6 ? kLowPatterns[q] : (((base >> q) & 1u) ? ~std::uint64_t{0} : 0);
            }
            check_batch(c, n, lanes, valid, report, opts.max_recorded_failures);
        }
        return report;
    }
    if (report.mode != CheckMode::sampled) throw std::invalid_argument("check_mcx: unsupported mode");

    std::vector<BasisState> inputs = critical_patterns(n);
    std::mt19937_64 rng(opts.seed);
    for (std::size_t s = 0; s < opts.samples; ++s) {
        BasisState x(w);
        std::uint64_t word = 0;
        for (std::size_t q = 0; q < w; ++q) {
            if (q % 64 == 0) word = rng();
            x.set(q, ((word >> (q % 64)) & 1u) != 0);
        }
        inputs.push_back(std::move(x));
    }
    for (std::size_t start = 0; start < inputs.size(); start += 64) {
        const std::size_t count = std::min<std::size_t>(64, inputs.size() - start);
        std::fill(lanes.begin(), lanes.end(), 0);
        for (std::size_t j = 0; j < count; ++j) {
            for (std::size_t q = 0; q < w; ++q) {
                if (inputs[start + j].get(q)) lanes[q] |= std::uint64_t{1} << j;
            }
        }
        const std::uint64_t valid = count == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1;
        check_batch(c, n, lanes, valid, report, opts.max_recorded_failures);
    }
    return report;
}

namespace {

bool controls_hold(const Gate& g, std::size_t row) {
    for (const auto& ctl : g.controls()) {
        if ((((row >> ctl.qubit) & 1u) != 0) == ctl.is_open()) return false;
    }
    return true;
}

// Mixes line i and line i|t of `m` by the gate's 2x2 block, where a line is a row of the
// operator or, with `transposed`, a column of its transpose (contiguous in Eigen's layout).
void apply_gate_lines(const Gate& g, DenseMatrix& m, bool transposed) {
    const auto dim = static_cast<std::size_t>(transposed ? m.cols() : m.rows());
    const std::size_t tbit = std::size_t{1} << g.target();
    const Mat2 u = g.is_x_type() ? pauli_x() : *g.matrix();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & tbit) != 0 || !controls_hold(g, i)) continue;
        const auto a = static_cast<Eigen::Index>(i);
        const auto b = static_cast<Eigen::Index>(i | tbit);
        if (transposed) {
            if (g.is_x_type()) {
                m.col(a).swap(m.col(b));
                continue;
            }
            const Eigen::VectorXcd c0 = m.col(a), c1 = m.col(b);
            m.col(a) = u(0, 0) * c0 + u(0, 1) * c1;
            m.col(b) = u(1, 0) * c0 + u(1, 1) * c1;
        } else {
            if (g.is_x_type()) {
                m.row(a).swap(m.row(b));
                continue;
            }
            const Eigen::RowVectorXcd r0 = m.row(a), r1 = m.row(b);
            m.row(a) = u(0, 0) * r0 + u(0, 1) * r1;
            m.row(b) = u(1, 0) * r0 + u(1, 1) * r1;
        }
    }
}

}  // namespace

void apply_gate_rows(const Gate& g, DenseMatrix& m) { apply_gate_lines(g, m, false); }

DenseMatrix dense_unitary(const Circuit& c) {
    if (c.width() > kMaxDenseWidth) {
        throw ResourceError("dense unitary limited to width " + std::to_string(kMaxDenseWidth));
    }
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << c.width());
    // Accumulate the transpose so that every update touches contiguous columns.
    DenseMatrix t = DenseMatrix::Identity(dim, dim);
    for (const auto& g : c.gates()) apply_gate_lines(g, t, true);
    return t.transpose();
}

void apply_to_state(const Circuit& c, Eigen::VectorXcd& state) {
    if (c.width() > kMaxStatevectorWidth) {
        throw ResourceError("state vector simulation limited to width " + std::to_string(kMaxStatevectorWidth));
    }
    const std::size_t dim = std::size_t{1} << c.width();
    if (static_cast<std::size_t>(state.size()) != dim) throw std::invalid_argument("state dimension mismatch");
    for (const auto& g : c.gates()) {
        const std::size_t tbit = std::size_t{1} << g.target();
        const Mat2 u = g.is_x_type() ? pauli_x() : *g.matrix();
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & tbit) != 0 || !controls_hold(g, i)) continue;
            const std::size_t j = i | tbit;
            const auto i0 = static_cast<Eigen::Index>(i);
            const auto j0 = static_cast<Eigen::Index>(j);
            const Complex a = state(i0);
            const Complex b = state(j0);
            state(i0) = u(0, 0) * a + u(0, 1) * b;
            state(j0) = u(1, 0) * a + u(1, 1) * b;
        }
    }
}

double spectral_distance(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("dimension mismatch");
    if (a.size() == 0) return 0.0;
    const DenseMatrix d = a - b;
    if (d.cwiseAbs().maxCoeff() == 0.0) return 0.0;
    Eigen::BDCSVD<DenseMatrix> svd(d);
    return svd.singularValues()(0);
}

double spectral_distance_upper_bound(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("dimension mismatch");
    if (a.size() == 0) return 0.0;
    const Eigen::MatrixXd d = (a - b).cwiseAbs();
    return std::sqrt(d.colwise().sum().maxCoeff() * d.rowwise().sum().maxCoeff());
}

double spectral_distance_within(const DenseMatrix& a, const DenseMatrix& b, double tolerance) {
    const double bound = spectral_distance_upper_bound(a, b);
    if (bound <= tolerance) return bound;
    return spectral_distance(a, b);
}

DenseMatrix controlled_unitary_matrix(std::size_t width, std::span<const Qubit> controls, Qubit target,
                                      const Mat2& u) {
    if (width > kMaxDenseWidth) throw ResourceError("dense unitary limited to width 11");
    const std::size_t dim = std::size_t{1} << width;
    DenseMatrix m = DenseMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    std::size_t cmask = 0;
    for (Qubit q : controls) cmask |= std::size_t{1} << q;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & tbit) != 0 || (i & cmask) != cmask) continue;
        const auto i0 = static_cast<Eigen::Index>(i);
        const auto j0 = static_cast<Eigen::Index>(i | tbit);
        m(i0, i0) = u(0, 0);
        m(i0, j0) = u(0, 1);
        m(j0, i0) = u(1, 0);
        m(j0, j0) = u(1, 1);
    }
    return m;
}

EquivalenceReport check_unitary(const Circuit& c, const DenseMatrix& expected, double tolerance) {
    EquivalenceReport report;
    report.mode = CheckMode::unitary;
    report.tolerance = tolerance;
    const DenseMatrix got = dense_unitary(c);
    if (got.rows() != expected.rows()) throw std::invalid_argument("check_unitary: dimension mismatch");
    report.checked = static_cast<std::size_t>(got.cols());
    report.max_distance = spectral_distance_within(got, expected, tolerance);
    return report;
}

}  // namespace mcgs
