#include "mcgs/synth_mcx.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mcgs/optimizer.hpp"

namespace mcgs {

std::string to_string(Method m) {
    switch (m) {
        case Method::linear: return "linear";
        case Method::recursive_original: return "original";
        case Method::recursive_optimized: return "optimized";
        case Method::auto_select: return "auto";
    }
    return "unknown";
}

Method parse_method(const std::string& s) {
    if (s == "linear") return Method::linear;
    if (s == "original" || s == "recursive_original") return Method::recursive_original;
    if (s == "optimized" || s == "recursive_optimized") return Method::recursive_optimized;
    if (s == "auto") return Method::auto_select;
    throw std::invalid_argument("unknown method '" + s + "'");
}

void SynthesisConfig::validate() const {
    if (base_threshold < 3) throw std::invalid_argument("base threshold must be at least 3");
    if (linear_cutover < base_threshold) {
        throw std::invalid_argument("linear cutover must not be below the base threshold");
    }
}

PartitionPlan partition(std::size_t n) {
    if (n < 4) throw std::invalid_argument("partition requires n >= 4, got " + std::to_string(n));
    PartitionPlan plan;
    plan.n = n;
    auto p = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    while (p * p > n) --p;
    while ((p + 1) * (p + 1) <= n) ++p;
    plan.p = p;

    for (std::size_t i = 0; i < 2 * p; ++i) plan.r0.push_back(i);
    const std::size_t rest = n - 2 * p;
    plan.r = rest % p;
    for (std::size_t start = 2 * p; start < n; start += p) {
        std::vector<std::size_t> group;
        for (std::size_t i = start; i < std::min(n, start + p); ++i) group.push_back(i);
        plan.groups.push_back(std::move(group));
    }
    plan.b = plan.groups.size();
    plan.r0_star.assign(plan.r0.begin(), plan.r0.begin() + static_cast<std::ptrdiff_t>(plan.b));
    plan.r0_b.assign(plan.r0.begin() + static_cast<std::ptrdiff_t>(plan.b), plan.r0.end());
    return plan;
}

namespace {

Gate direct_gate(std::span<const ControlSpec> controls, Qubit target) {
    return Gate::mcx(std::vector<ControlSpec>(controls.begin(), controls.end()), target);
}

/// Toffoli ladder: C^kX(controls -> target) with k-2 dirty ancillas, 4(k-2) Toffolis.
void emit_ladder(std::span<const Qubit> c, Qubit target, std::span<const Qubit> pool, std::vector<Gate>& out,
                 const std::string& label) {
    const std::size_t k = c.size();
    auto push = [&](Gate g) {
        if (!label.empty()) g.set_label(label);
        out.push_back(std::move(g));
    };
    if (k == 0) return push(Gate::x(target));
    if (k == 1) return push(Gate::cx(c[0], target));
    if (k == 2) return push(Gate::ccx(c[0], c[1], target));
    if (pool.size() < k - 2) throw std::logic_error("ladder: not enough borrowed qubits");
    const auto a = pool.first(k - 2);

    // step(j): j == k-2 is the top gate onto the target, j == 0 the bottom gate onto a[0].
    auto step = [&](std::size_t j) {
        if (j == 0) return push(Gate::ccx(c[0], c[1], a[0]));
        const Qubit dst = (j == k - 2) ? target : a[j];
        push(Gate::ccx(c[j + 1], a[j - 1], dst));
    };
    auto down_up = [&](std::size_t top) {
        for (std::size_t j = top; j-- > 1;) step(j);
        step(0);
        for (std::size_t j = 1; j < top; ++j) step(j);
    };
    step(k - 2);
    down_up(k - 2);
    step(k - 2);
    down_up(k - 2);
}

/// Linear-depth C^mX with one borrowed qubit: two halves, each as a Toffoli ladder borrowing
/// the other half.
void emit_linear(std::span<const Qubit> c, Qubit target, Qubit borrowed, std::vector<Gate>& out,
                 const std::string& label) {
    const std::size_t m = c.size();
    if (m <= 2) return emit_ladder(c, target, {}, out, label);

    const std::size_t k1 = (m + 1) / 2;
    std::vector<Qubit> first(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(k1));
    std::vector<Qubit> second(c.begin() + static_cast<std::ptrdiff_t>(k1), c.end());

    std::vector<Qubit> pool1 = second;
    pool1.push_back(target);
    std::vector<Qubit> ctl2 = second;
    ctl2.push_back(borrowed);

    for (int rep = 0; rep < 2; ++rep) {
        emit_ladder(first, borrowed, pool1, out, label);
        emit_ladder(ctl2, target, first, out, label);
    }
}

class McxEmitter {
  public:
    McxEmitter(const SynthesisConfig& cfg, bool recursive, bool reverse_columns)
        : cfg_(cfg), recursive_(recursive), reverse_columns_(reverse_columns) {}

    void emit(std::span<const ControlSpec> controls, Qubit target, Qubit borrowed, std::size_t level,
              const std::string& path, std::vector<Gate>& out) const {
        const bool at_limit = cfg_.max_expansion_depth != 0 && level >= cfg_.max_expansion_depth;
        if (controls.size() <= 2) {
            Gate g = direct_gate(controls, target);
            if (cfg_.label_blocks) g.set_label(path);
            out.push_back(std::move(g));
            return;
        }

        std::vector<Qubit> closed;
        closed.reserve(controls.size());
        std::vector<Qubit> open;
        for (const auto& ctl : controls) {
            closed.push_back(ctl.qubit);
            if (ctl.is_open()) open.push_back(ctl.qubit);
        }
        auto flip_open = [&] {
            for (Qubit q : open) {
                Gate g = Gate::x(q);
                if (cfg_.label_blocks) g.set_label(path + "/x");
                out.push_back(std::move(g));
            }
        };
        flip_open();
        if (at_limit) {
            Gate g = Gate::mcx(std::span<const Qubit>(closed), target);
            if (cfg_.label_blocks) g.set_label(path);
            out.push_back(std::move(g));
        } else {
            emit_closed(closed, target, borrowed, level, path, out);
        }
        flip_open();
    }

  private:
    void emit_closed(std::span<const Qubit> c, Qubit target, Qubit borrowed, std::size_t level,
                     const std::string& path, std::vector<Gate>& out) const {
        const std::size_t m = c.size();
        const std::string label = cfg_.label_blocks ? path : std::string{};
        if (!recursive_ || m <= cfg_.base_threshold) return emit_linear(c, target, borrowed, out, label);
        const PartitionPlan plan = partition(m);
        if (!plan.splittable()) return emit_linear(c, target, borrowed, out, label);

        auto at = [&](const std::vector<std::size_t>& pos) {
            std::vector<Qubit> qs;
            qs.reserve(pos.size());
            for (auto i : pos) qs.push_back(c[i]);
            return qs;
        };
        const std::vector<Qubit> r0 = at(plan.r0);
        const std::vector<Qubit> r0_star = at(plan.r0_star);
        const std::vector<Qubit> r0_b = at(plan.r0_b);
        std::vector<std::vector<Qubit>> groups;
        for (const auto& g : plan.groups) groups.push_back(at(g));

        // A: C^{2p}X(R0 -> borrowed), borrowing the first qubit of R1.
        std::vector<ControlSpec> a_controls;
        for (Qubit q : r0) a_controls.push_back({q, Polarity::closed});
        // C: C^{b+1}X(open R0*, closed borrowed -> target), borrowing the last qubit of R0^b, or the
        // first qubit of R1 when every qubit of R0^b already lends itself to a column gate.
        std::vector<ControlSpec> c_controls;
        for (Qubit q : r0_star) c_controls.push_back({q, Polarity::open});
        c_controls.push_back({borrowed, Polarity::closed});

        const Qubit c_borrowed = plan.b == r0_b.size() ? groups.front().front() : r0_b.back();

        auto sub = [&](std::size_t segment) {
            return cfg_.label_blocks ? path + (path.empty() ? "s" : "/s") + std::to_string(segment)
                                     : std::string{};
        };
        auto emit_a = [&](std::size_t segment) {
            emit(a_controls, borrowed, groups.front().front(), level + 1, sub(segment), out);
        };
        auto emit_c = [&](std::size_t segment) {
            emit(c_controls, target, c_borrowed, level + 1, sub(segment), out);
        };
        // Column of parallel C^pX(R_i -> R0*_i) borrowing R0^b_i.
        auto emit_column = [&](std::size_t segment, bool reversed) {
            std::vector<Gate> column;
            for (std::size_t i = 0; i < groups.size(); ++i) {
                std::vector<ControlSpec> ctl;
                for (Qubit q : groups[i]) ctl.push_back({q, Polarity::closed});
                emit(ctl, r0_star[i], r0_b[i], level + 1, sub(segment), column);
            }
            if (reversed) column = invert_gates(column);
            out.insert(out.end(), std::make_move_iterator(column.begin()), std::make_move_iterator(column.end()));
        };

        // A B C B A B C B: the first and third columns are emitted inverted when the
        // orientation rule is active so that neighbouring columns mirror each other.
        emit_a(0);
        emit_column(1, reverse_columns_);
        emit_c(2);
        emit_column(3, false);
        emit_a(4);
        emit_column(5, reverse_columns_);
        emit_c(6);
        emit_column(7, false);
    }

    const SynthesisConfig& cfg_;
    bool recursive_;
    bool reverse_columns_;
};

Roles mcx_roles(std::size_t n) {
    Roles roles;
    for (std::size_t i = 0; i < n; ++i) roles.controls.push_back(static_cast<Qubit>(i));
    roles.target = {McxLayout::target(n)};
    roles.ancilla = {McxLayout::ancilla(n)};
    return roles;
}

std::vector<Qubit> standard_controls(std::size_t n) {
    std::vector<Qubit> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<Qubit>(i);
    return c;
}

Circuit make_mcx_circuit(std::size_t n, std::vector<Gate> gates) {
    return Circuit(McxLayout::width(n), std::move(gates), mcx_roles(n));
}

void require_positive(std::size_t n) {
    if (n < 1) throw std::invalid_argument("number of controls must be at least 1");
}

}  // namespace

std::vector<Gate> emit_mcx_gates(Method method, const SynthesisConfig& cfg, std::span<const Qubit> controls,
                                 Qubit target, Qubit borrowed) {
    cfg.validate();
    if (method == Method::auto_select) {
        method = controls.size() <= cfg.linear_cutover ? Method::linear : Method::recursive_optimized;
    }
    const bool recursive = method != Method::linear;
    const bool reverse = method == Method::recursive_optimized &&
                         cfg.orientation_rule == OrientationRule::first_and_third_reversed;
    std::vector<ControlSpec> specs;
    specs.reserve(controls.size());
    for (Qubit q : controls) specs.push_back({q, Polarity::closed});
    std::vector<Gate> out;
    McxEmitter(cfg, recursive, reverse).emit(specs, target, borrowed, 0, "", out);
    return out;
}

std::vector<Gate> mcx_auto_gates(const SynthesisConfig& cfg, std::span<const Qubit> controls, Qubit target,
                                 Qubit borrowed) {
    auto gates = emit_mcx_gates(Method::auto_select, cfg, controls, target, borrowed);
    if (controls.size() > cfg.linear_cutover && cfg.optimize_cancellation) gates = cancel_gates(gates);
    return gates;
}

Circuit mcx_linear(std::size_t n) {
    require_positive(n);
    const auto c = standard_controls(n);
    std::vector<Gate> out;
    emit_linear(c, McxLayout::target(n), McxLayout::ancilla(n), out, {});
    return make_mcx_circuit(n, std::move(out));
}

Circuit mcx_recursive_original(std::size_t n, const SynthesisConfig& cfg) {
    require_positive(n);
    const auto c = standard_controls(n);
    return make_mcx_circuit(n, emit_mcx_gates(Method::recursive_original, cfg, c, McxLayout::target(n),
                                              McxLayout::ancilla(n)));
}

Circuit mcx_recursive_optimized(std::size_t n, const SynthesisConfig& cfg) {
    require_positive(n);
    const auto c = standard_controls(n);
    auto gates =
        emit_mcx_gates(Method::recursive_optimized, cfg, c, McxLayout::target(n), McxLayout::ancilla(n));
    if (cfg.optimize_cancellation) gates = cancel_gates(gates);
    return make_mcx_circuit(n, std::move(gates));
}

Circuit mcx_auto(std::size_t n, const SynthesisConfig& cfg) {
    require_positive(n);
    cfg.validate();
    if (n <= cfg.linear_cutover) return mcx_linear(n);
    return mcx_recursive_optimized(n, cfg);
}

Circuit synthesize_mcx(std::size_t n, const SynthesisConfig& cfg) {
    switch (cfg.method) {
        case Method::linear: return mcx_linear(n);
        case Method::recursive_original: return mcx_recursive_original(n, cfg);
        case Method::recursive_optimized: return mcx_recursive_optimized(n, cfg);
        case Method::auto_select: return mcx_auto(n, cfg);
    }
    throw std::invalid_argument("unknown method");
}

}  // namespace mcgs
