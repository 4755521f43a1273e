#include "mcgs/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace mcgs {

void RecurrenceSpec::validate() const {
    if (terms.empty()) throw std::invalid_argument("recurrence needs at least one term");
    for (const auto& t : terms) {
        if (!(t.coefficient > 0.0)) throw std::invalid_argument("recurrence coefficients must be positive");
        if (!(t.divisor > 1.0)) throw std::invalid_argument("recurrence divisors must exceed 1");
    }
}

double akra_bazzi_residual(const RecurrenceSpec& spec, double alpha) {
    double s = 0.0;
    for (const auto& t : spec.terms) s += t.coefficient * std::pow(t.divisor, -alpha);
    return s - 1.0;
}

double akra_bazzi_exponent(const RecurrenceSpec& spec) {
    spec.validate();
    double lo = akra_bazzi_residual(spec, 0.0) < 0.0 ? -64.0 : 0.0;
    double hi = 64.0;
    // Residual is strictly decreasing in alpha.
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (akra_bazzi_residual(spec, mid) > 0.0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {
// Sizes 4 and 5 cannot be partitioned and always use the base case.
std::size_t base_table_limit(std::size_t threshold) { return std::max<std::size_t>(threshold, 5); }
}  // namespace

BaseDepthTable linear_depth_table(std::size_t threshold) {
    BaseDepthTable table;
    for (std::size_t m = 1; m <= base_table_limit(threshold); ++m) table[m] = abstract_depth(mcx_linear(m));
    return table;
}

namespace {

bool is_recursive(std::size_t m, std::size_t threshold) {
    return m > threshold && m > 2 && partition(m).splittable();
}

class ScalarModel {
  public:
    ScalarModel(const BaseDepthTable& table, std::size_t threshold) : table_(table), threshold_(threshold) {}

    std::size_t depth(std::size_t m) {
        if (!is_recursive(m, threshold_)) {
            if (m <= 2) return 1;
            auto it = table_.find(m);
            if (it == table_.end()) throw std::out_of_range("base depth table has no entry for " + std::to_string(m));
            return it->second;
        }
        if (auto it = memo_.find(m); it != memo_.end()) return it->second;
        const PartitionPlan plan = partition(m);
        std::size_t column = 0;
        for (const auto& g : plan.groups) column = std::max(column, depth(g.size()));
        const std::size_t c = plan.b + 1 <= 2 ? 1 : depth(plan.b + 1) + 2;
        const std::size_t d = 2 * depth(2 * plan.p) + 4 * column + 2 * c;
        memo_[m] = d;
        return d;
    }

  private:
    const BaseDepthTable& table_;
    std::size_t threshold_;
    std::map<std::size_t, std::size_t> memo_;
};

// Single gate on s wires: every wire reaches every wire in one layer.
DepthProfile gate_profile(std::size_t s) {
    DepthProfile g(s);
    for (std::size_t o = 0; o < s; ++o)
        for (std::size_t i = 0; i < s; ++i) g.at(o, i) = 1;
    return g;
}

class ProfileModel {
  public:
    ProfileModel(const BaseProfileTable& table, std::size_t threshold, bool optimized)
        : table_(table), threshold_(threshold), optimized_(optimized) {}

    const DepthProfile& block(std::size_t m) {
        if (is_recursive(m, threshold_)) return expansion(m, 0, 8);
        auto it = table_.find(m);
        if (it == table_.end()) throw std::out_of_range("base profile table has no entry for " + std::to_string(m));
        return it->second;
    }

    // Segments [lo, hi) of the expansion A B C B A B C B of a closed C^mX block.
    const DepthProfile& expansion(std::size_t m, std::size_t lo, std::size_t hi) {
        const auto key = std::make_tuple(m, lo, hi);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        const PartitionPlan plan = partition(m);
        const std::size_t target = m, borrowed = m + 1;
        DepthProfile prof(m + 2);

        std::vector<std::size_t> a_map(plan.r0.begin(), plan.r0.end());
        a_map.push_back(borrowed);
        a_map.push_back(plan.groups.front().front());

        std::vector<std::size_t> c_map(plan.r0_star.begin(), plan.r0_star.end());
        c_map.push_back(borrowed);
        c_map.push_back(target);
        std::vector<std::size_t> c_gate_map = c_map;
        c_map.push_back(plan.b == plan.r0_b.size() ? plan.groups.front().front() : plan.r0_b.back());

        auto apply_a = [&] { prof.then(block(2 * plan.p), a_map); };
        auto apply_c = [&] {
            if (plan.b + 1 <= 2) return prof.then(gate_profile(c_gate_map.size()), c_gate_map);
            const DepthProfile x = gate_profile(1);
            for (std::size_t q : plan.r0_star) prof.then(x, std::span<const std::size_t>(&q, 1));
            prof.then(block(plan.b + 1), c_map);
            for (std::size_t q : plan.r0_star) prof.then(x, std::span<const std::size_t>(&q, 1));
        };
        auto apply_column = [&](std::size_t column) {
            for (std::size_t i = 0; i < plan.b; ++i) {
                std::vector<std::size_t> map(plan.groups[i].begin(), plan.groups[i].end());
                map.push_back(plan.r0_star[i]);
                map.push_back(plan.r0_b[i]);
                prof.then(group_profile(plan, i, column), map);
            }
        };

        for (std::size_t seg = lo; seg < hi; ++seg) {
            switch (seg) {
                case 0: case 4: apply_a(); break;
                case 2: case 6: apply_c(); break;
                default: apply_column(seg / 2); break;
            }
        }
        return memo_.emplace(key, std::move(prof)).first->second;
    }

  private:
    // Sub-block of group i in column 0..3. In the optimized variant the columns alternate
    // inverted / forward, and mirrored neighbours lose their shared boundary: A' and the first
    // column across a C block, the last column across an A block.
    DepthProfile group_profile(const PartitionPlan& plan, std::size_t i, std::size_t column) {
        const std::size_t g = plan.groups[i].size();
        const bool inverted = optimized_ && (column == 0 || column == 2);
        if (!optimized_ || !is_recursive(g, threshold_)) {
            const DepthProfile& b = block(g);
            return inverted ? b.transposed() : b;
        }
        // The A block borrows the first wire of R1; the C block the last wire of R0^b, or also
        // the first wire of R1 when R0^b has no spare.
        const bool across_c = !(plan.b == plan.r0_b.size() && i == 0);
        const bool across_a = i != 0;
        const std::size_t lo = across_c ? 2 : 0;
        const std::size_t hi = (column == 1 || column == 2) && across_a ? 7 : 8;
        const DepthProfile& e = expansion(g, lo, hi);
        return inverted ? e.transposed() : e;
    }

    const BaseProfileTable& table_;
    std::size_t threshold_;
    bool optimized_;
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, DepthProfile> memo_;
};

}  // namespace

DepthProfile::DepthProfile(std::size_t k) : k_(k), e_(k * k, kNoPath) {
    for (std::size_t q = 0; q < k; ++q) at(q, q) = 0;
}

DepthProfile DepthProfile::of_gates(std::span<const Gate> gates, std::size_t k) {
    DepthProfile prof(k);
    std::vector<int> f(k);
    for (std::size_t in = 0; in < k; ++in) {
        std::fill(f.begin(), f.end(), kNoPath);
        f[in] = 0;
        for (const Gate& g : gates) {
            int layer = kNoPath;
            for (Qubit q : g.support()) {
                if (q >= k) throw std::out_of_range("gate outside profile width");
                layer = std::max(layer, f[q]);
            }
            if (layer == kNoPath) continue;
            for (Qubit q : g.support()) f[q] = layer + 1;
        }
        for (std::size_t out = 0; out < k; ++out) prof.at(out, in) = f[out];
    }
    return prof;
}

int DepthProfile::depth() const { return e_.empty() ? 0 : *std::max_element(e_.begin(), e_.end()); }

DepthProfile DepthProfile::transposed() const {
    DepthProfile t(k_);
    for (std::size_t o = 0; o < k_; ++o)
        for (std::size_t i = 0; i < k_; ++i) t.at(o, i) = at(i, o);
    return t;
}

void DepthProfile::then(const DepthProfile& seg, std::span<const std::size_t> map) {
    const std::size_t s = seg.size();
    if (map.size() != s) throw std::invalid_argument("profile map size mismatch");
    std::vector<int> rows(s * k_, kNoPath);
    for (std::size_t o = 0; o < s; ++o) {
        int* row = &rows[o * k_];
        for (std::size_t j = 0; j < s; ++j) {
            const int w = seg.at(o, j);
            if (w == kNoPath) continue;
            const int* src = &e_[map[j] * k_];
            for (std::size_t i = 0; i < k_; ++i) {
                if (src[i] != kNoPath) row[i] = std::max(row[i], src[i] + w);
            }
        }
    }
    for (std::size_t o = 0; o < s; ++o) std::copy_n(&rows[o * k_], k_, &e_[map[o] * k_]);
}

BaseProfileTable linear_profile_table(std::size_t threshold) {
    BaseProfileTable table;
    for (std::size_t m = 1; m <= base_table_limit(threshold); ++m) {
        const Circuit c = mcx_linear(m);
        table.emplace(m, DepthProfile::of_gates(c.gates(), c.width()));
    }
    return table;
}

std::size_t recurrence_depth(std::size_t n, const BaseDepthTable& table, std::size_t base_threshold) {
    return ScalarModel(table, base_threshold).depth(n);
}

std::size_t predict_depth(std::size_t n, const BaseProfileTable& table, DepthVariant variant,
                          std::size_t base_threshold) {
    if (n < 1) throw std::invalid_argument("number of controls must be at least 1");
    ProfileModel model(table, base_threshold, variant == DepthVariant::optimized);
    return static_cast<std::size_t>(model.block(n).depth());
}

std::optional<std::size_t> find_crossover(const std::vector<std::size_t>& ns, const std::vector<double>& a,
                                          const std::vector<double>& b) {
    if (ns.size() != a.size() || ns.size() != b.size()) throw std::invalid_argument("series size mismatch");
    std::optional<std::size_t> found;
    for (std::size_t i = ns.size(); i-- > 0;) {
        if (!(a[i] < b[i])) break;
        found = ns[i];
    }
    return found;
}

std::optional<std::size_t> find_crossover(const std::function<double(std::size_t)>& a,
                                          const std::function<double(std::size_t)>& b, std::size_t lo,
                                          std::size_t hi) {
    if (lo > hi) throw std::invalid_argument("empty crossover range");
    std::optional<std::size_t> found;
    for (std::size_t m = hi + 1; m-- > lo;) {
        if (!(a(m) < b(m))) break;
        found = m;
    }
    return found;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("need at least two points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0) throw std::invalid_argument("degenerate x values");
    return sxy / sxx;
}

}  // namespace mcgs
