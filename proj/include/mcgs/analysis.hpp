#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "mcgs/synth_mcx.hpp"

namespace mcgs {

struct RecurrenceTerm {
    double coefficient = 1.0;  ///< a_i > 0
    double divisor = 2.0;      ///< b_i > 1
};

/// T(k) <= constant + sum_i a_i T(k / b_i).
struct RecurrenceSpec {
    std::vector<RecurrenceTerm> terms;
    double constant = 0.0;

    void validate() const;
};

/// sum_i a_i / b_i^alpha - 1.
double akra_bazzi_residual(const RecurrenceSpec& spec, double alpha);

/// The unique alpha with sum_i a_i / b_i^alpha = 1, by bisection to 1e-9 on [0, 64]
/// (or [-64, 64] when sum_i a_i < 1).
double akra_bazzi_exponent(const RecurrenceSpec& spec);

/// Abstract depth of the base-case generator for 1..max(threshold, 5) controls.
using BaseDepthTable = std::map<std::size_t, std::size_t>;
BaseDepthTable linear_depth_table(std::size_t threshold);

/// Scalar depth recurrence over the generator's partition plan:
/// D_n = 2 D_{2p} + 4 max_i D_{|R_i|} + 2 (D_{b+1} + 2), base entries from `table`.
/// Adjacent sub-blocks may overlap in an as-soon-as-possible layering, so this is an upper
/// bound on the measured abstract depth.
std::size_t recurrence_depth(std::size_t n, const BaseDepthTable& table, std::size_t base_threshold);

/// Max-plus depth profile of a block over k local wires: entry (out, in) is the length of the
/// longest gate chain entering on wire `in` and leaving on wire `out` (kNoPath if none).
/// Untouched wires pass through with 0 on the diagonal. Composing blocks is a max-plus product,
/// so as-soon-as-possible layering of a sequence of blocks is evaluated exactly.
class DepthProfile {
  public:
    static constexpr int kNoPath = -(1 << 29);

    explicit DepthProfile(std::size_t k = 0);
    static DepthProfile of_gates(std::span<const Gate> gates, std::size_t k);

    std::size_t size() const { return k_; }
    int at(std::size_t out, std::size_t in) const { return e_[out * k_ + in]; }
    int& at(std::size_t out, std::size_t in) { return e_[out * k_ + in]; }
    /// Layer count of the block from an empty frontier.
    int depth() const;
    /// Profile of the inverted gate list.
    DepthProfile transposed() const;
    /// Appends block `seg`, whose local wire j is this block's wire map[j].
    void then(const DepthProfile& seg, std::span<const std::size_t> map);

  private:
    std::size_t k_;
    std::vector<int> e_;
};

/// Profiles of mcx_linear(m) for m = 1..max(threshold, 5) in its own layout.
using BaseProfileTable = std::map<std::size_t, DepthProfile>;
BaseProfileTable linear_profile_table(std::size_t threshold);

enum class DepthVariant { original, optimized };

/// Evaluates the depth recurrence over the generator's partition plan in max-plus form, block
/// by block (A, column, C, column, A, column, C, column at every level).
///
/// original: equals the measured abstract depth of mcx_recursive_original.
/// optimized: drops the boundary sub-blocks that mirrored neighbouring columns cancel at each
/// level (two across a C block, one across an A block, except where a borrowed wire blocks
/// commutation) and evaluates the rest; an upper bound on mcx_recursive_optimized.
/// Throws std::out_of_range when a needed base entry is missing.
std::size_t predict_depth(std::size_t n, const BaseProfileTable& table, DepthVariant variant,
                          std::size_t base_threshold);

/// Smallest n in [lo, hi] such that a(m) < b(m) for every m in [n, hi]; nullopt if a(hi) >= b(hi).
std::optional<std::size_t> find_crossover(const std::function<double(std::size_t)>& a,
                                          const std::function<double(std::size_t)>& b, std::size_t lo,
                                          std::size_t hi);

/// Same over precomputed series indexed by the shared sorted `ns`.
std::optional<std::size_t> find_crossover(const std::vector<std::size_t>& ns, const std::vector<double>& a,
                                          const std::vector<double>& b);

/// Least-squares slope of y against x.
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace mcgs
