#ifndef CORRBOUND_BOUNDS_HPP
#define CORRBOUND_BOUNDS_HPP

#include <optional>
#include <vector>

#include "corrbound/bias.hpp"
#include "corrbound/polyeval.hpp"
#include "corrbound/weights.hpp"

namespace corrbound {

// A bound carried in both linear and log2 form. The log2 form is the one
// computed; the linear value is exp2 of it (0 on underflow, never NaN).
struct ValueLog2 {
    double linear;
    double log2;
};

ValueLog2 value_from_log2(double log2_value);

// All bounds at one bias magnitude. l1_lower/l1_upper are only defined for
// full-rank correctors and are absent when the source generator was
// rank-deficient (a rank-deficient map is never an extractor).
struct SecurityReport {
    double delta = 0.0;
    ValueLog2 linf_norm{};        // max output probability: 2^-rank * W(delta)
    ValueLog2 l2_dist{};          // sqrt(2^-rank * (W(delta^2) - 1))
    std::optional<ValueLog2> l1_lower;  // (W(delta^2)-1) / W(delta) by default
    std::optional<ValueLog2> l1_upper;  // sqrt(W(delta^2) - 1)
    ValueLog2 prior_l1{};         // sum-of-biases estimate W(delta) - 1
    ValueLog2 prior_linf_bias{};  // max Fourier coefficient delta^d
};

// Denominator of the l1 lower bound. `full` is (W(d^2)-1)/W(d), which the
// chain ||x||_1 >= ||x||_2^2/||x||_inf with ||P_Y - U||_inf <= ||P_Y||_inf
// justifies unconditionally; `minus_one` is the sharper (W(d^2)-1)/(W(d)-1)
// variant, opt-in.
enum class L1LowerDenominator { full, minus_one };

// Max output probability over independent coins with |bias| <= delta.
ValueLog2 linf_norm(const WeightDistribution& w, double delta);

// Max l2 distance to uniform over the same bias class.
ValueLog2 l2_distance(const WeightDistribution& w, double delta);

struct L1Bounds {
    ValueLog2 lower;
    ValueLog2 upper;
};

// Two-sided l1 (total variation = l1/2) bounds; requires a full-rank
// corrector. Throws RankDeficient when the source generator had more rows
// than rank, EmptyCode when rank = 0.
L1Bounds l1_bounds(const WeightDistribution& w, double delta,
                   L1LowerDenominator denom = L1LowerDenominator::full);

struct PriorBounds {
    ValueLog2 l1;         // W(delta) - 1
    ValueLog2 linf_bias;  // delta^d
};

PriorBounds prior_bounds(const WeightDistribution& w, double delta);

// One SecurityReport per grid point; all quantities share the evaluated
// W(delta) / W(delta^2) vectors. l1 fields are filled only for full-rank
// correctors.
std::vector<SecurityReport> report(const WeightDistribution& w, const DeltaGrid& grid,
                                   L1LowerDenominator denom = L1LowerDenominator::full);

// Largest delta in [0, 1] such that 0.5*log2(W(delta^2) - 1) <= -s, i.e. the
// maximum tolerable input bias for l1 security 2^-s. Bisects the monotone
// log2 objective to relative tolerance 1e-9 in delta. Requires s > 0 and a
// full-rank corrector with rank >= 1.
double max_bias_for_security(const WeightDistribution& w, double security_bits);

}  // namespace corrbound

#endif
