#include "corrbound/bounds.hpp"

#include <cmath>
#include <limits>

namespace corrbound {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_usable(const WeightDistribution& w) {
    if (w.partial())
        throw ValidationError(
            "partial weight distribution: only lower bounds on W are valid, security bounds "
            "require the complete enumerator");
}

void check_full_rank(const WeightDistribution& w) {
    if (w.corrector_rows() && *w.corrector_rows() > w.rank())
        throw RankDeficient("corrector has " + std::to_string(*w.corrector_rows()) +
                            " output rows but rank " + std::to_string(w.rank()) +
                            "; full rank required");
}

double check_delta(double delta) {
    if (!(delta >= 0.0 && delta <= 1.0)) throw InvalidParams("delta must lie in [0, 1]");
    return delta;
}

}  // namespace

ValueLog2 value_from_log2(double log2_value) {
    return ValueLog2{std::exp2(log2_value), log2_value};
}

ValueLog2 linf_norm(const WeightDistribution& w, double delta) {
    check_usable(w);
    check_delta(delta);
    return value_from_log2(eval_w_log2(w, delta) - static_cast<double>(w.rank()));
}

ValueLog2 l2_distance(const WeightDistribution& w, double delta) {
    check_usable(w);
    check_delta(delta);
    if (delta == 0.0) return ValueLog2{0.0, kNegInf};
    const double wm1 = eval_w_minus_1_log2(w, delta * delta);
    return value_from_log2(0.5 * (wm1 - static_cast<double>(w.rank())));
}

L1Bounds l1_bounds(const WeightDistribution& w, double delta, L1LowerDenominator denom) {
    check_usable(w);
    check_full_rank(w);
    check_delta(delta);
    if (!w.min_distance()) throw EmptyCode("l1 bounds need rank >= 1");
    if (delta == 0.0) return L1Bounds{ValueLog2{0.0, kNegInf}, ValueLog2{0.0, kNegInf}};
    const double wm1_sq = eval_w_minus_1_log2(w, delta * delta);
    const double upper = 0.5 * wm1_sq;
    const double den = denom == L1LowerDenominator::full ? eval_w_log2(w, delta)
                                                         : eval_w_minus_1_log2(w, delta);
    return L1Bounds{value_from_log2(wm1_sq - den), value_from_log2(upper)};
}

PriorBounds prior_bounds(const WeightDistribution& w, double delta) {
    check_usable(w);
    check_delta(delta);
    auto d = w.min_distance();
    if (!d) throw EmptyCode("prior bounds need rank >= 1");
    const double prior_l1 = eval_w_minus_1_log2(w, delta);
    const double linf_bias =
        delta == 0.0 ? kNegInf : static_cast<double>(*d) * std::log2(delta);
    return PriorBounds{value_from_log2(prior_l1), value_from_log2(linf_bias)};
}

std::vector<SecurityReport> report(const WeightDistribution& w, const DeltaGrid& grid,
                                   L1LowerDenominator denom) {
    check_usable(w);
    auto d = w.min_distance();
    if (!d) throw EmptyCode("security report needs rank >= 1");
    const bool full_rank = !w.corrector_rows() || *w.corrector_rows() <= w.rank();
    const double rank = static_cast<double>(w.rank());

    // One shared evaluation per argument vector, as the scan workloads want.
    const std::vector<double> log2_w = eval_w_log2(w, grid);
    const std::vector<double> log2_wm1 = eval_w_minus_1_log2(w, grid);
    const std::vector<double> log2_wm1_sq = eval_w_minus_1_log2(w, grid.squared());

    std::vector<SecurityReport> out;
    out.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        SecurityReport r;
        r.delta = grid[i];
        r.linf_norm = value_from_log2(log2_w[i] - rank);
        r.l2_dist = value_from_log2(0.5 * (log2_wm1_sq[i] - rank));
        if (full_rank) {
            const double den = denom == L1LowerDenominator::full ? log2_w[i] : log2_wm1[i];
            // 0/0 at delta = 0: both bounds are exactly 0 there.
            if (grid[i] == 0.0) {
                r.l1_lower = ValueLog2{0.0, kNegInf};
                r.l1_upper = ValueLog2{0.0, kNegInf};
            } else {
                r.l1_lower = value_from_log2(log2_wm1_sq[i] - den);
                r.l1_upper = value_from_log2(0.5 * log2_wm1_sq[i]);
            }
        }
        r.prior_l1 = value_from_log2(log2_wm1[i]);
        r.prior_linf_bias = value_from_log2(
            grid[i] == 0.0 ? kNegInf : static_cast<double>(*d) * std::log2(grid[i]));
        out.push_back(r);
    }
    return out;
}

double max_bias_for_security(const WeightDistribution& w, double security_bits) {
    check_usable(w);
    check_full_rank(w);
    if (!(security_bits > 0.0)) throw InvalidParams("security target must be > 0 bits");
    auto d = w.min_distance();
    if (!d) throw TargetUnreachable("zero code: W - 1 is identically 0, no bias bound exists");

    // Objective g(t) = 0.5*log2(W(delta^2) - 1) at delta = 2^t, strictly
    // increasing in t. We need the largest t <= 0 with g(t) <= -s.
    const auto objective = [&](double t) {
        const double delta = std::exp2(t);
        return 0.5 * eval_w_minus_1_log2(w, delta * delta);
    };

    if (objective(0.0) <= -security_bits) return 1.0;

    // W(delta^2) - 1 <= 2^rank * delta^(2d), so this t_lo always satisfies
    // the target; a fixed bracket like [1e-12, 1] would miss solutions for
    // d = 1 at high security levels.
    double lo = -(2.0 * security_bits + static_cast<double>(w.rank())) /
                (2.0 * static_cast<double>(*d));
    double hi = 0.0;

    // Relative 1e-9 in delta corresponds to log2(1 + 1e-9) in t.
    const double t_tol = 1e-9 / M_LN2;
    for (int iter = 0; iter < 200 && hi - lo > t_tol; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (objective(mid) <= -security_bits)
            lo = mid;
        else
            hi = mid;
    }
    return std::exp2(lo);
}

}  // namespace corrbound
