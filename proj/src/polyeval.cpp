#include "corrbound/polyeval.hpp"

#include <cmath>
#include <limits>

namespace corrbound {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_grid(const std::vector<double>& values) {
    double prev = -1.0;
    for (double v : values) {
        if (!(v >= 0.0 && v <= 1.0)) throw InvalidParams("grid values must lie in [0, 1]");
        if (!(v > prev)) throw InvalidParams("grid values must be strictly ascending");
        prev = v;
    }
}

// ln W(delta) over all terms, or ln(W(delta) - 1) over the w >= 1 terms.
// Max-shifted log-sum-exp of ln(A_w) + w*ln(delta); the shift keeps every
// exponent <= 0, so nothing can overflow regardless of how large A_w is.
double lse_ln(const std::vector<std::pair<unsigned, double>>& log_counts, double delta,
              bool skip_constant_term) {
    if (delta == 0.0) return skip_constant_term ? kNegInf : 0.0;
    const double ld = std::log(delta);
    double hi = kNegInf;
    for (const auto& [w, ln_a] : log_counts) {
        if (skip_constant_term && w == 0) continue;
        const double t = ln_a + static_cast<double>(w) * ld;
        if (t > hi) hi = t;
    }
    if (hi == kNegInf) return kNegInf;  // no terms at all
    double sum = 0.0;
    for (const auto& [w, ln_a] : log_counts) {
        if (skip_constant_term && w == 0) continue;
        sum += std::exp(ln_a + static_cast<double>(w) * ld - hi);
    }
    return hi + std::log(sum);
}

void require_nonzero_weight(const WeightDistribution& wd) {
    bool any = false;
    for (const auto& [w, ln_a] : wd.log_counts())
        if (w > 0) any = true;
    if (!any) throw EmptyCode("distribution has no nonzero-weight term; W - 1 is identically 0");
}

}  // namespace

DeltaGrid::DeltaGrid(std::vector<double> values) : values_(std::move(values)) {
    check_grid(values_);
}

DeltaGrid DeltaGrid::single(double value) { return DeltaGrid(std::vector<double>{value}); }

DeltaGrid DeltaGrid::linspace(double lo, double hi, std::size_t count) {
    if (count == 0) throw InvalidParams("grid needs at least one point");
    std::vector<double> v;
    v.reserve(count);
    if (count == 1) {
        v.push_back(lo);
    } else {
        for (std::size_t i = 0; i < count; ++i)
            v.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
        v.back() = hi;
    }
    return DeltaGrid(std::move(v));
}

DeltaGrid DeltaGrid::logspace(double lo, double hi, std::size_t count) {
    if (count == 0) throw InvalidParams("grid needs at least one point");
    if (!(lo > 0.0)) throw InvalidParams("log-spaced grid requires lo > 0");
    std::vector<double> v;
    v.reserve(count);
    if (count == 1) {
        v.push_back(lo);
    } else {
        const double llo = std::log(lo), lhi = std::log(hi);
        for (std::size_t i = 0; i < count; ++i)
            v.push_back(std::exp(llo + (lhi - llo) * static_cast<double>(i) /
                                           static_cast<double>(count - 1)));
        v.front() = lo;
        v.back() = hi;
    }
    return DeltaGrid(std::move(v));
}

DeltaGrid DeltaGrid::squared() const {
    std::vector<double> v;
    v.reserve(values_.size());
    for (double d : values_) v.push_back(d * d);
    return DeltaGrid(std::move(v));
}

double eval_w(const WeightDistribution& wd, double delta) {
    if (!(delta >= 0.0 && delta <= 1.0)) throw InvalidParams("delta must lie in [0, 1]");
    return std::exp(lse_ln(wd.log_counts(), delta, false));
}

std::vector<double> eval_w(const WeightDistribution& wd, const DeltaGrid& grid) {
    std::vector<double> out;
    out.reserve(grid.size());
    for (double d : grid.values()) out.push_back(std::exp(lse_ln(wd.log_counts(), d, false)));
    return out;
}

double eval_w_log2(const WeightDistribution& wd, double delta) {
    if (!(delta >= 0.0 && delta <= 1.0)) throw InvalidParams("delta must lie in [0, 1]");
    return lse_ln(wd.log_counts(), delta, false) / M_LN2;
}

std::vector<double> eval_w_log2(const WeightDistribution& wd, const DeltaGrid& grid) {
    std::vector<double> out;
    out.reserve(grid.size());
    for (double d : grid.values()) out.push_back(lse_ln(wd.log_counts(), d, false) / M_LN2);
    return out;
}

double eval_w_minus_1_log2(const WeightDistribution& wd, double delta) {
    if (!(delta >= 0.0 && delta <= 1.0)) throw InvalidParams("delta must lie in [0, 1]");
    require_nonzero_weight(wd);
    return lse_ln(wd.log_counts(), delta, true) / M_LN2;
}

std::vector<double> eval_w_minus_1_log2(const WeightDistribution& wd, const DeltaGrid& grid) {
    require_nonzero_weight(wd);
    std::vector<double> out;
    out.reserve(grid.size());
    for (double d : grid.values()) out.push_back(lse_ln(wd.log_counts(), d, true) / M_LN2);
    return out;
}

PolyEvaluation evaluate(const WeightDistribution& wd, const DeltaGrid& grid) {
    PolyEvaluation ev;
    ev.grid = grid.values();
    ev.w = eval_w(wd, grid);
    ev.w_minus_1_log2 = eval_w_minus_1_log2(wd, grid);
    return ev;
}

}  // namespace corrbound
