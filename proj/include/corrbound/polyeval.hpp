#ifndef CORRBOUND_POLYEVAL_HPP
#define CORRBOUND_POLYEVAL_HPP

#include <cstddef>
#include <vector>

#include "corrbound/weights.hpp"

namespace corrbound {

// Ascending bias magnitudes in [0, 1].
class DeltaGrid {
  public:
    explicit DeltaGrid(std::vector<double> values);

    static DeltaGrid single(double value);
    // count >= 1; count == 1 yields {lo}. Endpoints inclusive.
    static DeltaGrid linspace(double lo, double hi, std::size_t count);
    // Geometric spacing; requires lo > 0.
    static DeltaGrid logspace(double lo, double hi, std::size_t count);

    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

    // Element-wise squares; used for the W(delta^2) arguments.
    DeltaGrid squared() const;

  private:
    std::vector<double> values_;
};

struct PolyEvaluation {
    std::vector<double> grid;             // the evaluated deltas
    std::vector<double> w;                // W_G(delta), linear
    std::vector<double> w_minus_1_log2;   // log2(W_G(delta) - 1); -inf at delta = 0
};

// W_G(delta) = sum_w A_w delta^w evaluated per grid point via max-shifted
// log-sum-exp over the log-terms ln(A_w) + w ln(delta). Exact 1 at delta=0.
std::vector<double> eval_w(const WeightDistribution& wd, const DeltaGrid& grid);
double eval_w(const WeightDistribution& wd, double delta);

// log2 W_G(delta); stays finite even when the linear value would overflow.
std::vector<double> eval_w_log2(const WeightDistribution& wd, const DeltaGrid& grid);
double eval_w_log2(const WeightDistribution& wd, double delta);

// log2(W_G(delta) - 1) summed over the w >= 1 terms only, so no cancellation
// for small delta. Returns -infinity at delta = 0. Throws EmptyCode when the
// distribution has no w > 0 entry.
std::vector<double> eval_w_minus_1_log2(const WeightDistribution& wd, const DeltaGrid& grid);
double eval_w_minus_1_log2(const WeightDistribution& wd, double delta);

PolyEvaluation evaluate(const WeightDistribution& wd, const DeltaGrid& grid);

// s = -b for a bound value given as log2; "security bits".
inline double security_bits_from_log2(double log2_bound) { return -log2_bound; }

}  // namespace corrbound

#endif
