#ifndef CORRBOUND_BIAS_HPP
#define CORRBOUND_BIAS_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "corrbound/errors.hpp"

namespace corrbound {

// Input bias specification for X_i ~ Bern(p_i): delta_i = P{X_i=0} - P{X_i=1}
// = 1 - 2 p_i. Either one magnitude shared by all bits, or one signed value
// per bit.
class BiasModel {
  public:
    static BiasModel uniform(double delta) {
        if (!(delta >= 0.0 && delta <= 1.0))
            throw InvalidParams("uniform bias magnitude must be in [0, 1]");
        BiasModel b;
        b.uniform_ = true;
        b.uniform_delta_ = delta;
        return b;
    }

    static BiasModel per_bit(std::vector<double> deltas) {
        for (double d : deltas)
            if (!(std::fabs(d) <= 1.0)) throw InvalidParams("per-bit bias must be in [-1, 1]");
        BiasModel b;
        b.uniform_ = false;
        b.deltas_ = std::move(deltas);
        return b;
    }

    bool is_uniform() const { return uniform_; }
    double uniform_delta() const { return uniform_delta_; }
    const std::vector<double>& per_bit_deltas() const { return deltas_; }

    // delta_i, for an input of n bits. Throws when a per-bit vector does not
    // match n.
    double delta(std::size_t i, std::size_t n) const {
        if (uniform_) return uniform_delta_;
        if (deltas_.size() != n)
            throw DimensionMismatch("bias vector length " + std::to_string(deltas_.size()) +
                                    " does not match block length " + std::to_string(n));
        return deltas_[i];
    }

    void check_length(std::size_t n) const {
        if (!uniform_ && deltas_.size() != n)
            throw DimensionMismatch("bias vector length " + std::to_string(deltas_.size()) +
                                    " does not match block length " + std::to_string(n));
    }

  private:
    BiasModel() = default;
    bool uniform_ = true;
    double uniform_delta_ = 0.0;
    std::vector<double> deltas_;
};

}  // namespace corrbound

#endif
