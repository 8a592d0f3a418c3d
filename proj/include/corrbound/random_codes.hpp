#ifndef CORRBOUND_RANDOM_CODES_HPP
#define CORRBOUND_RANDOM_CODES_HPP

#include <cstdint>
#include <vector>

#include "corrbound/bounds.hpp"
#include "corrbound/gf2.hpp"

namespace corrbound {

// Parameters of the random-code ensemble: G is k x n with i.i.d. uniform
// entries, inputs are i.i.d. coins with bias magnitude delta.
struct RandomCodeParams {
    unsigned n = 0;
    unsigned k = 0;
    double delta = 0.0;
    std::size_t samples = 1;
    std::uint64_t seed = 0;
};

// E[ ||P_Y - U||_2^2 ] = 2^-n * ((1 + delta^2)^n - 1), in log domain.
ValueLog2 expected_l2_sq(const RandomCodeParams& p);

// Var bound 2^-(n+k) * ((1 + delta^4)^n - 1).
ValueLog2 variance_bound_l2_sq(const RandomCodeParams& p);

struct ChebyshevTail {
    double probability = 0.0;     // clamped to [0, 1]
    double rate_threshold = 0.0;  // 1 - log2((1+delta^2)^2 / (1+delta^4))
    bool exponential_decay = false;  // k/n < rate_threshold
};

// Pr(|Z - E| > eps*E) <= 2^(n-k) ((1+d^4)^n - 1) / (eps^2 ((1+d^2)^n - 1)^2)
// for Z the squared l2 distance of a random code.
ChebyshevTail chebyshev_tail(const RandomCodeParams& p, double eps);

// One draw of the ensemble; deterministic in the seed.
GeneratorMatrix sample_generator(unsigned n, unsigned k, std::uint64_t seed);

struct MonteCarloResult {
    double mean = 0.0;
    double stddev = 0.0;  // sample stddev; 0 when samples == 1
};

// Mean/stddev over `samples` draws of the exact per-draw value
// 2^-rank * (W_G(delta^2) - 1). Sample i uses the stream derived from
// (seed, i), so the result is bit-identical for any worker count.
// Guard: n <= 24, k <= 20.
MonteCarloResult monte_carlo_l2_sq(const RandomCodeParams& p, unsigned workers = 1);

struct WeightMeanStats {
    std::vector<double> mean;    // index j in [0, n]; empirical E[A_j]
    std::vector<double> stddev;  // sample stddev of A_j
};

// Per-weight codeword-count statistics over the same sample streams;
// compares against E[A_j] = 2^(k-n) C(n, j).
WeightMeanStats monte_carlo_weight_stats(const RandomCodeParams& p, unsigned workers = 1);

}  // namespace corrbound

#endif
