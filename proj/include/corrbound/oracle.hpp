#ifndef CORRBOUND_ORACLE_HPP
#define CORRBOUND_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "corrbound/bias.hpp"
#include "corrbound/gf2.hpp"

namespace corrbound {

// Enumeration guard for the exhaustive oracles.
inline constexpr std::size_t kOracleMaxBits = 24;

// Full output probability table of Y = G*X over 2^k outcomes. Index y has
// bit r equal to output bit y_r.
struct ExactDistribution {
    unsigned k = 0;
    std::vector<double> probs;
};

// Ground truth by enumerating all 2^n inputs and accumulating (with
// compensated summation) the product probability onto y = Gx.
// Guard: n <= 24 and k <= 24.
ExactDistribution exact_distribution_direct(const GeneratorMatrix& g, const BiasModel& bias);

// Same distribution through the Fourier route: the coefficient of parity set
// S is 2^-k * prod_{i in supp(c_S)} delta_i with c_S the XOR of the rows in
// S, and the table is the Walsh-Hadamard transform of those coefficients.
// c_S is maintained incrementally along a Gray code over subsets.
// Guard: k <= 24.
ExactDistribution exact_distribution_fourier(const GeneratorMatrix& g, const BiasModel& bias);

struct ExactNorms {
    double linf = 0.0;       // max_y P(y)
    double l2 = 0.0;         // ||P - U||_2
    double l1 = 0.0;         // ||P - U||_1
    double tv = 0.0;         // l1 / 2
    double plancherel_gap = 0.0;  // |direct l2^2 - Fourier-side l2^2|
};

// All four norms; recomputes l2^2 from Walsh-Hadamard coefficients and
// throws InternalCheckError if the two routes disagree beyond 1e-10.
ExactNorms exact_norms(const ExactDistribution& d);

// Closed-form max output probability 2^-rank * sum_c prod_i |delta_i|^{c_i}
// summed over rowspan(G); per-bit biases allowed.
double linf_closed_form(const GeneratorMatrix& g, const BiasModel& bias,
                        std::size_t limit = kDefaultEnumerationLimit);

// The input that attains the max probability: x_i = (1 - sign(delta_i)) / 2,
// arbitrary (0 here) where delta_i = 0. n <= 64 only.
std::uint64_t linf_maximizer_input(const GeneratorMatrix& g, const BiasModel& bias);

struct RankDeficiencyCheck {
    double tv = 0.0;
    bool pass = false;  // tv >= 0.5 - 1e-12
};

// For rank-deficient G, verifies that the exact total variation distance to
// uniform is at least 1/2. Throws NotRankDeficient for full-rank input.
RankDeficiencyCheck check_rank_deficiency_claim(const GeneratorMatrix& g, const BiasModel& bias);

}  // namespace corrbound

#endif
