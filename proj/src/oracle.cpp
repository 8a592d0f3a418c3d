#include "corrbound/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "corrbound/util.hpp"

namespace corrbound {

namespace {

void check_direct_size(const GeneratorMatrix& g) {
    if (g.cols() > kOracleMaxBits)
        throw InputTooLarge("direct oracle enumerates 2^n inputs; n = " +
                            std::to_string(g.cols()) + " exceeds " +
                            std::to_string(kOracleMaxBits));
    if (g.rows() > kOracleMaxBits)
        throw InputTooLarge("output table holds 2^k entries; k = " + std::to_string(g.rows()) +
                            " exceeds " + std::to_string(kOracleMaxBits));
}

// In-place Walsh-Hadamard transform: a[y] <- sum_S a[S] * (-1)^popcount(S&y).
void wht(std::vector<double>& a) {
    const std::size_t n = a.size();
    for (std::size_t len = 1; len < n; len <<= 1) {
        for (std::size_t i = 0; i < n; i += len << 1) {
            for (std::size_t j = i; j < i + len; ++j) {
                const double u = a[j];
                const double v = a[j + len];
                a[j] = u + v;
                a[j + len] = u - v;
            }
        }
    }
}

void validate_distribution(ExactDistribution& d, const char* origin) {
    KahanSum sum;
    for (double& p : d.probs) {
        if (p < 0.0) {
            if (p < -1e-11)
                throw InternalCheckError(std::string(origin) +
                                         " produced a significantly negative probability");
            p = 0.0;  // transform noise on zero-probability outputs
        }
        sum.add(p);
    }
    if (std::fabs(sum.value() - 1.0) > 1e-12)
        throw InternalCheckError(std::string(origin) + " probabilities sum to " +
                                 std::to_string(sum.value()) + ", expected 1");
}

}  // namespace

ExactDistribution exact_distribution_direct(const GeneratorMatrix& g, const BiasModel& bias) {
    check_direct_size(g);
    bias.check_length(g.cols());
    const unsigned n = static_cast<unsigned>(g.cols());
    const unsigned k = static_cast<unsigned>(g.rows());

    // Output word contributed by each input column.
    std::vector<std::uint32_t> col(n, 0);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned r = 0; r < k; ++r)
            if (g.get(r, i)) col[i] |= std::uint32_t(1) << r;

    // Tensor-build probability and output tables for one half of the input
    // bits: entry m covers the assignment with bit pattern m on that half.
    const auto build_half = [&](unsigned start, unsigned count, std::vector<double>& prob,
                                std::vector<std::uint32_t>& yv) {
        prob.assign(std::size_t(1) << count, 0.0);
        yv.assign(std::size_t(1) << count, 0);
        prob[0] = 1.0;
        std::size_t size = 1;
        for (unsigned b = 0; b < count; ++b) {
            const double delta = bias.delta(start + b, n);
            const double p0 = 0.5 * (1.0 + delta);
            const double p1 = 0.5 * (1.0 - delta);
            for (std::size_t m = 0; m < size; ++m) {
                prob[m | size] = prob[m] * p1;
                prob[m] *= p0;
                yv[m | size] = yv[m] ^ col[start + b];
            }
            size <<= 1;
        }
    };

    const unsigned n_lo = n / 2;
    const unsigned n_hi = n - n_lo;
    std::vector<double> prob_lo, prob_hi;
    std::vector<std::uint32_t> y_lo, y_hi;
    build_half(0, n_lo, prob_lo, y_lo);
    build_half(n_lo, n_hi, prob_hi, y_hi);

    ExactDistribution d;
    d.k = k;
    d.probs.assign(std::size_t(1) << k, 0.0);
    std::vector<double> comp(d.probs.size(), 0.0);  // Kahan compensation per bin
    for (std::size_t a = 0; a < prob_lo.size(); ++a) {
        const double pa = prob_lo[a];
        const std::uint32_t ya = y_lo[a];
        for (std::size_t b = 0; b < prob_hi.size(); ++b) {
            const std::size_t idx = ya ^ y_hi[b];
            const double x = pa * prob_hi[b];
            const double y = x - comp[idx];
            const double t = d.probs[idx] + y;
            comp[idx] = (t - d.probs[idx]) - y;
            d.probs[idx] = t;
        }
    }
    validate_distribution(d, "direct oracle");
    return d;
}

ExactDistribution exact_distribution_fourier(const GeneratorMatrix& g, const BiasModel& bias) {
    if (g.rows() > kOracleMaxBits)
        throw InputTooLarge("Fourier oracle sums over 2^k parity sets; k = " +
                            std::to_string(g.rows()) + " exceeds " +
                            std::to_string(kOracleMaxBits));
    bias.check_length(g.cols());
    const unsigned n = static_cast<unsigned>(g.cols());
    const unsigned k = static_cast<unsigned>(g.rows());
    const std::size_t wpr = g.words_per_row();

    std::vector<double> delta_pow;
    if (bias.is_uniform()) {
        delta_pow.resize(n + 1);
        delta_pow[0] = 1.0;
        for (unsigned w = 1; w <= n; ++w) delta_pow[w] = delta_pow[w - 1] * bias.uniform_delta();
    }

    // coeff[S] = prod_{i in supp(c_S)} delta_i, where c_S is the XOR of the
    // rows indexed by S. Subsets run in Gray-code order so each step updates
    // c_S with one row XOR.
    std::vector<double> coeff(std::size_t(1) << k, 0.0);
    std::vector<Word> c(wpr, 0);
    const auto coefficient = [&]() {
        if (bias.is_uniform()) return delta_pow[popcount_words(c.data(), wpr)];
        double prod = 1.0;
        for (std::size_t wi = 0; wi < wpr; ++wi) {
            Word word = c[wi];
            while (word) {
                const unsigned b = static_cast<unsigned>(std::countr_zero(word));
                word &= word - 1;
                prod *= bias.per_bit_deltas()[wi * kWordBits + b];
            }
        }
        return prod;
    };
    coeff[0] = 1.0;
    std::uint64_t gray = 0;
    for (std::uint64_t i = 1; i < (std::uint64_t(1) << k); ++i) {
        const unsigned flip = static_cast<unsigned>(std::countr_zero(i));
        gray ^= std::uint64_t(1) << flip;
        const Word* row = g.row(flip);
        for (std::size_t wi = 0; wi < wpr; ++wi) c[wi] ^= row[wi];
        coeff[gray] = coefficient();
    }

    // P(y) = 2^-k sum_S coeff[S] (-1)^{S.y}: for y = Gx the sign equals
    // (-1)^{c_S.x} because c_S.x = sum_{i in S} (G_i.x) = S.y, and the same
    // expansion is the inverse Fourier transform of P_Y, so outputs without
    // a preimage come out as 0 with no case split.
    wht(coeff);
    const double scale = std::ldexp(1.0, -static_cast<int>(k));
    ExactDistribution d;
    d.k = k;
    d.probs = std::move(coeff);
    for (double& p : d.probs) p *= scale;
    validate_distribution(d, "Fourier oracle");
    return d;
}

ExactNorms exact_norms(const ExactDistribution& d) {
    const double u = std::ldexp(1.0, -static_cast<int>(d.k));
    ExactNorms norms;
    KahanSum l1, l2sq;
    for (double p : d.probs) {
        norms.linf = std::max(norms.linf, p);
        l1.add(std::fabs(p - u));
        l2sq.add((p - u) * (p - u));
    }
    norms.l1 = l1.value();
    norms.tv = 0.5 * norms.l1;

    // Plancherel cross-check: ||P - U||_2^2 = 2^-k * sum_{S != 0} H[S]^2
    // with H the unnormalized Walsh-Hadamard transform of the table.
    std::vector<double> hat = d.probs;
    wht(hat);
    KahanSum pl;
    for (std::size_t s = 1; s < hat.size(); ++s) pl.add(hat[s] * hat[s]);
    const double l2sq_plancherel = pl.value() * u;
    norms.plancherel_gap = std::fabs(l2sq.value() - l2sq_plancherel);
    if (norms.plancherel_gap > 1e-10)
        throw InternalCheckError("Plancherel identity violated: direct l2^2 " +
                                 std::to_string(l2sq.value()) + " vs Fourier-side " +
                                 std::to_string(l2sq_plancherel));
    norms.l2 = std::sqrt(std::max(0.0, l2sq.value()));
    return norms;
}

double linf_closed_form(const GeneratorMatrix& g, const BiasModel& bias, std::size_t limit) {
    bias.check_length(g.cols());
    const unsigned n = static_cast<unsigned>(g.cols());
    std::vector<double> abs_delta(n);
    for (unsigned i = 0; i < n; ++i) abs_delta[i] = std::fabs(bias.delta(i, n));

    KahanSum sum;
    const std::size_t rank = gf2_rank(g);
    for_each_codeword(
        g,
        [&](const Word* bits, unsigned) {
            double prod = 1.0;
            for (std::size_t wi = 0; wi < g.words_per_row(); ++wi) {
                Word word = bits[wi];
                while (word) {
                    const unsigned b = static_cast<unsigned>(std::countr_zero(word));
                    word &= word - 1;
                    prod *= abs_delta[wi * kWordBits + b];
                }
            }
            sum.add(prod);
        },
        limit);
    return std::ldexp(sum.value(), -static_cast<int>(rank));
}

std::uint64_t linf_maximizer_input(const GeneratorMatrix& g, const BiasModel& bias) {
    if (g.cols() > 64) throw InvalidParams("maximizer input supported for n <= 64");
    bias.check_length(g.cols());
    std::uint64_t x = 0;
    for (std::size_t i = 0; i < g.cols(); ++i)
        if (bias.delta(i, g.cols()) < 0.0) x |= std::uint64_t(1) << i;
    return x;
}

RankDeficiencyCheck check_rank_deficiency_claim(const GeneratorMatrix& g, const BiasModel& bias) {
    const std::size_t rank = gf2_rank(g);
    if (rank >= g.rows())
        throw NotRankDeficient("generator is full rank (rank " + std::to_string(rank) +
                               " = k); the claim applies to rank-deficient matrices");
    const ExactDistribution d = exact_distribution_direct(g, bias);
    const ExactNorms norms = exact_norms(d);
    return RankDeficiencyCheck{norms.tv, norms.tv >= 0.5 - 1e-12};
}

}  // namespace corrbound
