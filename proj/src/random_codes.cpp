#include "corrbound/random_codes.hpp"

#include <cmath>
#include <limits>

#include "corrbound/oracle.hpp"
#include "corrbound/util.hpp"

namespace corrbound {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// ln(e^a - 1) without forming e^a.
double ln_expm1(double a) {
    if (a <= 0.0) return kNegInf;  // a == 0 means the difference is exactly 0
    if (a > 0.6931471805599453) return a + std::log1p(-std::exp(-a));
    return std::log(std::expm1(a));
}

// log2((1 + x)^n - 1) for x >= 0.
double log2_pow_minus_1(double x, unsigned n) {
    return ln_expm1(static_cast<double>(n) * std::log1p(x)) / M_LN2;
}

void check_params(const RandomCodeParams& p) {
    if (p.k < 1 || p.k > p.n) throw InvalidParams("random code needs 1 <= k <= n");
    if (!(p.delta >= 0.0 && p.delta <= 1.0)) throw InvalidParams("delta must lie in [0, 1]");
    if (p.samples < 1) throw InvalidParams("samples must be >= 1");
}

void check_mc_scale(const RandomCodeParams& p) {
    if (p.n > kOracleMaxBits || p.k > 20)
        throw InputTooLarge("Monte Carlo enumerates 2^k codewords per draw; need n <= 24, k <= 20");
}

double sample_stddev(const std::vector<double>& values, double mean) {
    if (values.size() < 2) return 0.0;
    KahanSum acc;
    for (double v : values) acc.add((v - mean) * (v - mean));
    return std::sqrt(acc.value() / static_cast<double>(values.size() - 1));
}

}  // namespace

ValueLog2 expected_l2_sq(const RandomCodeParams& p) {
    check_params(p);
    if (p.delta == 0.0) return ValueLog2{0.0, kNegInf};
    return value_from_log2(log2_pow_minus_1(p.delta * p.delta, p.n) -
                           static_cast<double>(p.n));
}

ValueLog2 variance_bound_l2_sq(const RandomCodeParams& p) {
    check_params(p);
    if (p.delta == 0.0) return ValueLog2{0.0, kNegInf};
    const double d4 = p.delta * p.delta * p.delta * p.delta;
    return value_from_log2(log2_pow_minus_1(d4, p.n) - static_cast<double>(p.n + p.k));
}

ChebyshevTail chebyshev_tail(const RandomCodeParams& p, double eps) {
    check_params(p);
    if (!(eps > 0.0)) throw InvalidParams("eps must be > 0");
    const double d2 = p.delta * p.delta;
    const double d4 = d2 * d2;
    ChebyshevTail tail;
    tail.rate_threshold = 1.0 - std::log2((1.0 + d2) * (1.0 + d2) / (1.0 + d4));
    tail.exponential_decay =
        static_cast<double>(p.k) / static_cast<double>(p.n) < tail.rate_threshold;
    if (p.delta == 0.0) {
        tail.probability = 0.0;  // Z is identically 0
        return tail;
    }
    const double log2_ratio = static_cast<double>(p.n) - static_cast<double>(p.k) +
                              log2_pow_minus_1(d4, p.n) - 2.0 * std::log2(eps) -
                              2.0 * log2_pow_minus_1(d2, p.n);
    tail.probability = std::min(1.0, std::exp2(log2_ratio));
    return tail;
}

GeneratorMatrix sample_generator(unsigned n, unsigned k, std::uint64_t seed) {
    if (n == 0 || k == 0) throw InvalidParams("sample_generator needs n >= 1 and k >= 1");
    SplitMix64 rng(seed);
    GeneratorMatrix g(k, n);
    for (unsigned r = 0; r < k; ++r) {
        Word* row = g.row(r);
        for (std::size_t wi = 0; wi < g.words_per_row(); ++wi) row[wi] = rng.next();
        // Mask tail bits beyond column n - 1.
        const unsigned tail = n % kWordBits;
        if (tail != 0) row[g.words_per_row() - 1] &= (Word(1) << tail) - 1;
    }
    return g;
}

MonteCarloResult monte_carlo_l2_sq(const RandomCodeParams& p, unsigned workers) {
    check_params(p);
    check_mc_scale(p);

    std::vector<double> d2_pow(p.n + 1);
    d2_pow[0] = 1.0;
    for (unsigned w = 1; w <= p.n; ++w) d2_pow[w] = d2_pow[w - 1] * (p.delta * p.delta);

    std::vector<double> values(p.samples, 0.0);
    parallel_for(p.samples, workers, [&](std::size_t i) {
        const GeneratorMatrix g = sample_generator(p.n, p.k, derive_seed(p.seed, i));
        std::size_t rank = 0;
        std::vector<Word> basis = row_echelon_basis(g, rank);
        KahanSum sum;  // sum over nonzero codewords of delta^(2w)
        const std::uint64_t total = std::uint64_t(1) << rank;
        std::vector<Word> cur(g.words_per_row(), 0);
        for (std::uint64_t j = 1; j < total; ++j) {
            const unsigned flip = static_cast<unsigned>(std::countr_zero(j));
            const Word* brow = basis.data() + std::size_t(flip) * g.words_per_row();
            for (std::size_t wi = 0; wi < g.words_per_row(); ++wi) cur[wi] ^= brow[wi];
            sum.add(d2_pow[popcount_words(cur.data(), g.words_per_row())]);
        }
        values[i] = std::ldexp(sum.value(), -static_cast<int>(rank));
    });

    KahanSum total;
    for (double v : values) total.add(v);
    MonteCarloResult res;
    res.mean = total.value() / static_cast<double>(p.samples);
    res.stddev = sample_stddev(values, res.mean);
    return res;
}

WeightMeanStats monte_carlo_weight_stats(const RandomCodeParams& p, unsigned workers) {
    check_params(p);
    check_mc_scale(p);

    std::vector<std::vector<double>> per_sample(p.samples);
    parallel_for(p.samples, workers, [&](std::size_t i) {
        const GeneratorMatrix g = sample_generator(p.n, p.k, derive_seed(p.seed, i));
        std::vector<double> tally(p.n + 1, 0.0);
        for_each_codeword(g, [&](const Word*, unsigned w) { tally[w] += 1.0; });
        per_sample[i] = std::move(tally);
    });

    WeightMeanStats stats;
    stats.mean.assign(p.n + 1, 0.0);
    stats.stddev.assign(p.n + 1, 0.0);
    for (unsigned w = 0; w <= p.n; ++w) {
        KahanSum acc;
        for (std::size_t i = 0; i < p.samples; ++i) acc.add(per_sample[i][w]);
        stats.mean[w] = acc.value() / static_cast<double>(p.samples);
    }
    if (p.samples > 1) {
        for (unsigned w = 0; w <= p.n; ++w) {
            KahanSum acc;
            for (std::size_t i = 0; i < p.samples; ++i) {
                const double diff = per_sample[i][w] - stats.mean[w];
                acc.add(diff * diff);
            }
            stats.stddev[w] = std::sqrt(acc.value() / static_cast<double>(p.samples - 1));
        }
    }
    return stats;
}

}  // namespace corrbound
