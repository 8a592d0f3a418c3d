#include <doctest.h>

#include <cmath>

#include "corrbound/random_codes.hpp"
#include "corrbound/util.hpp"
#include "test_support.hpp"

using namespace corrbound;

namespace {

long double binom(unsigned n, unsigned j) {
    long double c = 1.0L;
    for (unsigned i = 0; i < j; ++i) c = c * (n - i) / (i + 1);
    return c;
}

}  // namespace

TEST_CASE("expected_l2_sq closed form") {
    CHECK(expected_l2_sq({16, 8, 0.0, 1, 0}).linear == 0.0);

    const RandomCodeParams p{16, 8, 0.5, 1, 0};
    const double expect =
        static_cast<double>(expm1l(16.0L * log1pl(0.25L)) / 65536.0L);
    CHECK(testsup::close_rel(expected_l2_sq(p).linear, expect, 1e-13));

    // delta = 1 degenerates to 1 - 2^-n.
    const RandomCodeParams p1{10, 4, 1.0, 1, 0};
    CHECK(testsup::close_rel(expected_l2_sq(p1).linear, 1.0 - std::exp2(-10.0), 1e-13));
}

TEST_CASE("expected_l2_sq equals the binomial expectation sum") {
    for (unsigned n : {8u, 12u, 16u}) {
        for (unsigned k : {1u, 4u, 8u}) {
            for (double delta : {0.1, 0.5, 0.9}) {
                long double sum = 0.0L;
                for (unsigned j = 1; j <= n; ++j)
                    sum += powl(2.0L, static_cast<long double>(k) - n) * binom(n, j) *
                           powl(static_cast<long double>(delta), 2.0L * j);
                const double expect = static_cast<double>(sum * powl(2.0L, -(long double)k));
                CHECK(testsup::close_rel(expected_l2_sq({n, k, delta, 1, 0}).linear, expect,
                                         1e-12));
            }
        }
    }
}

TEST_CASE("variance_bound_l2_sq closed form") {
    CHECK(variance_bound_l2_sq({16, 8, 0.0, 1, 0}).linear == 0.0);

    const double expect =
        static_cast<double>(expm1l(16.0L * log1pl(0.0625L)) / powl(2.0L, 24.0L));
    CHECK(testsup::close_rel(variance_bound_l2_sq({16, 8, 0.5, 1, 0}).linear, expect, 1e-13));

    // k = n, delta = 1: 2^-2n (2^n - 1).
    CHECK(testsup::close_rel(variance_bound_l2_sq({8, 8, 1.0, 1, 0}).linear,
                             std::exp2(-16.0) * 255.0, 1e-13));
}

TEST_CASE("chebyshev_tail") {
    const RandomCodeParams p{16, 8, 0.5, 1, 0};

    SUBCASE("huge eps drives the bound to zero") {
        CHECK(chebyshev_tail(p, 1e12).probability <= 1e-15);
    }
    SUBCASE("reference point clamps to 1") {
        ChebyshevTail t = chebyshev_tail(p, 0.5);
        CHECK(t.probability == 1.0);
        CHECK(testsup::close_rel(t.rate_threshold,
                                 1.0 - std::log2(1.25 * 1.25 / 1.0625), 1e-12));
        CHECK(testsup::close_rel(t.rate_threshold, 0.4436, 1e-3));
        CHECK_FALSE(t.exponential_decay);  // k/n = 0.5 > threshold
    }
    SUBCASE("unclamped value matches long-double arithmetic") {
        const long double num = powl(2.0L, 8.0L) * expm1l(16.0L * log1pl(0.0625L));
        const long double den = 4.0L * powl(expm1l(16.0L * log1pl(0.25L)), 2.0L);
        ChebyshevTail t = chebyshev_tail(p, 2.0);
        CHECK(testsup::close_rel(t.probability, static_cast<double>(num / den), 1e-12));
    }
    SUBCASE("low-rate codes fall below the decay threshold") {
        ChebyshevTail t = chebyshev_tail({16, 4, 0.5, 1, 0}, 0.5);
        CHECK(t.exponential_decay);  // 0.25 < 0.4436
    }
    SUBCASE("eps must be positive") {
        CHECK_THROWS_AS(chebyshev_tail(p, 0.0), InvalidParams);
    }
    SUBCASE("delta zero has no mass to deviate") {
        CHECK(chebyshev_tail({16, 8, 0.0, 1, 0}, 0.5).probability == 0.0);
    }
}

TEST_CASE("sample_generator is deterministic and well-formed") {
    GeneratorMatrix a = sample_generator(13, 5, 99);
    GeneratorMatrix b = sample_generator(13, 5, 99);
    CHECK(a == b);
    CHECK_FALSE(a == sample_generator(13, 5, 100));
    // Tail bits beyond column n-1 must be clear.
    for (unsigned r = 0; r < 5; ++r) CHECK((a.row(r)[0] >> 13) == 0);
}

TEST_CASE("monte_carlo_l2_sq") {
    SUBCASE("delta zero") {
        MonteCarloResult r = monte_carlo_l2_sq({16, 8, 0.0, 50, 7});
        CHECK(r.mean == 0.0);
        CHECK(r.stddev == 0.0);
    }
    SUBCASE("bit-for-bit reproducible, independent of workers") {
        const RandomCodeParams p{14, 7, 0.4, 200, 12345};
        MonteCarloResult a = monte_carlo_l2_sq(p, 1);
        MonteCarloResult b = monte_carlo_l2_sq(p, 1);
        MonteCarloResult c = monte_carlo_l2_sq(p, 3);
        CHECK(a.mean == b.mean);
        CHECK(a.stddev == b.stddev);
        CHECK(a.mean == c.mean);
        CHECK(a.stddev == c.stddev);
    }
    SUBCASE("single sample has zero stddev") {
        MonteCarloResult r = monte_carlo_l2_sq({12, 6, 0.3, 1, 5});
        CHECK(r.stddev == 0.0);
        CHECK(r.mean > 0.0);
    }
    SUBCASE("degenerate delta = 1 square case") {
        // Every draw yields 1 - 2^-rank <= 1 - 2^-8.
        MonteCarloResult r = monte_carlo_l2_sq({8, 8, 1.0, 100, 3});
        CHECK(r.mean <= 1.0 - std::exp2(-8.0) + 1e-15);
        CHECK(r.mean > 0.9);  // almost all draws are (near) full rank
    }
    SUBCASE("mean approaches the ensemble closed form") {
        const RandomCodeParams p{16, 8, 0.5, 2000, 7};
        MonteCarloResult r = monte_carlo_l2_sq(p, 2);
        const double expect = expected_l2_sq(p).linear;
        const double stderr_mean = r.stddev / std::sqrt(2000.0);
        CHECK(std::fabs(r.mean - expect) <= 4.0 * stderr_mean);
    }
    SUBCASE("scale guard") {
        CHECK_THROWS_AS(monte_carlo_l2_sq({25, 10, 0.5, 1, 0}), InputTooLarge);
        CHECK_THROWS_AS(monte_carlo_l2_sq({24, 21, 0.5, 1, 0}), InputTooLarge);
    }
}

TEST_CASE("per-weight empirical means match 2^(k-n) C(n,j)") {
    const RandomCodeParams p{12, 6, 0.5, 600, 11};
    WeightMeanStats stats = monte_carlo_weight_stats(p, 2);
    REQUIRE(stats.mean.size() == 13);
    CHECK(stats.mean[0] == 1.0);  // zero codeword in every draw
    const double sqrt_s = std::sqrt(600.0);
    for (unsigned j = 1; j <= 12; ++j) {
        const double expect = static_cast<double>(powl(2.0L, -6.0L) * binom(12, j));
        const double stderr_j = stats.stddev[j] / sqrt_s;
        CHECK(std::fabs(stats.mean[j] - expect) <= 4.0 * stderr_j + 1e-12);
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(expected_l2_sq({8, 0, 0.5, 1, 0}), InvalidParams);
    CHECK_THROWS_AS(expected_l2_sq({8, 9, 0.5, 1, 0}), InvalidParams);
    CHECK_THROWS_AS(expected_l2_sq({8, 4, 1.5, 1, 0}), InvalidParams);
    CHECK_THROWS_AS(monte_carlo_l2_sq({8, 4, 0.5, 0, 0}), InvalidParams);
}
