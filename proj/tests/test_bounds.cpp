#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "corrbound/bounds.hpp"
#include "corrbound/util.hpp"
#include "test_support.hpp"

using namespace corrbound;

namespace {

WeightDistribution hamming_weights() {
    return weights_from_matrix(testsup::hamming_7_4());
}

// Long-double bisection solving 0.5*log2(W(x^2)-1) = -s; test-side oracle
// for the production solver.
long double solve_reference(const WeightDistribution& w, long double s) {
    long double lo = 0.0L, hi = 1.0L;
    for (int i = 0; i < 200; ++i) {
        const long double mid = 0.5L * (lo + hi);
        const long double val = testsup::naive_w_minus_1(w, mid * mid);
        if (0.5L * log2l(val) <= -s)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

}  // namespace

TEST_CASE("linf_norm") {
    WeightDistribution h = hamming_weights();
    CHECK(testsup::close_rel(linf_norm(h, 0.5).linear, 0.14501953125, 1e-12));
    CHECK(testsup::close_rel(linf_norm(h, 0.0).linear, 1.0 / 16.0, 1e-15));
    WeightDistribution p3 = weights_from_matrix(testsup::parity(3));
    CHECK(testsup::close_rel(linf_norm(p3, 0.5).linear, 0.5625, 1e-12));
    // log2 and linear forms agree.
    CHECK(testsup::close_rel(std::exp2(linf_norm(h, 0.3).log2), linf_norm(h, 0.3).linear, 1e-15));
}

TEST_CASE("l2_distance") {
    WeightDistribution h = hamming_weights();
    const double expect_h = std::sqrt(0.13677978515625 / 16.0);  // W(0.25) - 1 = 0.13677978515625
    CHECK(testsup::close_rel(l2_distance(h, 0.5).linear, expect_h, 1e-12));
    CHECK(l2_distance(h, 0.0).linear == 0.0);
    WeightDistribution p3 = weights_from_matrix(testsup::parity(3));
    CHECK(testsup::close_rel(l2_distance(p3, 0.5).linear, 0.08838834764831845, 1e-12));
}

TEST_CASE("l1_bounds on reference codes") {
    WeightDistribution h = hamming_weights();
    L1Bounds b = l1_bounds(h, 0.5);
    CHECK(testsup::close_rel(b.lower.linear, 0.13677978515625 / 2.3203125, 1e-12));
    CHECK(testsup::close_rel(b.upper.linear, std::sqrt(0.13677978515625), 1e-12));
    CHECK(testsup::close_rel(b.lower.linear, 0.058949, 1e-4));
    CHECK(testsup::close_rel(b.upper.linear, 0.369837, 1e-5));
    CHECK(b.lower.linear <= b.upper.linear);

    // Tight case: single-parity code, upper bound equals the exact l1.
    WeightDistribution p3 = weights_from_matrix(testsup::parity(3));
    CHECK(testsup::close_rel(l1_bounds(p3, 0.5).upper.linear, 0.125, 1e-15));

    L1Bounds at_zero = l1_bounds(h, 0.0);
    CHECK(at_zero.lower.linear == 0.0);
    CHECK(at_zero.upper.linear == 0.0);

    // Sharper denominator variant stays inside [conservative, upper].
    L1Bounds sharp = l1_bounds(h, 0.5, L1LowerDenominator::minus_one);
    CHECK(sharp.lower.linear >= b.lower.linear);
    CHECK(sharp.lower.linear <= b.upper.linear);
}

TEST_CASE("l1 ops reject rank deficiency, other bounds do not") {
    WeightDistribution dup = weights_from_matrix(parse_generator("110\n110\n"));
    CHECK(dup.rank() == 1);
    REQUIRE(dup.corrector_rows());
    CHECK(*dup.corrector_rows() == 2);
    CHECK_THROWS_AS(l1_bounds(dup, 0.5), RankDeficient);
    CHECK_THROWS_AS(max_bias_for_security(dup, 10.0), RankDeficient);
    CHECK_NOTHROW(linf_norm(dup, 0.5));
    CHECK_NOTHROW(l2_distance(dup, 0.5));
    // report fills everything except the l1 fields.
    auto rows = report(dup, DeltaGrid::single(0.5));
    REQUIRE(rows.size() == 1);
    CHECK_FALSE(rows[0].l1_lower.has_value());
    CHECK_FALSE(rows[0].l1_upper.has_value());
}

TEST_CASE("partial distributions are rejected by security bounds") {
    WeightDistribution partial = parse_weights("n=7 k=4\n0 1\n3 7\n", true);
    CHECK_THROWS_AS(linf_norm(partial, 0.5), ValidationError);
    CHECK_THROWS_AS(l1_bounds(partial, 0.5), ValidationError);
    CHECK_THROWS_AS(max_bias_for_security(partial, 10.0), ValidationError);
    // The raw polynomial evaluators still work (lower bounds on W).
    CHECK(eval_w(partial, 0.5) > 1.0);
}

TEST_CASE("prior_bounds") {
    WeightDistribution h = hamming_weights();
    PriorBounds p = prior_bounds(h, 0.5);
    CHECK(testsup::close_rel(p.l1.linear, 1.3203125, 1e-12));
    CHECK(testsup::close_rel(p.linf_bias.linear, 0.125, 1e-12));

    WeightDistribution p3 = weights_from_matrix(testsup::parity(3));
    PriorBounds pp = prior_bounds(p3, 0.5);
    CHECK(testsup::close_rel(pp.l1.linear, 0.125, 1e-12));

    PriorBounds at_zero = prior_bounds(h, 0.0);
    CHECK(at_zero.l1.linear == 0.0);
    CHECK(at_zero.linf_bias.linear == 0.0);

    WeightDistribution zero = parse_weights("n=4 k=0\n0 1\n");
    CHECK_THROWS_AS(prior_bounds(zero, 0.5), EmptyCode);
}

TEST_CASE("report composes the constituent operations") {
    WeightDistribution h = hamming_weights();
    DeltaGrid grid({0.1, 0.3, 0.5});
    auto rows = report(h, grid);
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        const double d = grid[i];
        CHECK(rows[i].delta == d);
        CHECK(testsup::close_rel(rows[i].linf_norm.linear, linf_norm(h, d).linear, 1e-14));
        CHECK(testsup::close_rel(rows[i].l2_dist.linear, l2_distance(h, d).linear, 1e-14));
        const L1Bounds b = l1_bounds(h, d);
        CHECK(testsup::close_rel(rows[i].l1_lower->linear, b.lower.linear, 1e-14));
        CHECK(testsup::close_rel(rows[i].l1_upper->linear, b.upper.linear, 1e-14));
        const PriorBounds p = prior_bounds(h, d);
        CHECK(testsup::close_rel(rows[i].prior_l1.linear, p.l1.linear, 1e-14));
        CHECK(rows[i].l1_lower->linear <= rows[i].l1_upper->linear);
    }

    CHECK(report(h, DeltaGrid(std::vector<double>{})).empty());

    // Long log grid: l1_upper monotone nondecreasing.
    WeightDistribution rm17 = weights_from_matrix(reed_muller_generator(1, 7));
    auto long_rows = report(rm17, DeltaGrid::logspace(1e-6, 1.0, 512));
    REQUIRE(long_rows.size() == 512);
    for (std::size_t i = 1; i < long_rows.size(); ++i)
        CHECK(long_rows[i].l1_upper->log2 >= long_rows[i - 1].l1_upper->log2);
}

TEST_CASE("improvement over the prior l1 estimate") {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 15; ++trial) {
        const unsigned n = 4 + static_cast<unsigned>(rng.next() % 10);
        const unsigned k = 2 + static_cast<unsigned>(rng.next() % std::min(n - 1, 5u));
        WeightDistribution w =
            weights_from_matrix(testsup::random_full_rank(n, k, rng.next()));
        std::size_t nonzero_weights = w.counts().size() - 1;
        for (double delta : {0.02, 0.05, 0.1, 0.2}) {
            PriorBounds prior = prior_bounds(w, delta);
            if (prior.l1.linear > 1.0) continue;
            L1Bounds ours = l1_bounds(w, delta);
            CHECK(ours.upper.linear <= prior.l1.linear + 1e-15);
            if (nonzero_weights >= 2) CHECK(ours.upper.linear < prior.l1.linear);
        }
    }
}

TEST_CASE("small-delta asymptotics: upper bound ~ sqrt(A_d) delta^d") {
    SplitMix64 rng(37);
    for (int trial = 0; trial < 10; ++trial) {
        const unsigned n = 4 + static_cast<unsigned>(rng.next() % 10);
        const unsigned k = 2 + static_cast<unsigned>(rng.next() % std::min(n - 1, 5u));
        WeightDistribution w =
            weights_from_matrix(testsup::random_full_rank(n, k, rng.next()));
        const unsigned d = *w.min_distance();
        const double a_d = w.counts().at(d).convert_to<double>();
        const double delta = 0.01 * std::pow(1.0 / a_d, 1.0 / d);
        const double upper = l1_bounds(w, delta).upper.linear;
        const double leading = std::sqrt(a_d) * std::pow(delta, d);
        CHECK(upper / leading >= 0.99);
        CHECK(upper / leading <= 1.01);
    }
}

TEST_CASE("max_bias_for_security closed-form cases") {
    WeightDistribution p3 = weights_from_matrix(testsup::parity(3));
    const double d3 = max_bias_for_security(p3, 10.0);
    CHECK(testsup::close_rel(d3, std::exp2(-10.0 / 3.0), 3e-9));
    CHECK(testsup::close_rel(d3, 0.09921, 1e-4));

    WeightDistribution id1 = weights_from_matrix(testsup::identity(1));
    CHECK(testsup::close_rel(max_bias_for_security(id1, 10.0), std::exp2(-10.0), 3e-9));

    // Hamming at s=20 solves 7 d^6 + 7 d^8 + d^14 = 2^-40; the dominant-term
    // estimate is (2^-40 / 7)^(1/6).
    WeightDistribution h = hamming_weights();
    const double star = max_bias_for_security(h, 20.0);
    CHECK(testsup::close_rel(star, static_cast<double>(solve_reference(h, 20.0L)), 1e-8));
    CHECK(testsup::close_rel(star, std::pow(std::exp2(-40.0) / 7.0, 1.0 / 6.0), 1e-3));
}

TEST_CASE("max_bias_for_security round trip") {
    SplitMix64 rng(41);
    for (int trial = 0; trial < 12; ++trial) {
        const unsigned n = 3 + static_cast<unsigned>(rng.next() % 12);
        const unsigned k = 1 + static_cast<unsigned>(rng.next() % std::min(n, 8u));
        WeightDistribution w =
            weights_from_matrix(testsup::random_full_rank(n, k, rng.next()));
        for (double s : {20.0, 40.0, 80.0}) {
            const double star = max_bias_for_security(w, s);
            const double achieved = -0.5 * eval_w_minus_1_log2(w, star * star);
            CHECK(achieved >= s - 1e-6);
            CHECK(achieved <= s + 1e-6);
        }
    }
    // Deep targets drive delta* well below 1e-12 when d = 1.
    WeightDistribution id1 = weights_from_matrix(testsup::identity(1));
    CHECK(testsup::close_rel(max_bias_for_security(id1, 80.0), std::exp2(-80.0), 3e-9));
}

TEST_CASE("max_bias_for_security rejects bad inputs") {
    WeightDistribution h = hamming_weights();
    CHECK_THROWS_AS(max_bias_for_security(h, 0.0), InvalidParams);
    CHECK_THROWS_AS(max_bias_for_security(h, -1.0), InvalidParams);
    WeightDistribution zero = parse_weights("n=4 k=0\n0 1\n");
    CHECK_THROWS_AS(max_bias_for_security(zero, 10.0), TargetUnreachable);
}
