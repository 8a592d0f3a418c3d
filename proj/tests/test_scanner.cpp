#include <doctest.h>

#include <cmath>
#include <sstream>

#include "corrbound/scanner.hpp"
#include "corrbound/util.hpp"
#include "test_support.hpp"

using namespace corrbound;

namespace {

void write_corpus(const std::filesystem::path& dir) {
    testsup::write_text(dir / "hamming.wt",
                        serialize_weights(weights_from_matrix(testsup::hamming_7_4())));
    testsup::write_text(dir / "parity10.wt",
                        serialize_weights(weights_from_matrix(testsup::parity(10))));
    testsup::write_text(dir / "rm_1_3.wt",
                        serialize_weights(weights_from_matrix(reed_muller_generator(1, 3))));
}

std::string frontier_csv(const ScanResult& r) {
    std::ostringstream os;
    write_frontier_csv(os, r.points);
    return os.str();
}

}  // namespace

TEST_CASE("scan_corpus over a small corpus") {
    testsup::TempDir tmp("scan");
    write_corpus(tmp.path());
    testsup::write_text(tmp.path() / "broken.wt", "n=7 k=4\n0 2\n");  // bad A_0

    ScanResult r = scan_corpus(tmp.path(), 0.1, 80.0);
    REQUIRE(r.points.size() == 3);
    REQUIRE(r.skips.size() == 1);
    CHECK(r.skips[0].path.find("broken.wt") != std::string::npos);

    // Sorted by rate descending: hamming 4/7 > rm_1_3 4/8 > parity10 1/10.
    CHECK(r.points[0].id == "hamming");
    CHECK(r.points[1].id == "rm_1_3");
    CHECK(r.points[2].id == "parity10");
    CHECK(testsup::close_rel(r.points[0].rate, 4.0 / 7.0, 1e-15));

    // parity10 at delta_ref = 0.1: security = -0.5 log2(0.01^10) = 33.2193.
    CHECK(testsup::close_rel(r.points[2].security_bits, -0.5 * std::log2(1e-20), 1e-10));
    CHECK(r.points[2].n == 10);
    CHECK(r.points[2].k == 1);
    CHECK(r.points[2].d == 10);

    // Round trip: max_delta reproduces the reference security.
    for (const auto& pt : r.points) {
        WeightDistribution w =
            parse_weights(testsup::read_text(tmp.path() / (pt.id + ".wt")));
        const double achieved =
            -0.5 * eval_w_minus_1_log2(w, pt.max_delta * pt.max_delta);
        CHECK(std::fabs(achieved - 80.0) <= 1e-6);
    }
}

TEST_CASE("scan_corpus error handling") {
    testsup::TempDir tmp("scan_err");
    CHECK_THROWS_AS(scan_corpus(tmp.path(), 0.1, 80.0), EmptyCorpus);
    CHECK_THROWS_AS(scan_corpus(tmp.path() / "missing", 0.1, 80.0), EmptyCorpus);

    // Zero code and partial files are skipped, not fatal.
    testsup::write_text(tmp.path() / "zero.wt", "n=4 k=0\n0 1\n");
    testsup::write_text(tmp.path() / "partial.wt", "n=7 k=4\n0 1\n3 7\n");
    write_corpus(tmp.path());
    ScanResult r = scan_corpus(tmp.path(), 0.1, 80.0);
    CHECK(r.points.size() == 3);
    CHECK(r.skips.size() == 2);
}

TEST_CASE("scan results are independent of worker count") {
    testsup::TempDir tmp("scan_par");
    write_corpus(tmp.path());
    SplitMix64 rng(5);
    for (int i = 0; i < 20; ++i) {
        WeightDistribution w = weights_from_matrix(
            testsup::random_full_rank(6 + i % 8, 2 + i % 4, rng.next()));
        testsup::write_text(tmp.path() / ("r" + std::to_string(i) + ".wt"),
                            serialize_weights(w));
    }
    ScanResult serial = scan_corpus(tmp.path(), 0.1, 80.0, 1);
    ScanResult parallel = scan_corpus(tmp.path(), 0.1, 80.0, 4);
    CHECK(frontier_csv(serial) == frontier_csv(parallel));
    CHECK(serial.points.size() == 23);
}

TEST_CASE("index.csv overrides identifiers") {
    testsup::TempDir tmp("scan_idx");
    write_corpus(tmp.path());
    testsup::write_text(tmp.path() / "index.csv",
                        "id,path,name\nH74,hamming.wt,Hamming [7 4 3]\n");
    ScanResult r = scan_corpus(tmp.path(), 0.1, 80.0);
    CHECK(r.points[0].id == "H74");
    CHECK(r.points[1].id == "rm_1_3");
}

TEST_CASE("pareto_frontier dominance rules") {
    const auto mk = [](const char* id, double rate, double sec) {
        FrontierPoint p;
        p.id = id;
        p.rate = rate;
        p.security_bits = sec;
        p.max_delta = sec / 100.0;
        return p;
    };
    SUBCASE("single point survives") {
        auto kept = pareto_frontier({mk("a", 0.5, 80)}, FrontierObjective::security_bits);
        REQUIRE(kept.size() == 1);
        CHECK(kept[0].id == "a");
    }
    SUBCASE("dominated point dropped") {
        auto kept = pareto_frontier({mk("a", 0.5, 80), mk("b", 0.4, 60)},
                                    FrontierObjective::security_bits);
        REQUIRE(kept.size() == 1);
        CHECK(kept[0].id == "a");
    }
    SUBCASE("equal rate keeps only the best objective") {
        auto kept = pareto_frontier({mk("a", 0.5, 60), mk("b", 0.5, 80)},
                                    FrontierObjective::security_bits);
        REQUIRE(kept.size() == 1);
        CHECK(kept[0].id == "b");
    }
    SUBCASE("exact ties are all kept") {
        auto kept = pareto_frontier({mk("a", 0.5, 80), mk("b", 0.5, 80)},
                                    FrontierObjective::security_bits);
        CHECK(kept.size() == 2);
    }
    SUBCASE("incomparable points all survive") {
        auto kept = pareto_frontier({mk("a", 0.6, 40), mk("b", 0.4, 70), mk("c", 0.2, 90)},
                                    FrontierObjective::security_bits);
        CHECK(kept.size() == 3);
        CHECK(kept[0].rate == 0.6);  // rate-descending order
    }
    SUBCASE("kept set is mutually non-dominated and covers dropped points") {
        SplitMix64 rng(13);
        std::vector<FrontierPoint> pts;
        for (int i = 0; i < 60; ++i)
            pts.push_back(mk(("p" + std::to_string(i)).c_str(),
                             0.1 + 0.8 * rng.next_double(),
                             10.0 + 90.0 * rng.next_double()));
        auto kept = pareto_frontier(pts, FrontierObjective::max_delta);
        const auto dominates = [](const FrontierPoint& a, const FrontierPoint& b) {
            return a.rate >= b.rate && a.max_delta >= b.max_delta &&
                   (a.rate > b.rate || a.max_delta > b.max_delta);
        };
        for (const auto& a : kept)
            for (const auto& b : kept) CHECK_FALSE(dominates(a, b));
        for (const auto& p : pts) {
            bool in_kept = false, covered = false;
            for (const auto& q : kept) {
                if (q.id == p.id) in_kept = true;
                if (dominates(q, p)) covered = true;
            }
            CHECK((in_kept || covered));
        }
    }
}

TEST_CASE("csv emission") {
    SUBCASE("empty lists give header-only files") {
        std::ostringstream f, s;
        write_frontier_csv(f, {});
        write_skips_csv(s, {});
        CHECK(f.str() == "id,n,k,d,rate,security_bits,max_delta\n");
        CHECK(s.str() == "path,error\n");
    }
    SUBCASE("report rows") {
        WeightDistribution h = weights_from_matrix(testsup::hamming_7_4());
        std::ostringstream os;
        write_report_csv(os, report(h, DeltaGrid::single(0.5)));
        std::istringstream is(os.str());
        std::string header, row, extra;
        REQUIRE(std::getline(is, header));
        REQUIRE(std::getline(is, row));
        CHECK_FALSE(std::getline(is, extra));
        CHECK(header.rfind("delta,linf", 0) == 0);
        CHECK(row.rfind("0.5,", 0) == 0);
        const double linf = std::stod(row.substr(4));
        CHECK(testsup::close_rel(linf, 0.14501953125, 1e-12));
    }
    SUBCASE("fields with commas are quoted") {
        CHECK(csv_escape("a,b") == "\"a,b\"");
        CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
        CHECK(csv_escape("plain") == "plain");
    }
    SUBCASE("floats carry 17 significant digits") {
        CHECK(format_double(0.1) == "0.10000000000000001");
        CHECK(format_double(1.0) == "1");
    }
}
