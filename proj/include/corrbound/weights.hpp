#ifndef CORRBOUND_WEIGHTS_HPP
#define CORRBOUND_WEIGHTS_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "corrbound/errors.hpp"
#include "corrbound/gf2.hpp"

namespace corrbound {

using BigInt = boost::multiprecision::cpp_int;

// ln(a) for a positive arbitrary-precision integer, accurate to ~1 ulp.
double ln_bigint(const BigInt& a);

// Weight distribution of a binary code: sparse counts A_w of codewords per
// Hamming weight w, with 0 <= w <= n and sum_w A_w = 2^rank. Counts are kept
// exact; ln(A_w) is cached for the log-domain evaluators. A distribution may
// be flagged `partial` (truncated published table, sum < 2^rank); partial
// data yields lower bounds on W only and is rejected by the security bounds.
class WeightDistribution {
  public:
    WeightDistribution(unsigned n, unsigned rank, std::map<unsigned, BigInt> counts,
                       bool partial = false);

    unsigned n() const { return n_; }
    unsigned rank() const { return rank_; }
    bool partial() const { return partial_; }

    const std::map<unsigned, BigInt>& counts() const { return counts_; }
    // (w, ln A_w) pairs in ascending w.
    const std::vector<std::pair<unsigned, double>>& log_counts() const { return log_counts_; }

    // Smallest w > 0 with A_w > 0; nullopt for the zero code {0:1}.
    std::optional<unsigned> min_distance() const;

    // Set when the distribution came from a generator with a known number of
    // rows; lets the l1 bounds detect rank-deficient correctors.
    std::optional<std::size_t> corrector_rows() const { return corrector_rows_; }
    void set_corrector_rows(std::size_t k) { corrector_rows_ = k; }

    bool operator==(const WeightDistribution& other) const {
        return n_ == other.n_ && rank_ == other.rank_ && counts_ == other.counts_ &&
               partial_ == other.partial_;
    }

  private:
    unsigned n_, rank_;
    bool partial_;
    std::map<unsigned, BigInt> counts_;
    std::vector<std::pair<unsigned, double>> log_counts_;
    std::optional<std::size_t> corrector_rows_;
};

// Exhaustive tally over rowspan(G). Throws RankTooLarge past the limit.
WeightDistribution weights_from_matrix(const GeneratorMatrix& g,
                                       std::size_t limit = kDefaultEnumerationLimit);

// Text format: header line `n=<int> k=<int>`, then one `w count` pair per
// line (count in decimal, arbitrary precision), '#' comments allowed.
// Validates A_0 = 1, w <= n and the exact sum unless allow_partial is set.
WeightDistribution parse_weights(std::string_view text, bool allow_partial = false);

// Emits the header plus ascending `w count` pairs, no comments.
std::string serialize_weights(const WeightDistribution& w);

std::optional<unsigned> min_distance(const WeightDistribution& w);

}  // namespace corrbound

#endif
