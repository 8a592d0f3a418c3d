#include "corrbound/weights.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>

namespace corrbound {

double ln_bigint(const BigInt& a) {
    if (a <= 0) throw InvalidParams("ln_bigint requires a positive integer");
    const unsigned bits = boost::multiprecision::msb(a);  // index of the top bit
    if (bits <= 52) return std::log(a.convert_to<double>());
    // Take the top 53 bits; the discarded tail perturbs ln by < 2^-52.
    const unsigned shift = bits - 52;
    const std::uint64_t mant = BigInt(a >> shift).convert_to<std::uint64_t>();
    return std::log(static_cast<double>(mant)) + static_cast<double>(shift) * M_LN2;
}

WeightDistribution::WeightDistribution(unsigned n, unsigned rank,
                                       std::map<unsigned, BigInt> counts, bool partial)
    : n_(n), rank_(rank), partial_(partial), counts_(std::move(counts)) {
    auto zero = counts_.find(0);
    if (zero == counts_.end() || zero->second != 1)
        throw ValidationError("A_0 must equal 1 (the zero codeword is always present)");
    BigInt sum = 0;
    for (const auto& [w, count] : counts_) {
        if (w > n_)
            throw ValidationError("weight " + std::to_string(w) + " exceeds block length " +
                                  std::to_string(n_));
        if (count < 1) throw ValidationError("stored count A_" + std::to_string(w) + " must be >= 1");
        sum += count;
    }
    const BigInt expected = BigInt(1) << rank_;
    if (partial_) {
        if (sum > expected)
            throw ValidationError("counts sum exceeds 2^rank even for a partial distribution");
        if (sum == expected) partial_ = false;  // complete after all
    } else if (sum != expected) {
        std::ostringstream os;
        os << "counts sum " << sum << " != 2^" << rank_ << " = " << expected;
        throw ValidationError(os.str());
    }
    log_counts_.reserve(counts_.size());
    for (const auto& [w, count] : counts_) log_counts_.emplace_back(w, ln_bigint(count));
}

std::optional<unsigned> WeightDistribution::min_distance() const {
    for (const auto& [w, count] : counts_)
        if (w > 0) return w;
    return std::nullopt;
}

std::optional<unsigned> min_distance(const WeightDistribution& w) { return w.min_distance(); }

WeightDistribution weights_from_matrix(const GeneratorMatrix& g, std::size_t limit) {
    std::vector<std::uint64_t> tally(g.cols() + 1, 0);
    for_each_codeword(
        g, [&](const Word*, unsigned weight) { ++tally[weight]; }, limit);
    std::map<unsigned, BigInt> counts;
    for (unsigned w = 0; w <= g.cols(); ++w)
        if (tally[w] != 0) counts[w] = tally[w];
    WeightDistribution dist(static_cast<unsigned>(g.cols()),
                            static_cast<unsigned>(gf2_rank(g)), std::move(counts));
    dist.set_corrector_rows(g.rows());
    return dist;
}

namespace {

// Splits a line into whitespace-separated tokens.
std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream is(line);
    std::string t;
    while (is >> t) toks.push_back(t);
    return toks;
}

bool parse_unsigned(const std::string& s, unsigned& out) {
    if (s.empty()) return false;
    unsigned long v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
        v = v * 10 + static_cast<unsigned long>(c - '0');
        if (v > 0xFFFFFFFFul) return false;
    }
    out = static_cast<unsigned>(v);
    return true;
}

}  // namespace

WeightDistribution parse_weights(std::string_view text, bool allow_partial) {
    std::istringstream stream{std::string(text)};
    std::string line;
    std::size_t line_no = 0;

    bool have_header = false;
    unsigned n = 0, k = 0;
    std::map<unsigned, BigInt> counts;

    while (std::getline(stream, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        auto toks = tokens_of(line);
        if (toks.empty()) continue;

        if (!have_header) {
            if (toks.size() != 2 || toks[0].rfind("n=", 0) != 0 || toks[1].rfind("k=", 0) != 0)
                throw ParseError("expected header `n=<int> k=<int>`", line_no);
            if (!parse_unsigned(toks[0].substr(2), n) || !parse_unsigned(toks[1].substr(2), k))
                throw ParseError("bad integer in header", line_no);
            if (n == 0) throw ParseError("block length n must be >= 1", line_no);
            have_header = true;
            continue;
        }

        if (toks.size() != 2) throw ParseError("expected `w count` pair", line_no);
        unsigned w = 0;
        if (!parse_unsigned(toks[0], w)) throw ParseError("bad weight value", line_no);
        BigInt count;
        try {
            count = BigInt(toks[1]);
        } catch (const std::exception&) {
            throw ParseError("bad count value", line_no);
        }
        if (counts.count(w))
            throw ValidationError("duplicate entry for weight " + std::to_string(w));
        counts[w] = std::move(count);
    }
    if (!have_header) throw ParseError("missing `n=<int> k=<int>` header");
    if (counts.empty()) throw ParseError("weight file contains no `w count` pairs");
    return WeightDistribution(n, k, std::move(counts), allow_partial);
}

std::string serialize_weights(const WeightDistribution& w) {
    std::ostringstream os;
    os << "n=" << w.n() << " k=" << w.rank() << "\n";
    for (const auto& [weight, count] : w.counts()) os << weight << " " << count << "\n";
    return os.str();
}

}  // namespace corrbound
