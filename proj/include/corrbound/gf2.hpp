#ifndef CORRBOUND_GF2_HPP
#define CORRBOUND_GF2_HPP

#include <bit>
#include <cstdint>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "corrbound/errors.hpp"

namespace corrbound {

using Word = std::uint64_t;

inline constexpr std::size_t kWordBits = 64;

// Largest rank for which rowspan enumeration (2^rank codewords) is allowed
// by default. 2^28 single-word XOR+popcount steps finish in minutes.
inline constexpr std::size_t kDefaultEnumerationLimit = 28;

// A k x n binary matrix over GF(2), rows packed into 64-bit words.
// Column j of row i is bit (j % 64) of word (j / 64). Rows may be linearly
// dependent and k may exceed n; nothing here assumes full rank.
class GeneratorMatrix {
  public:
    GeneratorMatrix(std::size_t k, std::size_t n)
        : k_(k), n_(n), words_per_row_((n + kWordBits - 1) / kWordBits) {
        if (k == 0 || n == 0) throw InvalidParams("generator matrix needs k >= 1 and n >= 1");
        bits_.assign(k_ * words_per_row_, 0);
    }

    std::size_t rows() const { return k_; }
    std::size_t cols() const { return n_; }
    std::size_t words_per_row() const { return words_per_row_; }

    bool get(std::size_t r, std::size_t c) const {
        return (bits_[r * words_per_row_ + c / kWordBits] >> (c % kWordBits)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        Word& w = bits_[r * words_per_row_ + c / kWordBits];
        Word mask = Word(1) << (c % kWordBits);
        if (v)
            w |= mask;
        else
            w &= ~mask;
    }

    const Word* row(std::size_t r) const { return bits_.data() + r * words_per_row_; }
    Word* row(std::size_t r) { return bits_.data() + r * words_per_row_; }

    bool operator==(const GeneratorMatrix& other) const {
        return k_ == other.k_ && n_ == other.n_ && bits_ == other.bits_;
    }

  private:
    std::size_t k_, n_, words_per_row_;
    std::vector<Word> bits_;
};

// One codeword of rowspan(G).
struct Codeword {
    std::vector<Word> bits;
    unsigned weight = 0;
};

inline unsigned popcount_words(const Word* w, std::size_t nwords) {
    unsigned s = 0;
    for (std::size_t i = 0; i < nwords; ++i) s += static_cast<unsigned>(std::popcount(w[i]));
    return s;
}

std::size_t gf2_rank(const GeneratorMatrix& g);

// Row-echelon basis of rowspan(G): `rank` independent rows, packed
// contiguously with the matrix's word stride.
std::vector<Word> row_echelon_basis(const GeneratorMatrix& g, std::size_t& rank_out);

// Visits every codeword of rowspan(G) exactly once, zero codeword first.
// Iteration follows a Gray code over basis combinations, so each step is a
// single row XOR. f(bits, weight) receives a pointer valid only during the
// call. Throws RankTooLarge when rank(G) > limit.
template <typename F>
void for_each_codeword(const GeneratorMatrix& g, F&& f,
                       std::size_t limit = kDefaultEnumerationLimit) {
    std::size_t rank = 0;
    std::vector<Word> basis = row_echelon_basis(g, rank);
    if (rank > limit)
        throw RankTooLarge("rank " + std::to_string(rank) + " exceeds enumeration limit " +
                           std::to_string(limit) + "; ingest a weight file instead");
    const std::size_t wpr = g.words_per_row();
    std::vector<Word> cur(wpr, 0);
    f(static_cast<const Word*>(cur.data()), 0u);
    const std::uint64_t total = std::uint64_t(1) << rank;
    for (std::uint64_t i = 1; i < total; ++i) {
        const unsigned flip = static_cast<unsigned>(std::countr_zero(i));
        const Word* brow = basis.data() + std::size_t(flip) * wpr;
        for (std::size_t wi = 0; wi < wpr; ++wi) cur[wi] ^= brow[wi];
        f(static_cast<const Word*>(cur.data()), popcount_words(cur.data(), wpr));
    }
}

// Materialized rowspan, for small codes and tests.
std::vector<Codeword> enumerate_rowspan(const GeneratorMatrix& g,
                                        std::size_t limit = kDefaultEnumerationLimit);

// y = G * x for n <= 64 and k <= 64; bit i of x is input bit x_i, bit r of
// the result is output bit y_r.
std::uint64_t multiply(const GeneratorMatrix& g, std::uint64_t x);

// Reed-Muller code RM(r, m): rows evaluate all monomials of degree <= r on
// the 2^m points of F_2^m. n = 2^m, k = sum_{i<=r} C(m, i), d = 2^(m-r).
GeneratorMatrix reed_muller_generator(unsigned r, unsigned m);

// Text format: one row per line of '0'/'1' characters, '#' comment lines
// ignored, trailing newline optional.
GeneratorMatrix parse_generator(std::string_view text);
std::string serialize_generator(const GeneratorMatrix& g);

}  // namespace corrbound

#endif
