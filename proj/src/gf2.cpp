#include "corrbound/gf2.hpp"

#include <algorithm>
#include <bit>

namespace corrbound {

namespace {

// In-place Gaussian elimination over GF(2) on packed rows. Returns the rank;
// the first `rank` rows of `rows` end up as an echelon basis.
std::size_t eliminate(std::vector<Word>& rows, std::size_t k, std::size_t n, std::size_t wpr) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < k; ++col) {
        const std::size_t wi = col / kWordBits;
        const Word mask = Word(1) << (col % kWordBits);
        std::size_t pivot = rank;
        while (pivot < k && !(rows[pivot * wpr + wi] & mask)) ++pivot;
        if (pivot == k) continue;
        if (pivot != rank)
            std::swap_ranges(rows.begin() + pivot * wpr, rows.begin() + (pivot + 1) * wpr,
                             rows.begin() + rank * wpr);
        for (std::size_t r = 0; r < k; ++r) {
            if (r == rank) continue;
            if (rows[r * wpr + wi] & mask)
                for (std::size_t w = 0; w < wpr; ++w) rows[r * wpr + w] ^= rows[rank * wpr + w];
        }
        ++rank;
    }
    return rank;
}

std::vector<Word> copy_rows(const GeneratorMatrix& g) {
    std::vector<Word> rows(g.rows() * g.words_per_row());
    for (std::size_t r = 0; r < g.rows(); ++r)
        std::copy_n(g.row(r), g.words_per_row(), rows.begin() + r * g.words_per_row());
    return rows;
}

}  // namespace

std::size_t gf2_rank(const GeneratorMatrix& g) {
    std::vector<Word> rows = copy_rows(g);
    return eliminate(rows, g.rows(), g.cols(), g.words_per_row());
}

std::vector<Word> row_echelon_basis(const GeneratorMatrix& g, std::size_t& rank_out) {
    std::vector<Word> rows = copy_rows(g);
    rank_out = eliminate(rows, g.rows(), g.cols(), g.words_per_row());
    rows.resize(rank_out * g.words_per_row());
    return rows;
}

std::vector<Codeword> enumerate_rowspan(const GeneratorMatrix& g, std::size_t limit) {
    std::vector<Codeword> out;
    const std::size_t wpr = g.words_per_row();
    for_each_codeword(
        g,
        [&](const Word* bits, unsigned weight) {
            out.push_back(Codeword{std::vector<Word>(bits, bits + wpr), weight});
        },
        limit);
    return out;
}

std::uint64_t multiply(const GeneratorMatrix& g, std::uint64_t x) {
    if (g.cols() > 64 || g.rows() > 64)
        throw InvalidParams("multiply() supports n <= 64 and k <= 64");
    std::uint64_t y = 0;
    for (std::size_t r = 0; r < g.rows(); ++r)
        y |= std::uint64_t(std::popcount(g.row(r)[0] & x) & 1) << r;
    return y;
}

GeneratorMatrix reed_muller_generator(unsigned r, unsigned m) {
    if (m == 0 || m > 30) throw InvalidParams("reed_muller_generator requires 1 <= m <= 30");
    if (r > m) throw InvalidParams("reed_muller_generator requires r <= m");
    const std::uint64_t n = std::uint64_t(1) << m;

    // Monomial masks of degree <= r, ordered by (degree, mask) so the row
    // layout is deterministic.
    std::vector<std::uint32_t> masks;
    for (unsigned deg = 0; deg <= r; ++deg)
        for (std::uint32_t t = 0; t < (std::uint32_t(1) << m); ++t)
            if (static_cast<unsigned>(std::popcount(t)) == deg) masks.push_back(t);

    GeneratorMatrix g(masks.size(), n);
    for (std::size_t row = 0; row < masks.size(); ++row) {
        const std::uint32_t t = masks[row];
        // Column j is the monomial evaluated at the point with coordinate
        // bits j: 1 iff every variable in t is set in j.
        for (std::uint64_t j = 0; j < n; ++j)
            if ((j & t) == t) g.set(row, j, true);
    }
    return g;
}

GeneratorMatrix parse_generator(std::string_view text) {
    std::vector<std::string_view> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    std::size_t width = 0;
    std::size_t first_row_line = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty() && line.front() != '#') {
            for (std::size_t c = 0; c < line.size(); ++c)
                if (line[c] != '0' && line[c] != '1')
                    throw ParseError("invalid character in generator row", line_no, c + 1);
            if (rows.empty()) {
                width = line.size();
                first_row_line = line_no;
            } else if (line.size() != width) {
                throw DimensionMismatch("row on line " + std::to_string(line_no) + " has " +
                                        std::to_string(line.size()) + " columns, expected " +
                                        std::to_string(width) + " (from line " +
                                        std::to_string(first_row_line) + ")");
            }
            rows.push_back(line);
        }
        if (eol == text.size()) break;
        pos = eol + 1;
    }
    if (rows.empty()) throw ParseError("generator file contains no rows");

    GeneratorMatrix g(rows.size(), width);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < width; ++c)
            if (rows[r][c] == '1') g.set(r, c, true);
    return g;
}

std::string serialize_generator(const GeneratorMatrix& g) {
    std::string out;
    out.reserve(g.rows() * (g.cols() + 1));
    for (std::size_t r = 0; r < g.rows(); ++r) {
        for (std::size_t c = 0; c < g.cols(); ++c) out.push_back(g.get(r, c) ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

}  // namespace corrbound
