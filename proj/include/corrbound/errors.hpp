#ifndef CORRBOUND_ERRORS_HPP
#define CORRBOUND_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace corrbound {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed text input. Carries 1-based line/column where known.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t line = 0, std::size_t column = 0)
        : Error(format(msg, line, column)), line(line), column(column) {}
    std::size_t line;
    std::size_t column;

  private:
    static std::string format(const std::string& msg, std::size_t line, std::size_t column) {
        if (line == 0) return msg;
        std::string s = msg + " (line " + std::to_string(line);
        if (column != 0) s += ", column " + std::to_string(column);
        return s + ")";
    }
};

// Rows of a matrix file disagree on length.
struct DimensionMismatch : Error {
    using Error::Error;
};

// A parsed object violates a structural invariant; the message names it.
struct ValidationError : Error {
    using Error::Error;
};

// Rowspan enumeration would exceed the configured 2^rank budget.
struct RankTooLarge : Error {
    using Error::Error;
};

struct InvalidParams : Error {
    using Error::Error;
};

// Weight distribution has no nonzero-weight term (rank 0), so W - 1 == 0.
struct EmptyCode : Error {
    using Error::Error;
};

// An operation that is only meaningful for full-rank correctors was
// called with rank < k.
struct RankDeficient : Error {
    using Error::Error;
};

struct TargetUnreachable : Error {
    using Error::Error;
};

// Exhaustive oracle asked to enumerate more states than the guard allows.
struct InputTooLarge : Error {
    using Error::Error;
};

struct NotRankDeficient : Error {
    using Error::Error;
};

struct EmptyCorpus : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

// A built-in cross-check (e.g. Plancherel identity) failed; indicates a bug,
// not bad input.
struct InternalCheckError : Error {
    using Error::Error;
};

}  // namespace corrbound

#endif
