#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netpresence {

//! Failure class, used by the CLI to pick an exit status:
//! input/parse -> 1, computation precondition -> 2, I/O -> 3.
enum class ErrorCategory { parse = 1, precondition = 2, io = 3 };

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& message)
        : std::runtime_error(message), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

//! Malformed input at a given 1-based line (CSV) or element index (JSON).
struct ParseError : Error {
    ParseError(std::size_t line, const std::string& reason)
        : Error(ErrorCategory::parse,
                "parse error at line " + std::to_string(line) + ": " + reason),
          line(line) {}
    std::size_t line;
};

struct DuplicateKey : Error {
    explicit DuplicateKey(const std::string& key)
        : Error(ErrorCategory::parse, "duplicate key: " + key) {}
};

struct OutOfRange : Error {
    explicit OutOfRange(const std::string& what)
        : Error(ErrorCategory::parse, "value out of range: " + what) {}
};

struct InvalidFraction : Error {
    explicit InvalidFraction(const std::string& what)
        : Error(ErrorCategory::parse, "invalid fraction: " + what) {}
};

//! Site lists of a share matrix and a volume vector disagree.
struct PairingMismatch : Error {
    PairingMismatch(std::size_t index, const std::string& what)
        : Error(ErrorCategory::precondition,
                "site pairing mismatch at index " + std::to_string(index) + ": " + what),
          site_index(index) {}
    std::size_t site_index;
};

struct EmptySelection : Error {
    explicit EmptySelection(const std::string& what)
        : Error(ErrorCategory::precondition, "empty selection: " + what) {}
};

struct EmptySeries : Error {
    explicit EmptySeries(const std::string& what)
        : Error(ErrorCategory::precondition, "empty series: " + what) {}
};

struct NonPositiveMax : Error {
    explicit NonPositiveMax(const std::string& what)
        : Error(ErrorCategory::precondition, "series maximum is not positive: " + what) {}
};

struct EmptyIntersection : Error {
    explicit EmptyIntersection(const std::string& what)
        : Error(ErrorCategory::precondition, "no common dates: " + what) {}
};

//! A required window or interval holds no data; `side` names it.
struct InsufficientData : Error {
    explicit InsufficientData(const std::string& side_)
        : Error(ErrorCategory::precondition, "insufficient data in window: " + side_),
          side(side_) {}
    std::string side;
};

struct ZeroBaseline : Error {
    explicit ZeroBaseline(const std::string& what)
        : Error(ErrorCategory::precondition, "pre-window mean is zero: " + what) {}
};

struct MissingMonth : Error {
    explicit MissingMonth(const std::string& what)
        : Error(ErrorCategory::precondition, "missing month: " + what) {}
};

struct NoMatch : Error {
    explicit NoMatch(const std::string& what)
        : Error(ErrorCategory::precondition, "no matching records: " + what) {}
};

struct InsufficientOverlap : Error {
    explicit InsufficientOverlap(const std::string& what)
        : Error(ErrorCategory::precondition, "insufficient overlap: " + what) {}
};

struct ConstantSeries : Error {
    explicit ConstantSeries(const std::string& what)
        : Error(ErrorCategory::precondition, "constant series: " + what) {}
};

struct CountryMismatch : Error {
    explicit CountryMismatch(const std::string& what)
        : Error(ErrorCategory::precondition, "country lists differ: " + what) {}
};

//! A model-type invariant was violated during construction.
struct InvariantViolation : Error {
    explicit InvariantViolation(const std::string& what)
        : Error(ErrorCategory::precondition, what) {}
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error(ErrorCategory::io, what) {}
};

}  // namespace netpresence
