#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace linnik {

// Every failure raised by the library derives from Error. The CLI maps the
// three families below onto exit codes (usage 1, data 2, numeric 3).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---- usage / precondition ---------------------------------------------------

class PreconditionError : public Error {
public:
    using Error::Error;
};

class SizeError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class RangeError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// k outside the range where the explicit formula is claimed, without the
/// explicit opt-in.
class TheoremRangeError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

// ---- data / validation -----------------------------------------------------

class DataError : public Error {
public:
    using Error::Error;
};

class ParseError : public DataError {
public:
    ParseError(const std::string& what, std::size_t line)
        : DataError(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class MonotonicityError : public DataError {
public:
    MonotonicityError(const std::string& what, std::size_t line)
        : DataError(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class SanityError : public DataError {
public:
    using DataError::DataError;
};

class FetchError : public DataError {
public:
    using DataError::DataError;
};

class IntegrityError : public DataError {
public:
    using DataError::DataError;
};

// ---- numeric -----------------------------------------------------------------

class NumericError : public Error {
public:
    using Error::Error;
};

class DomainError : public NumericError {
public:
    using NumericError::NumericError;
};

class PoleError : public NumericError {
public:
    PoleError(const std::string& what, long pole)
        : NumericError(what + " (pole at " + std::to_string(pole) + ")"), pole_(pole) {}
    long pole() const noexcept { return pole_; }

private:
    long pole_;
};

/// A special function could not reach the requested tolerance. Carries the
/// strategy that was attempted and the relative error it did achieve.
class PrecisionError : public NumericError {
public:
    PrecisionError(const std::string& what, std::string strategy, double achieved)
        : NumericError(what + " [strategy=" + strategy +
                       ", achieved~" + std::to_string(achieved) + "]"),
          strategy_(std::move(strategy)), achieved_(achieved) {}
    const std::string& strategy() const noexcept { return strategy_; }
    double achieved() const noexcept { return achieved_; }

private:
    std::string strategy_;
    double achieved_;
};

class TruncationError : public NumericError {
public:
    using NumericError::NumericError;
};

class QuadratureError : public NumericError {
public:
    using NumericError::NumericError;
};

/// Wraps a sub-term failure with the name of the term that raised it.
class TermError : public NumericError {
public:
    TermError(std::string term, const std::string& cause)
        : NumericError(term + ": " + cause), term_(std::move(term)) {}
    const std::string& term() const noexcept { return term_; }

private:
    std::string term_;
};

}  // namespace linnik
