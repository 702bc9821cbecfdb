#ifndef CAPSTRUCT_ERRORS_HPP
#define CAPSTRUCT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace capstruct {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input file: ragged rows, unparseable numbers, bad header.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Data violates a panel invariant (e.g. non-positive price); message names the cell.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Date/calendar inconsistency: non-increasing dates, unmappable month.
class CalendarError : public Error {
public:
    using Error::Error;
};

/// Run configuration cannot produce a result (empty asset set, window too long).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Caller broke an API contract: dimension mismatch, out-of-range argument,
/// invalid distance matrix.
class ContractError : public Error {
public:
    using Error::Error;
};

/// A ratio or distribution is undefined on this input (all-zero caps,
/// empty month, zero portfolio variance).
class UndefinedValueError : public Error {
public:
    using Error::Error;
};

/// The constraint set {sum w = 1, 0 <= w_i <= b} is empty (m*b < 1).
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// Monthly and daily series cannot be joined; message names the month.
class AlignmentError : public Error {
public:
    using Error::Error;
};

} // namespace capstruct

#endif // CAPSTRUCT_ERRORS_HPP
