#pragma once

#include <stdexcept>
#include <string>

namespace bms {

// Base for every error raised by the library. The CLI maps these onto exit
// code 2 (bad input) and keeps exit code 1 for failed checks.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a function (e.g. u < 0).
class DomainError : public Error {
public:
    using Error::Error;
};

// Invalid numeric parameter such as a non-positive bandwidth.
class ParameterError : public Error {
public:
    using Error::Error;
};

// Malformed or non-finite configuration data, shape mismatches.
class DataError : public Error {
public:
    using Error::Error;
};

// Inconsistent kernel / run configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Mean shift query with no data point inside the kernel support.
class IsolatedQueryError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t row, std::size_t col)
        : Error(what + " (row " + std::to_string(row) + ", col " + std::to_string(col) + ")"),
          row_(row), col_(col) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }

private:
    std::size_t row_;
    std::size_t col_;
};

}  // namespace bms
