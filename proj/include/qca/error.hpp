#pragma once

#include <stdexcept>
#include <string>

namespace qca {

// Precondition or domain failure caused by the caller's input.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed text input; carries a 1-based line/column position.
class ParseError : public DomainError {
public:
    ParseError(const std::string& msg, int line, int col)
        : DomainError(msg + " at line " + std::to_string(line) + ", column " + std::to_string(col)),
          line_(line), col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

// A matrix that was required to be invertible over the Laurent ring is not.
class NotInvertible : public DomainError {
public:
    using DomainError::DomainError;
};

// Requested computation needs more residual variables than the engine handles.
class UnsupportedDimension : public DomainError {
public:
    using DomainError::DomainError;
};

// Internal consistency check failed; indicates a bug, not bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

#define QCA_CHECK(cond, msg)                                                           \
    do {                                                                               \
        if (!(cond)) throw ::qca::InternalError(std::string("check failed: ") + (msg)); \
    } while (0)

} // namespace qca
