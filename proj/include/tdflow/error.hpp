#pragma once

#include <stdexcept>
#include <string>

namespace tdflow {

/// Error families. The CLI maps each family to its own exit code.
enum class ErrorKind {
    InvalidArgument = 3,
    Config = 4,
    Numerical = 5,
    Io = 6,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Thrown when |theta(-1)| is too small for the expansion formulas.
class DegenerateSpecError : public Error {
public:
    explicit DegenerateSpecError(const std::string& what)
        : Error(ErrorKind::Numerical, what) {}
};

/// Thrown when a root cannot be bracketed (extinct disk, interface left the graph regime, ...).
class BracketError : public Error {
public:
    explicit BracketError(const std::string& what)
        : Error(ErrorKind::Numerical, what) {}
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, const std::string& what) {
    if (!cond) fail(ErrorKind::InvalidArgument, what);
}

}  // namespace tdflow
