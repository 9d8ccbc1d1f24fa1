#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crn {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed network text. `line()` is 1-based; 0 means "whole input".
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error(line == 0 ? message : "line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A network violates a structural invariant or an operation's precondition.
class NetworkError : public Error {
public:
    using Error::Error;
};

/// Kinetics are missing, of the wrong variant, or inconsistent.
class KineticsError : public Error {
public:
    using Error::Error;
};

/// A symbolic rate constant or fixture parameter has no numeric value.
class MissingBinding : public Error {
public:
    using Error::Error;
};

/// Determinant dimension exceeds the configured cap.
class DeterminantTooLarge : public Error {
public:
    DeterminantTooLarge(std::size_t n, std::size_t cap)
        : Error("determinant too large: " + std::to_string(n) + "x" + std::to_string(n) +
                " exceeds the cap of " + std::to_string(cap)),
          n_(n), cap_(cap) {}

    std::size_t dimension() const noexcept { return n_; }
    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t n_;
    std::size_t cap_;
};

/// A numeric precondition failed (bad domain, bad flows, dimension mismatch).
class DomainError : public Error {
public:
    using Error::Error;
};

} // namespace crn
