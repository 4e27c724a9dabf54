// errors.hpp
// Error categories shared by every module. The CLI maps them to exit codes.

#pragma once

#include <stdexcept>
#include <string>

namespace locc {

// Bad argument values: out-of-range dimensions, mismatched shapes, malformed input.
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// An operation was called on input that does not satisfy its stated contract
// (non-orthogonal ensemble, incomplete POVM, non-unitary basis, ...).
class PreconditionError : public std::invalid_argument {
public:
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical result failed its own post-check.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace locc
