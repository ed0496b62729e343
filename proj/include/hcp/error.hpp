#pragma once

#include <stdexcept>
#include <string>

namespace hcp {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand lengths disagree (e.g. Hamming distance of a 5-bit and a 6-bit vector).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Request exceeds a configured memory/time budget (lookup-table size, ball volume).
class ResourceError : public Error {
public:
    using Error::Error;
};

/// No code satisfying the requested parameters could be built.
class ConstructionError : public Error {
public:
    using Error::Error;
};

/// Solver configuration is inconsistent with the code's guarantees.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed input file or text.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Input data is insufficient for the request (e.g. sequences too short).
class DataError : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed.
class InvariantError : public Error {
public:
    using Error::Error;
};

} // namespace hcp
