#pragma once

#include <stdexcept>
#include <string>

namespace mmcurve {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operands live over different variable tables, or a variable is unknown.
class StructureError : public Error {
public:
    using Error::Error;
};

// Inversion of a series whose leading part is not a unit.
class NonUnitError : public Error {
public:
    using Error::Error;
};

// Square root of a series whose leading part is not a perfect square.
class BranchError : public Error {
public:
    using Error::Error;
};

// An expansion or iteration that would not terminate at the requested truncation.
class DivergenceError : public Error {
public:
    using Error::Error;
};

// Coefficient requested outside the range the truncation policy makes known.
class TruncationError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class ResourceError : public Error {
public:
    using Error::Error;
};

class ScopeError : public Error {
public:
    using Error::Error;
};

// An internal invariant that the mathematics guarantees was observed to fail.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace mmcurve
