#pragma once

#include <stdexcept>
#include <string>

namespace umx {

// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed textual or JSON input (bad rational syntax, schema mismatch, ...).
class ParseError : public Error {
public:
    using Error::Error;
};

// A set-valued argument was empty where a nonempty set is required.
class EmptySetError : public Error {
public:
    using Error::Error;
};

// A referenced point label does not exist in the space.
class UnknownLabelError : public Error {
public:
    using Error::Error;
};

// Operands belong to different spaces, or a map is applied outside its domain.
class DomainMismatchError : public Error {
public:
    using Error::Error;
};

// A stated hypothesis of the requested operation does not hold for the input.
class PreconditionFailed : public Error {
public:
    using Error::Error;
};

// A machine-checked conclusion of a proven result failed to verify.
// Reaching this is an implementation bug, never a property of valid input.
class TheoremViolation : public Error {
public:
    using Error::Error;
};

class LemmaViolation : public TheoremViolation {
public:
    using TheoremViolation::TheoremViolation;
};

// Rejection sampling hit its attempt cap.
class GenerationExhausted : public Error {
public:
    using Error::Error;
};

// The distance pool has fewer levels than the requested tree needs.
class PoolTooShallow : public Error {
public:
    using Error::Error;
};

// The space has no ball other than itself (single-point space).
class NoProperBall : public Error {
public:
    using Error::Error;
};

} // namespace umx
