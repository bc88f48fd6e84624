#pragma once

#include <stdexcept>
#include <string>

namespace bht {

// Base for everything thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input-file problems (bad JSON/CSV); everything else is a domain error.
struct ParseError : Error {
    using Error::Error;
};

struct NegativeMass : Error {
    using Error::Error;
};
struct NotNormalized : Error {
    using Error::Error;
};
struct LengthMismatch : Error {
    using Error::Error;
};
struct EmptySupport : Error {
    using Error::Error;
};
struct AtomExplosion : Error {
    using Error::Error;
};
struct NegativeLambda : Error {
    using Error::Error;
};
struct OrderOutOfRange : Error {
    using Error::Error;
};
struct DegenerateVariance : Error {
    using Error::Error;
};
struct InfiniteLlr : Error {
    using Error::Error;
};
struct OutOfRange : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct NegativeArgument : Error {
    using Error::Error;
};

}  // namespace bht
