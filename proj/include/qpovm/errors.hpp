#pragma once

#include <stdexcept>
#include <string>

namespace qpovm {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A matrix fails the density-matrix / effect constraints (hermiticity,
/// trace, positivity) beyond tolerance.
class InvalidStateError : public Error {
public:
    using Error::Error;
};

/// A Kraus list fails validation where a proper channel is required.
class InvalidChannelError : public Error {
public:
    using Error::Error;
};

/// Operands have incompatible or unsupported dimensions.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Measurement-model parameters violate the POVM positivity triangle
/// or other model constraints.
class InvalidModelError : public Error {
public:
    using Error::Error;
};

/// Conditioning on an outcome whose probability vanishes.
class OutcomeImpossibleError : public Error {
public:
    using Error::Error;
};

/// Malformed channel-spec JSON (unknown kind, missing/unknown keys,
/// out-of-range parameters).
class SpecParseError : public Error {
public:
    using Error::Error;
};

} // namespace qpovm
