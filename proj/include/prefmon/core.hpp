#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/rational.hpp>

namespace prefmon {

using AttributeId = int;
using ValueId = int;
using ObjectIndex = std::uint32_t;
using UserIndex = int;

// Exact arithmetic for similarity values, weights, and frequencies.
using Rational = boost::rational<long long>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A relation edge set that cannot be closed into a strict partial order.
struct CycleError : Error {
    using Error::Error;
};

// A value id outside the attribute's domain.
struct UnknownValue : Error {
    using Error::Error;
};

// Relations over different attributes where the same attribute was required.
struct AttributeMismatch : Error {
    using Error::Error;
};

// An object whose value vector does not fit the schema.
struct SchemaMismatch : Error {
    using Error::Error;
};

// Malformed input file; message carries the line number.
struct ParseError : Error {
    using Error::Error;
};

// Well-formed input referring to unknown attributes or values.
struct SchemaViolation : Error {
    using Error::Error;
};

// Defensive: a non-maximal value with no path from any maximal value.
// Cannot occur for finite domains (walking predecessors reaches a maximum).
struct UnreachableValue : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

// Dominance test counter. Every comparison of two objects under a profile
// bumps this once, no matter which algorithm asked.
struct DominanceStats {
    std::uint64_t comparisons = 0;
};

}  // namespace prefmon
