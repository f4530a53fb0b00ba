#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace credal {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class PositivityError : public Error {
public:
    using Error::Error;
};

/// Construction-time invariant violation (bad weights, bad sums, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

class EmptyCredalError : public Error {
public:
    using Error::Error;
};

class ParameterError : public Error {
public:
    using Error::Error;
};

class EmptyEvidenceError : public Error {
public:
    using Error::Error;
};

/// Raised when the pessimistic update has no single evidence item attaining
/// the infimum on every atom, so the raw infima do not form a probability.
class AdditivityViolationError : public Error {
public:
    AdditivityViolationError(const std::string& what, int extreme_index, int k)
        : Error(what), extreme_index(extreme_index), k(k) {}
    int extreme_index;  // -1 when not tied to a credal-set extreme
    int k;
};

class EmptyEnvelopeError : public Error {
public:
    using Error::Error;
};

class SamplingError : public Error {
public:
    using Error::Error;
};

class TraceError : public Error {
public:
    using Error::Error;
};

class SandwichViolation : public Error {
public:
    SandwichViolation(const std::string& what, int step) : Error(what), step(step) {}
    int step;
};

class MonotonicityError : public Error {
public:
    using Error::Error;
};

/// Scenario file parse or validation failure; message carries the offending key.
class ScenarioError : public Error {
public:
    using Error::Error;
};

}  // namespace credal
