#pragma once

#include <stdexcept>
#include <string>

namespace grover {

/// Base class for all validation and contract failures raised by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct LengthMismatch : Error {
    explicit LengthMismatch(const std::string& msg) : Error("LengthMismatch: " + msg) {}
};

struct NotNormalized : Error {
    explicit NotNormalized(const std::string& msg) : Error("NotNormalized: " + msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error("DimensionMismatch: " + msg) {}
};

struct FrameMismatch : Error {
    explicit FrameMismatch(const std::string& msg) : Error("FrameMismatch: " + msg) {}
};

struct FullyMarked : Error {
    explicit FullyMarked(const std::string& msg) : Error("FullyMarked: " + msg) {}
};

struct InvalidCount : Error {
    explicit InvalidCount(const std::string& msg) : Error("InvalidCount: " + msg) {}
};

struct InconsistentStats : Error {
    explicit InconsistentStats(const std::string& msg) : Error("InconsistentStats: " + msg) {}
};

struct ComplexAmplitudes : Error {
    explicit ComplexAmplitudes(const std::string& msg) : Error("ComplexAmplitudes: " + msg) {}
};

struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& msg) : Error("BudgetExceeded: " + msg) {}
};

struct InvalidEpsilon : Error {
    explicit InvalidEpsilon(const std::string& msg) : Error("InvalidEpsilon: " + msg) {}
};

struct InvalidWeight : Error {
    explicit InvalidWeight(const std::string& msg) : Error("InvalidWeight: " + msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error("ParseError: " + msg) {}
};

struct IoFailure : Error {
    explicit IoFailure(const std::string& msg) : Error("IoFailure: " + msg) {}
};

} // namespace grover
