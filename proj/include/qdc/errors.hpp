#pragma once

#include <stdexcept>
#include <string>

namespace qdc {

// Base for everything thrown by this library. Subclasses exist so callers
// (and the CLI exit-code mapping) can distinguish bad input from internal
// numerical trouble without parsing message text.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

struct NonHermitianInput : Error {
    explicit NonHermitianInput(const std::string& what) : Error(what) {}
};

struct NotDensityMatrix : Error {
    explicit NotDensityMatrix(const std::string& what) : Error(what) {}
};

struct NotCPTP : Error {
    explicit NotCPTP(const std::string& what) : Error(what) {}
};

struct TRangeViolation : Error {
    explicit TRangeViolation(const std::string& what) : Error(what) {}
};

struct InvalidPOVM : Error {
    explicit InvalidPOVM(const std::string& what) : Error(what) {}
};

struct NotContractive : Error {
    explicit NotContractive(const std::string& what) : Error(what) {}
};

struct DegenerateForm : Error {
    explicit DegenerateForm(const std::string& what) : Error(what) {}
};

struct NotDecohering : Error {
    explicit NotDecohering(const std::string& what) : Error(what) {}
};

struct NotUnitary : Error {
    explicit NotUnitary(const std::string& what) : Error(what) {}
};

struct UnsupportedDimension : Error {
    explicit UnsupportedDimension(const std::string& what) : Error(what) {}
};

struct BallViolation : Error {
    explicit BallViolation(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace qdc
