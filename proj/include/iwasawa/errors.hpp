#pragma once

#include <stdexcept>
#include <string>

namespace iwasawa {

// Base class for every error raised by the library. The CLI maps each
// subclass to a fixed exit code, so new error kinds must be added to the
// mapping in tools/iwa_main.cpp as well.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Operands live in different (p, precision) contexts.
struct ContextMismatch : Error {
    explicit ContextMismatch(const std::string& what) : Error(what) {}
};

struct DivisionByZero : Error {
    explicit DivisionByZero(const std::string& what) : Error(what) {}
};

// A result cannot be certified at the working precision: every digit we
// can see is ambiguous (undeterminable mu / lambda, gray-zone remainder).
struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& what) : Error(what) {}
};

// Evaluation point outside the open unit disk (valuation <= 0).
struct OutOfDisk : Error {
    explicit OutOfDisk(const std::string& what) : Error(what) {}
};

// A configured cyclotomic generator image violates u = 1 mod p, u != 1 mod p^2.
struct InvalidGenerator : Error {
    explicit InvalidGenerator(const std::string& what) : Error(what) {}
};

// All maximal minors of a presentation vanish at precision.
struct NotTorsion : Error {
    explicit NotTorsion(const std::string& what) : Error(what) {}
};

// A divisibility-gate hypothesis (F | eta, F | fine_fbar) fails.
struct HypothesisViolated : Error {
    explicit HypothesisViolated(const std::string& what) : Error(what) {}
};

// Generic operation precondition failure (bad sizes, zero input, ...).
struct PreconditionViolated : Error {
    explicit PreconditionViolated(const std::string& what) : Error(what) {}
};

// Malformed input document or schema violation.
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

} // namespace iwasawa
