#pragma once

#include <stdexcept>
#include <string>

namespace morphlog {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed formula text. `column` is 1-based; `expected` describes the
/// token class the parser was looking for.
struct SyntaxError : Error {
    SyntaxError(int column, std::string expected)
        : Error("syntax error at column " + std::to_string(column) +
                ": expected " + expected),
          column(column),
          expected(std::move(expected)) {}
    int column;
    std::string expected;
};

struct UnknownAtom : Error {
    explicit UnknownAtom(const std::string& name)
        : Error("unknown atom '" + name + "'"), atom(name) {}
    std::string atom;
};

struct EmptyInput : Error {
    using Error::Error;
};

struct EmptyBelief : Error {
    using Error::Error;
};

struct EmptyProfile : Error {
    using Error::Error;
};

struct EmptyConstraint : Error {
    using Error::Error;
};

struct InconsistentObservation : Error {
    using Error::Error;
};

struct InconsistentExplanans : Error {
    using Error::Error;
};

struct EmptyObservation : Error {
    using Error::Error;
};

struct SharedVariables : Error {
    SharedVariables(int first, int second, const std::string& atom)
        : Error("parts " + std::to_string(first) + " and " +
                std::to_string(second) + " share variable '" + atom + "'"),
          first(first),
          second(second),
          atom(atom) {}
    int first;
    int second;
    std::string atom;
};

struct ScaleExceeded : Error {
    using Error::Error;
};

}  // namespace morphlog
