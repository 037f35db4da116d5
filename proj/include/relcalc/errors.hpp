#pragma once

#include <stdexcept>
#include <string>

#include "relcalc/linalg.hpp"

namespace relcalc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (rationals, JSON files).
class ParseError : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its domain: non-symmetric input where a
/// form is required, mixed ambient spaces, an inclusion chain that fails.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A lower bound c could not be certified. Carries a vector of the ambient
/// space (or a graph element, see `graph_element`) violating the bound.
class CertificationError : public Error {
public:
    CertificationError(const std::string& what, Vector witness, Vector graph_element = {})
        : Error(what), witness_(std::move(witness)), graph_element_(std::move(graph_element)) {}

    const Vector& witness() const { return witness_; }
    const Vector& graph_element() const { return graph_element_; }

private:
    Vector witness_;
    Vector graph_element_;
};

/// Two routes that must agree exactly did not. Never expected; indicates a
/// bug or corrupted input.
class CrossCheckError : public Error {
public:
    using Error::Error;
};

}  // namespace relcalc
