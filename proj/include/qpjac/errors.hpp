#pragma once

#include <stdexcept>
#include <string>

namespace qpjac {

/// Base class for every contract violation raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IdenticallyZero : Error {
    IdenticallyZero() : Error("polynomial is identically zero") {}
};

struct NoConvergence : Error {
    using Error::Error;
};

struct DiophantineViolation : Error {
    long long n;
    double dist;
    double required;
    DiophantineViolation(long long n_, double dist_, double required_)
        : Error("Diophantine check failed at n=" + std::to_string(n_) +
                ": ||n*omega||=" + std::to_string(dist_) +
                " < " + std::to_string(required_)),
          n(n_), dist(dist_), required(required_) {}
};

struct MinusInfinity : Error {
    long long orbit_index;
    explicit MinusInfinity(long long k)
        : Error("log|b| is -inf: exact zero at orbit index " + std::to_string(k)),
          orbit_index(k) {}
};

struct ZeroMatrix : Error {
    ZeroMatrix() : Error("matrix is identically zero") {}
};

struct SingularMatrix : Error {
    SingularMatrix() : Error("determinant mantissa underflowed to zero") {}
};

struct SingularDenominator : Error {
    SingularDenominator() : Error("denominator determinant is zero") {}
};

struct ContourThroughZero : Error {
    ContourThroughZero() : Error("contour passes through a zero after radius nudges") {}
};

struct SingularSample : Error {
    SingularSample() : Error("non-finite sample in quadrature grid; perturb the center") {}
};

struct NoAdjustedInteger : Error {
    NoAdjustedInteger() : Error("no admissible shift found in the search range") {}
};

struct EtaOutOfRange : Error {
    using Error::Error;
};

struct InsufficientSignal : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace qpjac
