#pragma once

#include <stdexcept>
#include <string>

namespace sympball {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidMatrix : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class NotSymmetric : public Error {
public:
    using Error::Error;
};

class NotPositiveDefinite : public Error {
public:
    using Error::Error;
};

class Singular : public Error {
public:
    using Error::Error;
};

class EigFailed : public Error {
public:
    using Error::Error;
};

/// Odd multiplicity in a paired spectrum; signals numerical breakdown.
class PairingFailed : public Error {
public:
    using Error::Error;
};

/// Could not build a canonical skew form on a repeated-eigenvalue cluster.
class DegenerateClusterFailure : public Error {
public:
    using Error::Error;
};

class NotSymplectic : public Error {
public:
    using Error::Error;
};

/// The span is not invariant under the standard complex structure J.
class NotComplex : public Error {
public:
    using Error::Error;
};

class RankDeficient : public Error {
public:
    using Error::Error;
};

class GramSchmidtBreakdown : public Error {
public:
    using Error::Error;
};

class PivotNotPD : public Error {
public:
    using Error::Error;
};

/// Malformed input file (bad JSON, missing keys, wrong ordering tag, ...).
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace sympball
