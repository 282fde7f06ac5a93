#pragma once

#include <stdexcept>
#include <string>

namespace ellgreen {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A decay certificate was invalid (ratio >= 1) or a series failed to settle.
class NonConvergent : public Error {
public:
    using Error::Error;
};

/// Evaluation requested at the origin of the torus, where the Green function has its pole.
class ZeroPoint : public Error {
public:
    ZeroPoint() : Error("point is zero on the torus") {}
    using Error::Error;
};

/// The twisted Eisenstein series diverges at s = 1 for an integral character.
class DivergentInput : public Error {
public:
    using Error::Error;
};

class OddInput : public Error {
public:
    using Error::Error;
};

class NotPrime : public Error {
public:
    using Error::Error;
};

class Overflow : public Error {
public:
    using Error::Error;
};

class DependentRows : public Error {
public:
    DependentRows() : Error("basis rows are linearly dependent") {}
};

class PrecisionTooLow : public Error {
public:
    using Error::Error;
};

}  // namespace ellgreen
