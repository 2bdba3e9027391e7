#pragma once

#include <stdexcept>
#include <string>

namespace analytica {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

/// A certified enclosure straddles a decision boundary at the working
/// precision; the caller gets no guess.
class IndeterminateError : public Error {
public:
  using Error::Error;
};

class NotUPCError : public Error {
public:
  using Error::Error;
};

class ZeroPolynomialError : public Error {
public:
  using Error::Error;
};

class UnsupportedError : public Error {
public:
  using Error::Error;
};

class PoleAtOriginError : public Error {
public:
  using Error::Error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

/// Raised by the series engine when a composite cannot be decided at the
/// requested truncation order; classification turns it into Inconclusive.
class InconclusiveError : public Error {
public:
  using Error::Error;
};

class DegenerateWitnessError : public Error {
public:
  using Error::Error;
};

} // namespace analytica
