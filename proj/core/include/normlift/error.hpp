#pragma once

#include <stdexcept>
#include <string>

namespace normlift {

/// Base class of every domain error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A group constructor received parameters outside its family's constraints.
class InvalidSpec : public Error {
  public:
    using Error::Error;
};

/// Input exceeds a configured size bound (group order, lattice size, search width).
class TooLarge : public Error {
  public:
    using Error::Error;
};

class NotASubgroup : public Error {
  public:
    using Error::Error;
};

class NotNormal : public Error {
  public:
    using Error::Error;
};

/// A seed arrow K -> H with K not below H.
class InvalidArrow : public Error {
  public:
    using Error::Error;
};

/// A relation was paired with a carrier of a different size or kind.
class CarrierMismatch : public Error {
  public:
    using Error::Error;
};

class NotMcf : public Error {
  public:
    using Error::Error;
};

class BadPrime : public Error {
  public:
    using Error::Error;
};

class InvalidTriple : public Error {
  public:
    using Error::Error;
};

/// Malformed text or JSON input.
class ParseError : public Error {
  public:
    using Error::Error;
};

} // namespace normlift
