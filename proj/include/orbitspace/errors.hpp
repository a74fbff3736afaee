#pragma once

#include <stdexcept>
#include <string>

namespace orbitspace {

// Root of every exception the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RingMismatchError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// A linear system had no solution; upstream this means the sampled function is
// not expressible in the requested basis.
class InconsistentSystemError : public Error {
 public:
  using Error::Error;
};

// A linear system had more than one solution; upstream this means the sample
// points are degenerate.
class UnderdeterminedSystemError : public Error {
 public:
  using Error::Error;
};

// Catalog or reference data violates one of its structural identities.
class DataIntegrityError : public Error {
 public:
  using Error::Error;
};

}  // namespace orbitspace
