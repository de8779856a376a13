#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace kgraph {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotComposable : public Error {
 public:
  using Error::Error;
};

/// A degree argument lies outside the box the operation is defined on, or a
/// subtraction of degrees would go negative.
class DegreeOutOfRange : public Error {
 public:
  using Error::Error;
};

class RangeMismatch : public Error {
 public:
  using Error::Error;
};

class NotAtVertex : public Error {
 public:
  using Error::Error;
};

class NotLocallyConvex : public Error {
 public:
  using Error::Error;
};

/// A fragment does not carry enough of its boundary path to answer.
class InsufficientDepth : public Error {
 public:
  using Error::Error;
};

class DepthTooSmall : public Error {
 public:
  using Error::Error;
};

class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

class NotSaturatedHereditary : public Error {
 public:
  using Error::Error;
};

/// An enumeration exceeded its cap (see KG_MAX_MORPHISMS).
class TooLarge : public Error {
 public:
  using Error::Error;
};

/// A property that holds for every valid input was found to fail. Indicates
/// a bug, not bad input.
class InvariantBreach : public Error {
 public:
  using Error::Error;
};

class UnknownName : public Error {
 public:
  using Error::Error;
};

}  // namespace kgraph
