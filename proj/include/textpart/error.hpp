#pragma once

#include <stdexcept>
#include <string>

namespace textpart {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A cluster whose rows are all identical has no principal direction.
class DegenerateClusterError : public Error {
 public:
  DegenerateClusterError() : Error("degenerate cluster") {}
};

/// No leaf of a cluster tree can be split any further.
class ExhaustedError : public Error {
 public:
  ExhaustedError() : Error("exhausted") {}
};

/// A distribution argument violates a support requirement.
class SupportError : public Error {
 public:
  explicit SupportError(const std::string& what) : Error(what) {}
};

/// Bad user-facing configuration (flag combinations, parameter ranges).
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(what) {}
};

}  // namespace textpart
