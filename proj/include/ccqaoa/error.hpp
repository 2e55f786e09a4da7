#pragma once

#include <stdexcept>
#include <string>

namespace ccqaoa {

// Exception hierarchy. The CLI maps these onto process exit codes.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Bad argument, malformed input file or violated precondition (exit code 2).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

// Instance too large for exhaustive enumeration or dense simulation (exit code 3).
class SizeLimitError : public Error {
public:
  using Error::Error;
};

// Operation requested outside the validity range of a closed form,
// e.g. the depth-1 formula on a non-uniform coupling model (exit code 2).
class ScopeError : public Error {
public:
  using Error::Error;
};

// An internal cross-check failed (exit code 4).
class ConsistencyError : public Error {
public:
  using Error::Error;
};

namespace detail {

inline void require(bool condition, const std::string &message) {
  if (!condition)
    throw InvalidArgument(message);
}

} // namespace detail

} // namespace ccqaoa
