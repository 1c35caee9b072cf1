#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace freeembed {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input value: overlapping or non-covering blocks, unsorted ground
/// sets, bad literals.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input outside an operation's domain (ground-set mismatch,
/// crossing partition where a non-crossing one is required, odd cardinality).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or symbolic sum would exceed the configured size cap.
class SizeLimitError : public Error {
 public:
  SizeLimitError(const std::string& what_limit, std::size_t requested, std::size_t cap)
      : Error(what_limit + ": size " + std::to_string(requested) + " exceeds cap " +
              std::to_string(cap) + " (override with FREEEMBED_MAX_K)"),
        requested_(requested),
        cap_(cap) {}

  std::size_t requested() const noexcept { return requested_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t requested_;
  std::size_t cap_;
};

/// A block mixes positions from different families where only single-family
/// blocks can be evaluated.
class UnsupportedMixedBlock : public Error {
 public:
  using Error::Error;
};

/// A structural claim the algorithms rely on was observed to fail.
class StructureError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent simulation or CLI configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure inside a Monte Carlo replicate.
class SimulationError : public Error {
 public:
  SimulationError(const std::string& msg, std::size_t replicate)
      : Error(msg + " (replicate " + std::to_string(replicate) + ")"), replicate_(replicate) {}

  std::size_t replicate() const noexcept { return replicate_; }

 private:
  std::size_t replicate_;
};

}  // namespace freeembed
