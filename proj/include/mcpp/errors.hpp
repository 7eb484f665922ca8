#pragma once

#include <stdexcept>
#include <string>

namespace mcpp {

/// Base of every error raised by the planner.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the operation's domain (bad coordinates,
/// malformed polygon, out-of-range parameter, arity mismatch).
class InputDomainError : public Error {
public:
  using Error::Error;
};

/// The ROI cannot be discretized into at least one free node.
class InfeasibleDiscretization : public Error {
public:
  using Error::Error;
};

/// The free space cannot be divided among the UAVs.
class InfeasiblePartition : public Error {
public:
  using Error::Error;
};

/// Two UAVs snapped onto the same node, or similar fleet inconsistencies.
class FleetConfigurationError : public InputDomainError {
public:
  using InputDomainError::InputDomainError;
};

/// An upstream guarantee was broken (e.g. a disconnected region reached STC).
class ContractViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace mcpp
