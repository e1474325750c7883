#pragma once

#include <stdexcept>
#include <string>

namespace entroflow {

/// Raised when an input violates a model precondition (bad distribution,
/// non-stochastic matrix, malformed netlist or scenario, ...).
class validation_error : public std::runtime_error {
public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a file cannot be read or written.
class io_error : public std::runtime_error {
public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace entroflow
