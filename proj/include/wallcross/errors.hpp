#pragma once

#include <stdexcept>
#include <string>

namespace wallcross {

// Malformed or inconsistent configuration (bad model, unknown field, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A quantity requested outside the set where it is defined (mu at beta = 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller violated an operation precondition (invalid class, failed dominance, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An invariant table lacks an entry the computation needs.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wallcross
