#pragma once

#include <stdexcept>
#include <string>

namespace evenlat {

// Malformed or invariant-violating input (CLI exit code 1).
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// A budget was exceeded or a hypothesis could not be verified (CLI exit code 2).
class Refusal : public std::runtime_error {
 public:
  explicit Refusal(const std::string& what) : std::runtime_error(what) {}
};

// A result failed a post-condition that the construction guarantees.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace evenlat
