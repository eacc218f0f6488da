#pragma once

#include <stdexcept>
#include <string>

namespace spatialgraph {

// Malformed or rejected input (odd degree sum, bad spec string, unreadable file).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The target demands an edge length the reference law says is impossible.
class SupportMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spatialgraph
