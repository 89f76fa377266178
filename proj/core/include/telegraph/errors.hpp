#pragma once

#include <stdexcept>
#include <string>

namespace telegraph {

/// Thrown when a model or distribution parameter violates its constraints.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// Thrown when a function is evaluated outside the set where it is defined.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace telegraph
