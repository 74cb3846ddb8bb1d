#pragma once

#include <stdexcept>
#include <string>

namespace burst {

// Bad caller input: violated preconditions, malformed requests, unusable data.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// The model's math is undefined for these parameters (e.g. a scaling
// exponent in [-1, 0), where the coupled cost integral diverges).
class ModelDomainError : public std::domain_error {
 public:
  explicit ModelDomainError(const std::string& what) : std::domain_error(what) {}
};

// Filesystem or parse failure on an external file.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace burst
