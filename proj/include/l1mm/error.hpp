#pragma once

#include <stdexcept>
#include <string>

namespace l1mm {

// Vectors of different lengths were combined.
class DimensionError : public std::invalid_argument {
  public:
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// A parameter lies outside the domain where the quantity is defined.
class DomainError : public std::domain_error {
  public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Inconsistent configuration (e.g. a threshold built for a different n).
class ConfigError : public std::invalid_argument {
  public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed user input: files, grids, command-line values.
class InputError : public std::runtime_error {
  public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace l1mm
