#pragma once

#include <stdexcept>
#include <string>

namespace landau {

// Bad user input: grids, presets, config keys. Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the domain where an operation is defined.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A computation could not meet its accuracy or stability contract. Exit code 1.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace landau
