#pragma once

#include <stdexcept>
#include <string>

namespace dresslat {

// Raised when inputs are well formed but physically meaningless
// (no confinement, degenerate channels, invalid quantum numbers, ...).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised for malformed run configurations and preset files.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dresslat
