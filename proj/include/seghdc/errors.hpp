#pragma once

#include <stdexcept>
#include <string>

namespace seghdc {

// Invalid configuration or argument combination (CLI exit code 1).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// File or stream failure (CLI exit code 2).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace seghdc
