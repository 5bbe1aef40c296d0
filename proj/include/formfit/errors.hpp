#pragma once

#include <stdexcept>
#include <string>

namespace formfit {

/// Malformed documents or out-of-contract data passed to an operation.
class InvalidInputError : public std::runtime_error {
public:
    explicit InvalidInputError(const std::string& what) : std::runtime_error(what) {}
};

/// Unsatisfiable or ill-formed run configuration.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// No formation template is available for the requested outfielder count.
class NoTemplateError : public ConfigError {
public:
    explicit NoTemplateError(const std::string& what) : ConfigError(what) {}
};

}  // namespace formfit
