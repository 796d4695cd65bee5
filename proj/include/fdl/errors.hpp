#pragma once

#include <stdexcept>
#include <string>

namespace fdl {

/// Configuration problem attributable to a named field.
struct ConfigError : std::runtime_error {
    std::string field;
    ConfigError(std::string field_name, const std::string& message)
        : std::runtime_error(field_name + ": " + message), field(std::move(field_name)) {}
};

/// Training diverged (non-finite loss or gradients).
struct TrainingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace fdl
