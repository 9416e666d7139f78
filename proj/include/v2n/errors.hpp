#pragma once

#include <stdexcept>
#include <string>

namespace v2n {

/// Invalid or inconsistent configuration value.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed mobility trace.
class TraceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A metric that is undefined for the given input.
class MetricError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace v2n
