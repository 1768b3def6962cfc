#pragma once

#include <stdexcept>
#include <string>

namespace coldamp {

/// A physical precondition was violated (zero frequency, negative temperature, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The linear network could not be solved at the requested frequency.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double omega, double condition)
        : std::runtime_error(what), omega_(omega), condition_(condition) {}

    double omega() const noexcept { return omega_; }
    double condition() const noexcept { return condition_; }

private:
    double omega_;
    double condition_;
};

/// Malformed or incomplete parameter file. `line` is 0 when the problem is not tied to a line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, std::string key, int line)
        : std::runtime_error(what), key_(std::move(key)), line_(line) {}

    const std::string& key() const noexcept { return key_; }
    int line() const noexcept { return line_; }

private:
    std::string key_;
    int line_;
};

} // namespace coldamp
