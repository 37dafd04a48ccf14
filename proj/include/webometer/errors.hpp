#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "webometer/date.hpp"

namespace webometer {

// Base for every failure raised by the toolkit. `kind()` is the stable,
// machine-readable label used in JSON error bodies and CLI messages.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& what)
        : Error("config", "invalid configuration field '" + field + "': " + what),
          field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class QueryError : public Error {
public:
    explicit QueryError(const std::string& what) : Error("query", what) {}
};

class RangeError : public Error {
public:
    explicit RangeError(const std::string& what) : Error("range", what) {}
};

class QuotaError : public Error {
public:
    QuotaError(Date reset, const std::string& what) : Error("quota", what), reset_(reset) {}

    Date reset_date() const noexcept { return reset_; }
    std::size_t remaining() const noexcept { return 0; }

private:
    Date reset_;
};

class BackendUnavailable : public Error {
public:
    BackendUnavailable(const std::string& what, bool retryable)
        : Error("backend-unavailable", what), retryable_(retryable) {}

    bool retryable() const noexcept { return retryable_; }

private:
    bool retryable_;
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error("parse", what) {}
};

class InsufficientData : public Error {
public:
    explicit InsufficientData(const std::string& what) : Error("insufficient-data", what) {}
};

class UndefinedCorrelation : public Error {
public:
    explicit UndefinedCorrelation(const std::string& what)
        : Error("undefined-correlation", what) {}
};

class LoadError : public Error {
public:
    LoadError(std::size_t line, const std::string& what)
        : Error("load", line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class StoreError : public Error {
public:
    explicit StoreError(const std::string& what) : Error("store", what) {}
};

}  // namespace webometer
