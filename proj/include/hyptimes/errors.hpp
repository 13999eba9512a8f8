#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace hyptimes {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

class EmptyTimeSet : public Error {
public:
    using Error::Error;
};

class EmptyMeasure : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class IndexError : public Error {
public:
    using Error::Error;
};

class UnknownSystem : public Error {
public:
    using Error::Error;
};

class UnsupportedSystem : public Error {
public:
    using Error::Error;
};

class IncompleteInput : public Error {
public:
    using Error::Error;
};

class NoHyperbolicTime : public Error {
public:
    using Error::Error;
};

/// Configuration problem; `path()` names the offending field (e.g. "system.params.epsilon").
class ConfigError : public Error {
public:
    ConfigError(std::string path, const std::string& what)
        : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

} // namespace hyptimes
