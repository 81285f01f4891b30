#pragma once

#include <stdexcept>
#include <string>

namespace torcor {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed external input (JSON, CLI arguments). CLI exit code 1.
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

// An operation was called outside its domain. CLI exit code 2.
struct PreconditionError : Error {
    explicit PreconditionError(const std::string& what) : Error(what) {}
};

// An internal iteration or size cap was hit. CLI exit code 3.
struct CapError : Error {
    explicit CapError(const std::string& what) : Error(what) {}
};

}  // namespace torcor
