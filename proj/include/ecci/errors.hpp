#pragma once

#include <stdexcept>
#include <string>

namespace ecci {

// Bad user-supplied parameters (pattern names, block counts, shape mismatches).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed external input (PBM/PGM payloads, graph files, CSV).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Degenerate calibration input (all-zero clean signal, non-positive powers).
struct CalibrationError : std::runtime_error {
    explicit CalibrationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ecci
