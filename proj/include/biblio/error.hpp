#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace biblio {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input data (ranking CSV, corpus fixture, exported files).
class DataError : public Error {
public:
    using Error::Error;
};

struct LineError {
    std::size_t line = 0;  // 1-based
    std::string message;
};

/// Ranking CSV rejected; carries every offending line, not just the first.
class ParseError : public DataError {
public:
    ParseError(std::string path, std::vector<LineError> lines)
        : DataError(format(path, lines)), path_(std::move(path)), lines_(std::move(lines)) {}

    const std::string& path() const noexcept { return path_; }
    const std::vector<LineError>& lines() const noexcept { return lines_; }

private:
    static std::string format(const std::string& path, const std::vector<LineError>& lines) {
        std::string out = path + ": " + std::to_string(lines.size()) + " invalid line(s)";
        for (const auto& l : lines) {
            out += "\n  line " + std::to_string(l.line) + ": " + l.message;
        }
        return out;
    }

    std::string path_;
    std::vector<LineError> lines_;
};

/// Corpus record violating the fixture schema; index is 0-based over non-blank lines.
class SchemaError : public DataError {
public:
    SchemaError(std::size_t index, const std::string& message)
        : DataError("record " + std::to_string(index) + ": " + message), index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Violated operation precondition (inverted window, unknown node, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

enum class TransportErrorKind {
    Network,      // connection refused, DNS, timeout
    HttpStatus,   // non-success status other than 429
    RateLimited,  // HTTP 429 after backoff exhausted
    AuthWall,     // portal served a login page instead of results
};

inline const char* to_string(TransportErrorKind kind) noexcept {
    switch (kind) {
    case TransportErrorKind::Network: return "network";
    case TransportErrorKind::HttpStatus: return "http-status";
    case TransportErrorKind::RateLimited: return "rate-limited";
    case TransportErrorKind::AuthWall: return "auth-wall";
    }
    return "unknown";
}

class TransportError : public Error {
public:
    TransportError(TransportErrorKind kind, const std::string& message, int status = 0)
        : Error(std::string(to_string(kind)) + ": " + message), kind_(kind), status_(status) {}

    TransportErrorKind kind() const noexcept { return kind_; }
    int status() const noexcept { return status_; }

    /// Auth walls cannot be fixed by retrying; the run must stop.
    bool unrecoverable() const noexcept { return kind_ == TransportErrorKind::AuthWall; }

private:
    TransportErrorKind kind_;
    int status_;
};

}  // namespace biblio
