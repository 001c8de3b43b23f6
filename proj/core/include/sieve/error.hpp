#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sieve {

// Base for every error the pipeline raises. The CLI maps ConfigError to
// exit code 2 and everything else to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed JSON on a given line of a shard (line numbers are 1-based).
class ParseError : public Error {
public:
    ParseError(std::string source, std::size_t line, const std::string& what)
        : Error(source + ":" + std::to_string(line) + ": " + what),
          source_(std::move(source)),
          line_(line) {}

    const std::string& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string source_;
    std::size_t line_;
};

// Well-formed JSON that does not match the document/attribute schema.
class SchemaError : public Error {
public:
    using Error::Error;
};

// Binary or sidecar content that violates its on-disk format.
class FormatError : public Error {
public:
    using Error::Error;
};

// Invalid parameters passed to a constructor (e.g. Bloom sizing).
class ParameterError : public Error {
public:
    using Error::Error;
};

// Bad configuration: missing files, unknown names, dimension mismatches.
class ConfigError : public Error {
public:
    using Error::Error;
};

class TrainingError : public Error {
public:
    using Error::Error;
};

// Document shard and attribute sidecar disagree on ids or ordering.
class AlignmentError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace sieve
