#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bpetrim {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Unreadable or unwritable stream / file.
class IoError : public Error {
 public:
  using Error::Error;
};

// An operation that needs at least one sentence / word was given none.
class EmptyCorpusError : public Error {
 public:
  using Error::Error;
};

// Tables built under different pre-tokenization configs cannot be combined.
class ConfigMismatchError : public Error {
 public:
  using Error::Error;
};

// target_size smaller than the alphabet, or otherwise unsatisfiable.
class InvalidSizeError : public Error {
 public:
  using Error::Error;
};

// Caller passed a structurally invalid argument (empty list, bad range).
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// Two artifacts that must describe the same model disagree
// (counts missing a vocabulary token, manifest naming a foreign token, ...).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// Malformed model file. `line` is 1-based; 0 means "not line-addressable".
class ParseError : public Error {
 public:
  enum class Kind {
    kUnknownHeader,
    kMalformedLine,
    kUndefinedToken,
    kDuplicateToken,
  };

  ParseError(Kind kind, const std::string& what, std::size_t line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        kind_(kind),
        line_(line) {}

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

}  // namespace bpetrim
