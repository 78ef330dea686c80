#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace legotag {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad argument or violated precondition.
struct ArgumentError : Error {
  using Error::Error;
};

// Malformed corpus or vocabulary text; line numbers are 1-based.
struct ParseError : Error {
  std::size_t line;
  ParseError(const std::string& msg, std::size_t line_no)
      : Error(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};

struct TrainError : Error {
  using Error::Error;
};

// Model file carries an unsupported version tag.
struct VersionError : Error {
  using Error::Error;
};

// Model file is truncated or internally inconsistent.
struct IntegrityError : Error {
  using Error::Error;
};

// A lattice column admits no state; positions are 1-based token indices.
struct DecodeError : Error {
  std::size_t position;
  DecodeError(const std::string& msg, std::size_t pos)
      : Error(msg + " (token " + std::to_string(pos) + ")"), position(pos) {}
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace legotag
