#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace twc {

// Base for every error this library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A gzip member could not be inflated. The rest of the archive is abandoned.
class MalformedGzipMember : public Error {
 public:
  MalformedGzipMember(std::uint64_t offset, const std::string& what)
      : Error("malformed gzip member at offset " + std::to_string(offset) + ": " + what),
        offset_(offset) {}
  std::uint64_t offset() const { return offset_; }

 private:
  std::uint64_t offset_;
};

class MalformedLine : public Error {
 public:
  MalformedLine(std::size_t line_number, const std::string& what)
      : Error("line " + std::to_string(line_number) + ": " + what), line_number_(line_number) {}
  std::size_t line_number() const { return line_number_; }

 private:
  std::size_t line_number_;
};

class SinkWriteFailure : public Error {
 public:
  using Error::Error;
};

class ConfigInvalid : public Error {
 public:
  using Error::Error;
};

class ScorerUnavailable : public ConfigInvalid {
 public:
  using ConfigInvalid::ConfigInvalid;
};

class UnparsableResponse : public Error {
 public:
  using Error::Error;
};

class DegenerateVariance : public Error {
 public:
  using Error::Error;
};

class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

}  // namespace twc
