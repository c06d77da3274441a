#pragma once

#include <stdexcept>
#include <string>

namespace dsrkit {

// Failure while reading a line-oriented input (Touchstone, CSV, config).
// Carries the 1-based line number of the offending line; the what() string
// already includes it.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

// A sweep does not bracket the passband well enough for response metrics to
// be meaningful (e.g. no 3-dB crossings inside the grid).
class MetricsError : public std::runtime_error {
 public:
  explicit MetricsError(const std::string& message)
      : std::runtime_error(message) {}
};

}  // namespace dsrkit
