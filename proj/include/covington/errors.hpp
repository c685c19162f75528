#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace covington {

// Malformed input text; carries the 1-based line number.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Well-formed text describing an invalid tree; carries the 1-based sentence number.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::size_t sentence, const std::string& message)
      : std::runtime_error("sentence " + std::to_string(sentence) + ": " + message),
        sentence_(sentence) {}
  std::size_t sentence() const noexcept { return sentence_; }

 private:
  std::size_t sentence_;
};

class IllegalTransition : public std::logic_error {
  using std::logic_error::logic_error;
};

class ModelFormatError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The exact-loss search refused or gave up on a configuration.
class SearchLimitError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace covington
