#pragma once

#include <stdexcept>
#include <string>

namespace oneshot {

// Invalid user input: bad indices, malformed configs, inconsistent shapes.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A size guard refused to run an exhaustive computation. Guards are explicit:
// nothing silently falls back to sampling.
class GuardError : public std::runtime_error {
 public:
  explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

// A gated numerical check (inequality suite) failed.
class CheckError : public std::runtime_error {
 public:
  explicit CheckError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace oneshot
