#pragma once

#include <stdexcept>
#include <string>

namespace tautjac {

// Base class for every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operator applied to (or compared on) weights outside its validity window.
class window_exceeded : public error {
 public:
  using error::error;
};

// Polynomial has a monomial of weight above the source cap of a relation ideal.
class cap_exceeded : public error {
 public:
  using error::error;
};

class invalid_genus : public error {
 public:
  using error::error;
};

class cap_too_small : public error {
 public:
  using error::error;
};

class not_nilpotent : public error {
 public:
  using error::error;
};

class verification_failure : public error {
 public:
  verification_failure(std::string what, std::string counterexample)
      : error(std::move(what)), counterexample_(std::move(counterexample)) {}
  const std::string& counterexample() const noexcept { return counterexample_; }

 private:
  std::string counterexample_;
};

}  // namespace tautjac
