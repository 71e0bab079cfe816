#pragma once

#include <stdexcept>
#include <string>

namespace multirank {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration would exceed its gate. Carries the offending log2 size.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, double log2_size, double log2_limit)
      : Error(what + ": enumeration of 2^" + fmt(log2_size) + " exceeds gate 2^" + fmt(log2_limit)),
        log2_size_(log2_size),
        log2_limit_(log2_limit) {}

  double log2_size() const { return log2_size_; }
  double log2_limit() const { return log2_limit_; }

 private:
  static std::string fmt(double v) {
    std::string s = std::to_string(v);
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  }
  double log2_size_;
  double log2_limit_;
};

/// Malformed user input (files, flags).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition does not hold (non-prime p, char <= d, mismatched fields...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace multirank
