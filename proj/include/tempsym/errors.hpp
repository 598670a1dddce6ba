#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tempsym {

// Base of every domain error raised by the library. Logic errors (broken
// invariants inside the library) are reported as std::logic_error instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Invalid arguments: out-of-range vertices or times, bad generator parameters.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A walk could not be completed before the last time step of the graph.
class LifetimeExhausted : public Error {
 public:
  using Error::Error;
};

// Oracle or enumeration refused an input above its configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Sampled automorphism search did not reach the counting bound.
class GuaranteeUnmet : public Error {
 public:
  using Error::Error;
};

}  // namespace tempsym
