#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace isoconst {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke a documented precondition (dimension mismatch, bad config).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// Non-finite input where a finite real is required.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Zero vector passed where a direction is required.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at byte " + std::to_string(position) + ")"), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// A structurally valid document violates a space invariant. `rule` names it.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& rule) : Error(rule), rule_(rule) {}
  const std::string& rule() const noexcept { return rule_; }

 private:
  std::string rule_;
};

// Every start / grid node of an objective evaluated to a non-finite value.
class DegenerateObjective : public Error {
 public:
  using Error::Error;
};

// A direct-mode denominator collapsed below 1e-12 of its scale.
class NearDegenerate : public Error {
 public:
  using Error::Error;
};

class Infeasible : public Error {
 public:
  using Error::Error;
};

class NotAvailable : public Error {
 public:
  using Error::Error;
};

class CatalogError : public Error {
 public:
  using Error::Error;
};

}  // namespace isoconst
