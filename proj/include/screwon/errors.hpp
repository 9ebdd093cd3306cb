#pragma once

#include <stdexcept>
#include <string>

namespace screwon {

/// Invalid parameter or argument outside the mathematical domain of an
/// operation (rejected before any computation starts).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A computation started but could not be completed to the requested
/// accuracy (step-size underflow, unconverged boundary, missing bracket).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Requested energy lies below the minimum of the effective potential,
/// so no classically allowed window exists.
class ClassicallyForbiddenError : public DomainError {
 public:
  ClassicallyForbiddenError(const std::string& what, double potential_minimum)
      : DomainError(what), potential_minimum_(potential_minimum) {}
  double potential_minimum() const { return potential_minimum_; }

 private:
  double potential_minimum_ = 0.0;
};

/// Text input rejected by a parser; carries the byte offset of the error.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_ = 0;
};

}  // namespace screwon
