#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace egyptsum {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed literal or config fragment.
class ParseError : public Error {
 public:
  using Error::Error;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

/// A generating set was given 0 as an element.
class ZeroElement : public InvalidSpec {
 public:
  ZeroElement() : InvalidSpec("generating sets must not contain 0") {}
};

class GroupMismatch : public Error {
 public:
  using Error::Error;
};

/// The group or set lacks a capability the operation needs
/// (metric, archimedean bound, decidable membership, ...).
class UnsupportedCapability : public Error {
 public:
  using Error::Error;
};

class SpecArityError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Work estimate for a search exceeded the configured cap.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t estimate, std::uint64_t budget)
      : Error("work estimate " + std::to_string(estimate) + " exceeds budget " +
              std::to_string(budget)),
        estimate_(estimate),
        budget_(budget) {}

  std::uint64_t estimate() const noexcept { return estimate_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t estimate_;
  std::uint64_t budget_;
};

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

}  // namespace egyptsum
