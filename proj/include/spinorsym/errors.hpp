#pragma once

#include <stdexcept>
#include <string>

namespace spinorsym {

/// Division by zero and other undefined field operations.
class ArithmeticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A caller broke an operation's precondition (wrong variance, wrong slot kind, ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input outside the range where an operation is defined (e.g. no dimension formula).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A jet computation needed a derivative order beyond the context's max_order.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(int needed, int available)
      : std::runtime_error("jet order " + std::to_string(needed) +
                           " exceeds context max_order " + std::to_string(available) +
                           "; enlarge the JetContext (raise max order)"),
        needed_(needed),
        available_(available) {}

  int needed() const noexcept { return needed_; }
  int available() const noexcept { return available_; }

 private:
  int needed_;
  int available_;
};

}  // namespace spinorsym
