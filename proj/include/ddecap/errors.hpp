#pragma once

#include <stdexcept>
#include <string>

namespace ddecap {

// Interval core
struct DivisionByZeroInterval : std::domain_error {
  using std::domain_error::domain_error;
};
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};
struct OverflowError : std::overflow_error {
  using std::overflow_error::overflow_error;
};

// Jets, grids and the stepper
struct PositivityLost : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OutOfValidity : std::out_of_range {
  using std::out_of_range::out_of_range;
};
struct OutOfDomain : std::out_of_range {
  using std::out_of_range::out_of_range;
};
struct OrderTooLow : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct EnclosureFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BranchCheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Proof engine. Each carries the name of the failed step so the CLI can
// report it verbatim.
struct ProofFailure : std::runtime_error {
  ProofFailure(std::string condition, const std::string& detail)
      : std::runtime_error(condition + ": " + detail), condition_(std::move(condition)), detail_(detail) {}
  const std::string& condition() const noexcept { return condition_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string condition_;
  std::string detail_;
};

struct LedgerInfeasible : std::runtime_error {
  LedgerInfeasible(std::string constant, const std::string& detail)
      : std::runtime_error(constant + ": " + detail), constant_(std::move(constant)) {}
  const std::string& constant() const noexcept { return constant_; }

 private:
  std::string constant_;
};

struct EpsilonVanishes : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ddecap
