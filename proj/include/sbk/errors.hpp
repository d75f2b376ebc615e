#pragma once

#include <stdexcept>
#include <string>

namespace sbk {

/// Argument outside the mathematical domain of an evaluator.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// A multiplicity μ > 0 was combined with a point of dimension N > 1.
struct RankError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A series did not meet its stopping rule within the term cap.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A checked invariant (unitarity, det = 1, positivity) failed.
struct InvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Inconsistent combination of otherwise valid arguments.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace sbk
