#pragma once

#include <stdexcept>
#include <string>

namespace gapcert {

/// Input outside the mathematical domain of an operation (non-positive
/// magnitude, epsilon outside its interval, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A stated precondition of a lemma or operation does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured size cap (exact factorial, Sylvester index, search budget)
/// was exceeded.
class CapError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Interval arithmetic could not produce a representable enclosure at the
/// requested precision. Never thrown in place of a wrong answer.
class PrecisionExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gapcert
