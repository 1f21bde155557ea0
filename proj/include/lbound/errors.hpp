#pragma once

#include <stdexcept>

namespace lbound {

/// Malformed or out-of-contract argument (composite modulus, M > N, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Work or memory budget exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A formula's stated hypotheses do not hold for these inputs.
class ValidityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The inputs fall in the other branch of a case split.
class CaseError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Argument outside an operation's interval (sigma outside a PL strip).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A theorem's structural hypothesis fails (alpha < beta in a PL strip).
class HypothesisError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace lbound
