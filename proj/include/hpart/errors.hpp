#pragma once

#include <stdexcept>
#include <string>

namespace hpart {

/// Malformed graph, model or program text. `line()` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A caller broke an operation's precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Out-of-range numeric arguments to generators and experiments.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested analysis has no meaning for this input (e.g. stratifying a choice rule).
class NotApplicable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hpart

#if !defined(NDEBUG) || defined(HPART_CHECK_INVARIANTS)
#define HPART_INVARIANTS_ENABLED 1
#define HPART_INVARIANT(cond, msg)                     \
  do {                                                 \
    if (!(cond)) throw ::hpart::ContractViolation(msg); \
  } while (false)
#else
#define HPART_INVARIANTS_ENABLED 0
#define HPART_INVARIANT(cond, msg) \
  do {                             \
  } while (false)
#endif
