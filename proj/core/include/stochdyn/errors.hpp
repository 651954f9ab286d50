#pragma once

#include <stdexcept>
#include <string>

namespace stochdyn {

// Exit-code buckets used by the CLI: validation failures map to 2,
// resource exhaustion (enumeration budgets, orbit bit caps) to 3.
enum class ErrorKind { Validation, Budget };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string type, const std::string& msg)
      : std::runtime_error(msg), kind_(kind), type_(std::move(type)) {}
  ErrorKind kind() const { return kind_; }
  const std::string& type() const { return type_; }

private:
  ErrorKind kind_;
  std::string type_;
};

#define STOCHDYN_ERROR(Name, Kind)                                            \
  class Name : public Error {                                                 \
  public:                                                                     \
    explicit Name(const std::string& msg)                                     \
        : Error(ErrorKind::Kind, #Name, msg) {}                               \
  }

STOCHDYN_ERROR(ZeroPointError, Validation);
STOCHDYN_ERROR(NonPositiveError, Validation);
STOCHDYN_ERROR(UndefinedAtZeroError, Validation);
STOCHDYN_ERROR(DegenerateMapError, Validation);
STOCHDYN_ERROR(InvalidSystemError, Validation);
STOCHDYN_ERROR(OnDivisorError, Validation);
STOCHDYN_ERROR(ZeroNumeratorError, Validation);
STOCHDYN_ERROR(OrbitDegenerateError, Validation);
STOCHDYN_ERROR(SingularDeltaError, Validation);
STOCHDYN_ERROR(BadCharacteristicError, Validation);
STOCHDYN_ERROR(WordExhaustedError, Validation);
STOCHDYN_ERROR(BudgetExceededError, Budget);
STOCHDYN_ERROR(IterationCapError, Budget);

#undef STOCHDYN_ERROR

} // namespace stochdyn
