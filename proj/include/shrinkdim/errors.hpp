// Named error types shared by every module. The code string is what the CLI
// reports in its structured error output.
#pragma once

#include <stdexcept>
#include <string>

namespace shrinkdim {

class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define SHRINKDIM_ERROR(Name)                                              \
  class Name : public Error {                                              \
   public:                                                                 \
    explicit Name(const std::string& message) : Error(#Name, message) {}   \
  };

SHRINKDIM_ERROR(CutoffTooSmall)
SHRINKDIM_ERROR(ExponentTooSmall)
SHRINKDIM_ERROR(NoRootInUnitInterval)
SHRINKDIM_ERROR(AmbiguousBranch)
SHRINKDIM_ERROR(DepthTooLarge)
SHRINKDIM_ERROR(PrecisionExhausted)
SHRINKDIM_ERROR(Inapplicable)
SHRINKDIM_ERROR(UndefinedForZeroTarget)
SHRINKDIM_ERROR(NoRoot)
SHRINKDIM_ERROR(BudgetExceeded)
SHRINKDIM_ERROR(InvalidArgument)
SHRINKDIM_ERROR(ParameterViolation)

#undef SHRINKDIM_ERROR

}  // namespace shrinkdim
