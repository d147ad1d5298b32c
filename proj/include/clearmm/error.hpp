#pragma once

#include <stdexcept>
#include <string>

namespace clearmm {

enum class ErrorCode {
  invalid_input,
  inconsistent,
  invalid_state,
  invalid_configuration,
  resource_exhausted,
  not_found,
};

const char* to_string(ErrorCode code) noexcept;

// Every engine failure is reported as an Error carrying a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace clearmm
