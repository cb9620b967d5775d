// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <stdexcept>
#include <string>

namespace textbench {

enum class ErrorCode {
  io,        // unreadable files, unwritable directories
  schema,    // malformed dataset files, missing columns
  config,    // unknown/invalid configuration keys or values
  contract,  // precondition violations (dimension mismatch, bad ranges)
  training,  // classifier-specific training failures
  metric,    // undefined metric (zero evaluated documents)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace textbench
