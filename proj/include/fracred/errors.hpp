#pragma once

#include <stdexcept>
#include <string>

namespace fracred {

enum class ErrorCode {
  length_mismatch,
  nonpositive_parameter,
  index_out_of_range,
  singular_system,
  pole_hit,
  antiresonance,
  degenerate_argument,
  no_convergence,
  partition_mismatch,
  grid_mismatch,
  step_too_large,
  rank_deficient,
  unbounded_response,
  ill_conditioned_fit,
  validation,
  parse,
  io,
  domain,
};

/// Exception carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

const char* error_code_name(ErrorCode code);

}  // namespace fracred
