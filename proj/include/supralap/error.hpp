#pragma once

#include <stdexcept>
#include <string>

namespace supralap {

enum class ErrorCode {
  invalid_argument,
  not_symmetric,
  no_convergence,
  dimension_mismatch,
  bad_dimension,
  index_out_of_range,
  zero_degree,
  disconnected,
  degenerate_lift,
  bad_length,
  generation_failed,
  infeasible_calibration,
  parse_error,
  io_error,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace supralap
