#pragma once

#include <stdexcept>
#include <string>

namespace qtc {

enum class errc {
  invalid_argument,
  parse,
  modulus_mismatch,
  zero_polynomial,
  zero_inverse,
  zero_coefficient,
  dimension_mismatch,
  empty_ideal,
  not_finite_quotient,
  no_logicals,
  degenerate_input,
  io,
  interrupted,
  internal,
};

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace qtc
