#pragma once

#include <stdexcept>
#include <string>

namespace pqf {

// Failure classes surfaced by the engine.  Every throwing operation documents
// which of these it can raise; the CLI maps all of them to exit code 2.
enum class errc {
  variable_mismatch,
  zero_leading_term,
  unknown_order,
  ill_formed_composition,
  root_not_in_field,
  zero_order,
  precision_exhausted,
  parse_error,
  zero_derivative,
  non_coprime_degrees,
  higher_order_unsupported,
  slope_not_greater_than_one,
  not_irreducible,
  jordan_not_supported,
  not_an_orbit,
  even_p,
  eigenvalues_not_distinct,
  unsupported_extension,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace pqf
