#pragma once

#include <stdexcept>
#include <string>

namespace cbal {

/// Error codes raised by the library. Each code belongs to one category;
/// the CLI maps categories onto process exit codes (ingestion -> 2,
/// numerical -> 3, argument -> 4, verification -> 5).
enum class errc {
  // ingestion
  file_not_found,
  malformed_csv,
  unknown_column,
  self_flow,
  negative_flow,
  bad_aggregation,
  group_code_collision,
  exports_exceed_gdp,
  missing_gdp,
  // country arguments
  unknown_country,
  same_country,
  bad_argument,
  // numerical
  matrix_too_small,
  singular_system,
  no_convergence,
  degenerate_denominator,
  zero_base_entry,
  step_too_large,
  // verification
  verification_failed,
};

enum class error_category { ingestion, argument, numerical, verification };

error_category category(errc code);
const char* errc_name(errc code);

class error : public std::runtime_error {
public:
  error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  errc code() const { return code_; }
  error_category category() const { return cbal::category(code_); }

private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) {
  throw error(code, what);
}

}  // namespace cbal
