#include "cbal/errors.hpp"

namespace cbal {

error_category category(errc code) {
  switch (code) {
    case errc::file_not_found:
    case errc::malformed_csv:
    case errc::unknown_column:
    case errc::self_flow:
    case errc::negative_flow:
    case errc::bad_aggregation:
    case errc::group_code_collision:
    case errc::exports_exceed_gdp:
    case errc::missing_gdp:
      return error_category::ingestion;
    case errc::unknown_country:
    case errc::same_country:
    case errc::bad_argument:
      return error_category::argument;
    case errc::matrix_too_small:
    case errc::singular_system:
    case errc::no_convergence:
    case errc::degenerate_denominator:
    case errc::zero_base_entry:
    case errc::step_too_large:
      return error_category::numerical;
    case errc::verification_failed:
      return error_category::verification;
  }
  return error_category::numerical;  // unreachable
}

const char* errc_name(errc code) {
  switch (code) {
    case errc::file_not_found: return "file_not_found";
    case errc::malformed_csv: return "malformed_csv";
    case errc::unknown_column: return "unknown_column";
    case errc::self_flow: return "self_flow";
    case errc::negative_flow: return "negative_flow";
    case errc::bad_aggregation: return "bad_aggregation";
    case errc::group_code_collision: return "group_code_collision";
    case errc::exports_exceed_gdp: return "exports_exceed_gdp";
    case errc::missing_gdp: return "missing_gdp";
    case errc::unknown_country: return "unknown_country";
    case errc::same_country: return "same_country";
    case errc::bad_argument: return "bad_argument";
    case errc::matrix_too_small: return "matrix_too_small";
    case errc::singular_system: return "singular_system";
    case errc::no_convergence: return "no_convergence";
    case errc::degenerate_denominator: return "degenerate_denominator";
    case errc::zero_base_entry: return "zero_base_entry";
    case errc::step_too_large: return "step_too_large";
    case errc::verification_failed: return "verification_failed";
  }
  return "unknown";
}

}  // namespace cbal
