#pragma once

#include <stdexcept>
#include <string>

namespace naesat {

enum class errc {
  malformed_header,
  variable_out_of_range,
  tautological_clause,
  empty_clause,
  empty_instance,
  infeasible_parameters,
  unit_clause_present,
  too_large,
  singular_system,
  degree_too_high,
  residual_too_long,
  infeasible_t,
  eta_out_of_range,
  strategy_misuse,
  precondition_violated,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw Error(code, message);
}

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::malformed_header: return "MalformedHeader";
    case errc::variable_out_of_range: return "VariableOutOfRange";
    case errc::tautological_clause: return "TautologicalClause";
    case errc::empty_clause: return "EmptyClause";
    case errc::empty_instance: return "EmptyInstance";
    case errc::infeasible_parameters: return "InfeasibleParameters";
    case errc::unit_clause_present: return "UnitClausePresent";
    case errc::too_large: return "TooLarge";
    case errc::singular_system: return "SingularSystem";
    case errc::degree_too_high: return "DegreeTooHigh";
    case errc::residual_too_long: return "ResidualTooLong";
    case errc::infeasible_t: return "InfeasibleT";
    case errc::eta_out_of_range: return "EtaOutOfRange";
    case errc::strategy_misuse: return "StrategyMisuse";
    case errc::precondition_violated: return "PreconditionViolated";
  }
  return "UnknownError";
}

}  // namespace naesat
