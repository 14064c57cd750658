#pragma once

#include <stdexcept>
#include <string>

namespace workbench {

enum class errc {
  non_unit_division,
  precision_underflow,
  negative_valuation,
  insufficient_precision,
  precision_loss,
  precision_exhausted,
  context_mismatch,
  not_an_automorphism,
  unsupported_order,
  cocycle_violation,
  radical_algorithm_unavailable,
  lift_diverged,
  split_failure,
  incomplete_catalog,
  not_primitive,
  inconclusive,
  not_a_module,
  square_violation,
  not_p_group,
  certificate_missing,
  p_divides_h,
  membership_failure,
  exactness_violation,
  resolution_depth_exceeded,
  bad_input,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::non_unit_division: return "NonUnitDivision";
    case errc::precision_underflow: return "PrecisionUnderflow";
    case errc::negative_valuation: return "NegativeValuation";
    case errc::insufficient_precision: return "InsufficientPrecision";
    case errc::precision_loss: return "PrecisionLoss";
    case errc::precision_exhausted: return "PrecisionExhausted";
    case errc::context_mismatch: return "ContextMismatch";
    case errc::not_an_automorphism: return "NotAnAutomorphism";
    case errc::unsupported_order: return "UnsupportedOrder";
    case errc::cocycle_violation: return "CocycleViolation";
    case errc::radical_algorithm_unavailable: return "RadicalAlgorithmUnavailable";
    case errc::lift_diverged: return "LiftDiverged";
    case errc::split_failure: return "SplitFailure";
    case errc::incomplete_catalog: return "IncompleteCatalog";
    case errc::not_primitive: return "NotPrimitive";
    case errc::inconclusive: return "Inconclusive";
    case errc::not_a_module: return "NotAModule";
    case errc::square_violation: return "SquareViolation";
    case errc::not_p_group: return "NotPGroup";
    case errc::certificate_missing: return "CertificateMissing";
    case errc::p_divides_h: return "PDividesH";
    case errc::membership_failure: return "MembershipFailure";
    case errc::exactness_violation: return "ExactnessViolation";
    case errc::resolution_depth_exceeded: return "ResolutionDepthExceeded";
    case errc::bad_input: return "BadInput";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
  if (!cond) raise(code, what);
}

}  // namespace workbench
