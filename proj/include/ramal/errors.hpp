#pragma once

#include <stdexcept>
#include <string>

namespace ramal {

// Structured error kinds; every throwing operation names one of these so
// callers (and the CLI) can map failures to stable identifiers.
enum class errc {
  not_prime,
  order_mismatch,
  no_such_root,
  division_by_zero,
  too_large,
  roots_not_rational,
  not_a_subspace,
  verification_failed,
  theta_not_injective,
  precision_loss,
  not_normalized,
  type_mismatch,
  degenerate,
  subspace_mismatch,
  bad_residue,
  bad_order,
  non_unit_denominator,
  zero_series,
  not_linear,
  not_conjugate,
  equivariance_failed,
  roundtrip_failed,
  hypothesis_violated,
  inconsistent,
  incomplete_descriptor,
  bad_genus,
  non_integral_genus,
  usage,
};

inline const char* errc_name(errc k) {
  switch (k) {
    case errc::not_prime: return "NotPrime";
    case errc::order_mismatch: return "OrderMismatch";
    case errc::no_such_root: return "NoSuchRoot";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::too_large: return "TooLarge";
    case errc::roots_not_rational: return "RootsNotRational";
    case errc::not_a_subspace: return "NotASubspace";
    case errc::verification_failed: return "VerificationFailed";
    case errc::theta_not_injective: return "ThetaNotInjective";
    case errc::precision_loss: return "PrecisionLoss";
    case errc::not_normalized: return "NotNormalized";
    case errc::type_mismatch: return "TypeMismatch";
    case errc::degenerate: return "Degenerate";
    case errc::subspace_mismatch: return "SubspaceMismatch";
    case errc::bad_residue: return "BadResidue";
    case errc::bad_order: return "BadOrder";
    case errc::non_unit_denominator: return "NonUnitDenominator";
    case errc::zero_series: return "ZeroSeries";
    case errc::not_linear: return "NotLinear";
    case errc::not_conjugate: return "NotConjugate";
    case errc::equivariance_failed: return "EquivarianceFailed";
    case errc::roundtrip_failed: return "RoundtripFailed";
    case errc::hypothesis_violated: return "HypothesisViolated";
    case errc::inconsistent: return "Inconsistent";
    case errc::incomplete_descriptor: return "IncompleteDescriptor";
    case errc::bad_genus: return "BadGenus";
    case errc::non_integral_genus: return "NonIntegralGenus";
    case errc::usage: return "UsageError";
  }
  return "Unknown";
}

class error : public std::runtime_error {
 public:
  error(errc kind, const std::string& what)
      : std::runtime_error(std::string(errc_name(kind)) + ": " + what), kind_(kind) {}
  errc kind() const { return kind_; }

 private:
  errc kind_;
};

[[noreturn]] inline void fail(errc kind, const std::string& what) { throw error(kind, what); }

inline void expect(bool cond, errc kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace ramal
