#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ellhyp {

enum class Errc {
  degenerate_lattice,
  pole_at_lattice_point,
  pole_or_zero,
  invalid_configuration,
  invalid_alpha,
  clearance_violation,
  quadrature_failure,
  unknown_index,
  unknown_label,
  self_intersection_zero,
  composition_mismatch,
  in_deformation_window,
  epsilon_too_large,
  no_clear_loop_found,
  singular_matrix,
  parse_error,
};

constexpr std::string_view to_string(Errc e) {
  switch (e) {
    case Errc::degenerate_lattice: return "DegenerateLattice";
    case Errc::pole_at_lattice_point: return "PoleAtLatticePoint";
    case Errc::pole_or_zero: return "PoleOrZero";
    case Errc::invalid_configuration: return "InvalidConfiguration";
    case Errc::invalid_alpha: return "InvalidAlpha";
    case Errc::clearance_violation: return "ClearanceViolation";
    case Errc::quadrature_failure: return "QuadratureFailure";
    case Errc::unknown_index: return "UnknownIndex";
    case Errc::unknown_label: return "UnknownLabel";
    case Errc::self_intersection_zero: return "SelfIntersectionZero";
    case Errc::composition_mismatch: return "CompositionMismatch";
    case Errc::in_deformation_window: return "InDeformationWindow";
    case Errc::epsilon_too_large: return "EpsilonTooLarge";
    case Errc::no_clear_loop_found: return "NoClearLoopFound";
    case Errc::singular_matrix: return "SingularMatrix";
    case Errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace ellhyp
