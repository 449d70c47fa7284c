#pragma once

#include <optional>

#include "bellhom/common.hpp"
#include "bellhom/states.hpp"

namespace bellhom {

/// Imperfection triple shared by both arms of the setup: combined losses
/// eta_tilde = eta T, mode matching xi, and zero-dark-count probability p_D.
struct SetupParams {
  double eta_tilde = 1.0;
  double xi = 1.0;
  double p_dark = 1.0;

  SetupParams(double eta_tilde, double xi, double p_dark);
};

enum class Arm { A, B };

/// The Clauser-Horne quadruple of displacement settings; for TMSV runs the
/// squeezing is carried alongside.  Canonical gauge: Im(a1) = 0.
struct DisplacementSettings {
  Amplitude a1{0.0, 0.0};
  Amplitude a2{0.0, 0.0};
  Amplitude b1{0.0, 0.0};
  Amplitude b2{0.0, 0.0};
  std::optional<double> r;
};

/// Outcome of a CH maximization.  `value` is the maximal violation in the
/// convention where any positive value certifies nonlocality: it equals the
/// raw combination CH when `relabeled` is false and -1-CH otherwise (the CH
/// facet reached by flipping the click/no-click assignment on one arm).
struct CHResult {
  double value = 0.0;
  DisplacementSettings settings;
  bool converged = false;
  int restarts_used = 0;
  bool relabeled = false;
  bool complex_settings = false;  // any |Im| component above 1e-3
};

/// Probability of a joint photon-silence (zero-count) event at s = -1:
/// (pi p_D/eta_tilde)^2 W_AB(a, b; -(2-eta_tilde)/eta_tilde) times the
/// mismatch envelope over both arms.
double q_joint(const StateKind& state, const Amplitude& alpha,
               const Amplitude& beta, const SetupParams& p);

/// Single-arm photon-silence probability.
double q_marginal(const StateKind& state, const Amplitude& alpha,
                  const SetupParams& p, Arm arm = Arm::A);

/// Clauser-Horne combination
///   Q(a1,b1) + Q(a1,b2) + Q(a2,b1) - Q(a2,b2) - Q(a1) - Q(b1);
/// local-realistic theories keep it in [-1, 0].  For TMSV, settings.r (when
/// set) overrides the state's squeezing.
double ch_combination(const StateKind& state, const DisplacementSettings& d,
                      const SetupParams& p);

/// Wigner representation of the no-click observable,
///   rho(alpha; lambda) = 2 p_D/(2-eta_tilde)
///     exp(-2 eta_tilde/(2-eta_tilde) |lambda-alpha|^2
///         - eta_tilde (1-xi)/xi |alpha|^2).
/// Its maximum over lambda exceeds 1 for good parameters (2 in the perfect
/// case), which is why the positive Wigner function of the TMSV state does
/// not yield a local hidden variable model for these events.
double lhv_kernel(const Amplitude& alpha, const Amplitude& lambda,
                  const SetupParams& p);

}  // namespace bellhom
