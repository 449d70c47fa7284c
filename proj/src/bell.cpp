#include "bellhom/bell.hpp"

#include <cmath>

#include "bellhom/detection.hpp"

namespace bellhom {

SetupParams::SetupParams(double eta, double xi_in, double pd)
    : eta_tilde(eta), xi(xi_in), p_dark(pd) {
  require(eta_tilde > 0.0 && eta_tilde <= 1.0, "eta_tilde must lie in (0, 1]");
  require(xi > 0.0 && xi <= 1.0, "xi must lie in (0, 1]");
  require(p_dark > 0.0 && p_dark <= 1.0, "p_dark must lie in (0, 1]");
}

namespace {

StateKind effective_state(const StateKind& state,
                          const DisplacementSettings& d) {
  if (state.is_tmsv() && d.r.has_value()) return StateKind::tmsv(*d.r);
  return state;
}

const OrderingParam kGeiger{-1.0};  // no-click / click encoding fixes s = -1

}  // namespace

double q_joint(const StateKind& state, const Amplitude& alpha,
               const Amplitude& beta, const SetupParams& p) {
  const double pref = M_PI * p.p_dark / p.eta_tilde;
  const double env = mismatch_envelope(alpha, p.eta_tilde, p.xi, kGeiger) *
                     mismatch_envelope(beta, p.eta_tilde, p.xi, kGeiger);
  return pref * pref * w_joint(state, alpha, beta, p.eta_tilde) * env;
}

double q_marginal(const StateKind& state, const Amplitude& alpha,
                  const SetupParams& p, Arm) {
  // Both arms share the same marginal for these symmetric states.
  const double pref = M_PI * p.p_dark / p.eta_tilde;
  return pref * w_marginal(state, alpha, p.eta_tilde) *
         mismatch_envelope(alpha, p.eta_tilde, p.xi, kGeiger);
}

double ch_combination(const StateKind& state, const DisplacementSettings& d,
                      const SetupParams& p) {
  const StateKind st = effective_state(state, d);
  return q_joint(st, d.a1, d.b1, p) + q_joint(st, d.a1, d.b2, p) +
         q_joint(st, d.a2, d.b1, p) - q_joint(st, d.a2, d.b2, p) -
         q_marginal(st, d.a1, p, Arm::A) - q_marginal(st, d.b1, p, Arm::B);
}

double lhv_kernel(const Amplitude& alpha, const Amplitude& lambda,
                  const SetupParams& p) {
  const double denom = 2.0 - p.eta_tilde;
  return 2.0 * p.p_dark / denom *
         std::exp(-2.0 * p.eta_tilde / denom * mag2(lambda - alpha) -
                  p.eta_tilde * (1.0 - p.xi) / p.xi * mag2(alpha));
}

}  // namespace bellhom
