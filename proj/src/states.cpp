#include "bellhom/states.hpp"

#include <cmath>

namespace bellhom {

namespace {

void check_eta(double eta_tilde) {
  require(eta_tilde > 0.0 && eta_tilde <= 1.0, "eta_tilde must lie in (0, 1]");
}

void check_r(double r) {
  require(r >= 0.0, "squeezing r must be >= 0");
  require(r <= kMaxSqueezing, "squeezing r too large for stable evaluation");
}

void check_amp(const Amplitude& z) {
  require(std::isfinite(z.real()) && std::isfinite(z.imag()),
          "displacement amplitude must be finite");
}

}  // namespace

StateKind StateKind::single_photon() { return {Kind::SinglePhotonSplit, 0.0}; }

StateKind StateKind::tmsv(double r) {
  check_r(r);
  return {Kind::TwoModeSqueezedVacuum, r};
}

double w_joint_single_photon(const Amplitude& alpha, const Amplitude& beta,
                             double eta_tilde) {
  check_eta(eta_tilde);
  check_amp(alpha);
  check_amp(beta);
  const double pref = eta_tilde / M_PI;
  const double poly =
      1.0 - eta_tilde + 0.5 * eta_tilde * eta_tilde * mag2(alpha + beta);
  return pref * pref * poly * std::exp(-eta_tilde * (mag2(alpha) + mag2(beta)));
}

double w_marginal_single_photon(const Amplitude& alpha, double eta_tilde) {
  check_eta(eta_tilde);
  check_amp(alpha);
  const double poly =
      1.0 - 0.5 * eta_tilde + 0.5 * eta_tilde * eta_tilde * mag2(alpha);
  return eta_tilde / M_PI * poly * std::exp(-eta_tilde * mag2(alpha));
}

double w_joint_tmsv(const Amplitude& alpha, const Amplitude& beta,
                    double eta_tilde, double r) {
  check_eta(eta_tilde);
  check_r(r);
  check_amp(alpha);
  check_amp(beta);
  const double sh = std::sinh(r);
  const double ch = std::cosh(r);
  const double den = 1.0 + eta_tilde * (2.0 - eta_tilde) * sh * sh;
  const double quad = (eta_tilde + eta_tilde * eta_tilde * sh * sh) / den *
                      (mag2(alpha) + mag2(beta));
  const double cross =
      eta_tilde * eta_tilde * sh * ch / den * 2.0 * (alpha * beta).real();
  return eta_tilde * eta_tilde / (M_PI * M_PI * den) * std::exp(-quad + cross);
}

double w_marginal_tmsv(const Amplitude& alpha, double eta_tilde, double r) {
  check_eta(eta_tilde);
  check_r(r);
  check_amp(alpha);
  const double sh = std::sinh(r);
  const double den = 1.0 + eta_tilde * sh * sh;
  return eta_tilde / (M_PI * den) * std::exp(-eta_tilde * mag2(alpha) / den);
}

double w_joint(const StateKind& state, const Amplitude& alpha,
               const Amplitude& beta, double eta_tilde) {
  if (state.is_tmsv())
    return w_joint_tmsv(alpha, beta, eta_tilde, state.squeezing);
  return w_joint_single_photon(alpha, beta, eta_tilde);
}

double w_marginal(const StateKind& state, const Amplitude& alpha,
                  double eta_tilde) {
  if (state.is_tmsv())
    return w_marginal_tmsv(alpha, eta_tilde, state.squeezing);
  return w_marginal_single_photon(alpha, eta_tilde);
}

double q_function_tmsv_joint(const Amplitude& gamma, const Amplitude& delta,
                             double r) {
  check_r(r);
  const double ch = std::cosh(r);
  const double expo =
      -mag2(gamma) - mag2(delta) + std::tanh(r) * 2.0 * (gamma * delta).real();
  return std::exp(expo) / (M_PI * M_PI * ch * ch);
}

double q_function_tmsv_marginal(const Amplitude& gamma, double r) {
  check_r(r);
  const double ch2 = std::cosh(r) * std::cosh(r);
  return std::exp(-mag2(gamma) / ch2) / (M_PI * ch2);
}

}  // namespace bellhom
