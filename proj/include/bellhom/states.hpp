#pragma once

#include "bellhom/common.hpp"

namespace bellhom {

/// The two benchmark entangled states: a single photon split on a 50:50 beam
/// splitter, and the two-mode squeezed vacuum from nondegenerate parametric
/// down-conversion.
struct StateKind {
  enum class Kind { SinglePhotonSplit, TwoModeSqueezedVacuum };

  Kind kind = Kind::SinglePhotonSplit;
  double squeezing = 0.0;  // r, TMSV only

  static StateKind single_photon();
  static StateKind tmsv(double r);

  bool is_tmsv() const { return kind == Kind::TwoModeSqueezedVacuum; }
};

/// Largest admissible squeezing; larger values overflow downstream exponents.
inline constexpr double kMaxSqueezing = 10.0;

// Closed-form two-mode quasidistributions at the loss-induced ordering
// -(2 - eta_tilde)/eta_tilde, and their single-mode marginals.  All take the
// rescaled displacement amplitudes and the combined efficiency eta_tilde.

double w_joint_single_photon(const Amplitude& alpha, const Amplitude& beta,
                             double eta_tilde);
double w_marginal_single_photon(const Amplitude& alpha, double eta_tilde);

double w_joint_tmsv(const Amplitude& alpha, const Amplitude& beta,
                    double eta_tilde, double r);
double w_marginal_tmsv(const Amplitude& alpha, double eta_tilde, double r);

/// Dispatch on the state kind; for TMSV the state's squeezing is used.
double w_joint(const StateKind& state, const Amplitude& alpha,
               const Amplitude& beta, double eta_tilde);
double w_marginal(const StateKind& state, const Amplitude& alpha,
                  double eta_tilde);

// Q-function (ordering -1) forms for the TMSV state.  These are the inputs of
// the ordering transform checks.
double q_function_tmsv_joint(const Amplitude& gamma, const Amplitude& delta,
                             double r);
double q_function_tmsv_marginal(const Amplitude& gamma, double r);

}  // namespace bellhom
