#pragma once

#include <cstdint>
#include <vector>

#include "bellhom/bell.hpp"
#include "bellhom/detection.hpp"
#include "bellhom/states.hpp"

namespace bellhom {

/// Two-mode pure state truncated to a finite Fock window.  coeff(n, m) is the
/// amplitude of |n>_A |m>_B stored row-major; tail_mass is the probability
/// left outside the window.
struct TruncatedState {
  int dim = 0;
  std::vector<Amplitude> coeff;
  double tail_mass = 0.0;

  const Amplitude& at(int n, int m) const { return coeff[n * dim + m]; }
};

TruncatedState make_truncated(const StateKind& state, int dim);

/// <m|D(alpha)|n> for m, n < dim, row-major, built by the column recursion
/// D|n> = (a^dag - conj(alpha)) D|n-1> / sqrt(n).
std::vector<Amplitude> displacement_matrix(const Amplitude& alpha, int dim);

/// Ground-truth joint photon-silence probability from the truncated Fock
/// representation: p_D^2 times the expectation of the displaced loss operators
/// (1-eta)^n on both arms, times the mismatch envelope.  Shares no code path
/// with the closed forms in states/bell.  Throws TruncationError when an
/// internal two-resolution convergence check fails.
double oracle_q_joint(const StateKind& state, const Amplitude& alpha,
                      const Amplitude& beta, const SetupParams& p,
                      int dim = 60);

/// Single-arm counterpart of oracle_q_joint.
double oracle_q_marginal(const StateKind& state, const Amplitude& alpha,
                         const SetupParams& p, Arm arm = Arm::A, int dim = 60);

/// Joint field-count distribution p(n_A, n_B) before mismatch and dark
/// contributions, row-major with both axes truncated at n_max+1 entries.
std::vector<double> oracle_joint_counts(const StateKind& state,
                                        const Amplitude& alpha,
                                        const Amplitude& beta,
                                        const SetupParams& p, int dim,
                                        int n_max);

struct OracleCounts {
  CountDistribution total;  // total counts across both detectors
  double tail_mass = 0.0;   // probability beyond n_max before renormalization
};

/// Distribution of the total number of counts over both detectors, including
/// the Poissonian counts from the unmatched probe light and Poissonian dark
/// counts with zero-count probability p_dark per detector.
OracleCounts oracle_count_distribution(const StateKind& state,
                                       const Amplitude& alpha,
                                       const Amplitude& beta,
                                       const SetupParams& p, int dim = 60,
                                       int n_max = 63);

/// Multinomial sampling of a finite count distribution by inverse-CDF draws
/// from a seeded SplitMix64 stream; returns the empirical distribution.
CountDistribution sample_clicks(const CountDistribution& dist,
                                std::uint64_t n_samples, std::uint64_t seed);

}  // namespace bellhom
