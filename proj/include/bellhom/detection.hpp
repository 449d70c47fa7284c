#pragma once

#include <span>
#include <vector>

#include "bellhom/common.hpp"
#include "bellhom/ordering.hpp"

namespace bellhom {

/// Finite photocount distribution p_0..p_N.  Callers truncate so that the
/// ignored tail mass stays below ~1e-12; construction enforces normalization
/// to that accuracy.
class CountDistribution {
 public:
  explicit CountDistribution(std::vector<double> probs);

  const std::vector<double>& probs() const { return probs_; }
  double operator[](std::size_t n) const { return probs_[n]; }
  std::size_t size() const { return probs_.size(); }

 private:
  std::vector<double> probs_;
};

/// Weighted sum Pi(s) = sum_n ((s+1)/(s-1))^n p_n over the count statistics.
/// |Pi(s)| <= 1 for every normalized distribution and s <= 0.
double pi_s(const CountDistribution& counts, OrderingParam s);

/// Count statistics with statistically independent dark counts folded in:
/// discrete convolution of the field and dark distributions.
CountDistribution convolve_dark(const CountDistribution& field,
                                const CountDistribution& dark);

/// Gaussian suppression caused by imperfect mode matching, in rescaled
/// variables: exp(-(2 eta_tilde/(1-s)) ((1-xi)/xi) |alpha|^2).
double mismatch_envelope(const Amplitude& alpha, double eta_tilde, double xi,
                         OrderingParam s);

/// Mode matching <-> interference visibility, mutually inverse bijections on
/// (0, 1]: v = 2 xi/(1+xi), xi = v/(2-v).
double xi_to_visibility(double xi);
double visibility_to_xi(double v);

/// Extremal detector intensities when scanning the probe phase against a
/// coherent stand-in for the signal.
struct InterferenceExtrema {
  double j_min = 0.0;
  double j_max = 0.0;
};
InterferenceExtrema interference_extrema(const Amplitude& alpha_signal,
                                         double transmission, double xi);

/// Mode matching parameters of one homodyne arm.  xi is consistent with the
/// projection data when both are supplied: xi = |alpha_projection|^2 / J_P.
struct ModeMatch {
  double xi = 1.0;
  Amplitude alpha_projection{0.0, 0.0};
  double probe_photons = 0.0;  // J_P

  explicit ModeMatch(double xi);
  ModeMatch(const Amplitude& alpha_projection, double probe_photons);

  double visibility() const { return xi_to_visibility(xi); }
};

}  // namespace bellhom
