#include "bellhom/detection.hpp"

#include <cmath>
#include <numeric>

namespace bellhom {

CountDistribution::CountDistribution(std::vector<double> probs)
    : probs_(std::move(probs)) {
  require(!probs_.empty(), "count distribution must not be empty");
  double sum = 0.0;
  for (double p : probs_) {
    require(std::isfinite(p) && p >= 0.0 && p <= 1.0,
            "count probabilities must lie in [0, 1]");
    sum += p;
  }
  require(std::abs(sum - 1.0) <= 1e-9,
          "count distribution must be normalized to 1e-9");
}

double pi_s(const CountDistribution& counts, OrderingParam s) {
  const double weight = (s.s + 1.0) / (s.s - 1.0);
  double acc = 0.0;
  double wn = 1.0;  // weight^0 = 1 covers the s -> -1 limit, Pi(-1) = p_0
  for (std::size_t n = 0; n < counts.size(); ++n) {
    acc += wn * counts[n];
    wn *= weight;
  }
  return acc;
}

CountDistribution convolve_dark(const CountDistribution& field,
                                const CountDistribution& dark) {
  std::vector<double> out(field.size() + dark.size() - 1, 0.0);
  for (std::size_t m = 0; m < field.size(); ++m)
    for (std::size_t k = 0; k < dark.size(); ++k) out[m + k] += field[m] * dark[k];
  return CountDistribution(std::move(out));
}

double mismatch_envelope(const Amplitude& alpha, double eta_tilde, double xi,
                         OrderingParam s) {
  require(eta_tilde > 0.0 && eta_tilde <= 1.0, "eta_tilde must lie in (0, 1]");
  require(xi > 0.0 && xi <= 1.0, "mode matching xi must lie in (0, 1]");
  return std::exp(-2.0 * eta_tilde / (1.0 - s.s) * (1.0 - xi) / xi *
                  mag2(alpha));
}

double xi_to_visibility(double xi) {
  require(xi > 0.0 && xi <= 1.0, "xi must lie in (0, 1]");
  return 2.0 * xi / (1.0 + xi);
}

double visibility_to_xi(double v) {
  require(v > 0.0 && v <= 1.0, "visibility must lie in (0, 1]");
  return v / (2.0 - v);
}

InterferenceExtrema interference_extrema(const Amplitude& alpha_signal,
                                         double transmission, double xi) {
  require(transmission > 0.0 && transmission < 1.0,
          "beam splitter transmission must lie in (0, 1)");
  require(xi > 0.0 && xi <= 1.0, "xi must lie in (0, 1]");
  const double base = transmission * mag2(alpha_signal);
  return {(1.0 - xi) * base, (1.0 + 3.0 * xi) * base};
}

ModeMatch::ModeMatch(double xi_in) : xi(xi_in) {
  require(xi > 0.0 && xi <= 1.0, "xi must lie in (0, 1]");
}

ModeMatch::ModeMatch(const Amplitude& projection, double probe)
    : xi(0.0), alpha_projection(projection), probe_photons(probe) {
  require(probe_photons > 0.0, "probe photon number must be positive");
  xi = mag2(alpha_projection) / probe_photons;
  require(xi > 0.0 && xi <= 1.0 + 1e-12,
          "projection data violate the Schwarz bound xi <= 1");
  if (xi > 1.0) xi = 1.0;
}

}  // namespace bellhom
