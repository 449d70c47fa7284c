#pragma once

#include <functional>
#include <span>
#include <vector>

#include "bellhom/common.hpp"

namespace bellhom {

/// Quasidistribution ordering parameter; statistically admissible values are
/// nonpositive (s = 0 Wigner, s = -1 Q function).
struct OrderingParam {
  double s = -1.0;

  explicit OrderingParam(double value) : s(value) {
    require(s <= 0.0, "ordering parameter s must be <= 0");
  }
};

/// Ordering actually measured after losses: -(1 - s - eta_tilde)/eta_tilde.
/// Monotone increasing in both s and eta_tilde.
OrderingParam effective_ordering(OrderingParam s, double eta_tilde);

/// Gauss-Hermite rule for the weight exp(-x^2) on the real line.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached nodes/weights, computed once per order (Newton iteration on the
/// orthonormal Hermite recurrence).
const GaussHermiteRule& gauss_hermite(int order);

/// A sampled quasidistribution over M complex points.
using SampledFunction = std::function<double(std::span<const Amplitude>)>;

struct TransformOptions {
  int quadrature_order = 64;  // per real dimension
  double tail_tol = 1e-9;     // relative edge-node contribution allowed
};

/// Gaussian smoothing between orderings:
///   W(points; s') = (2/(pi (s-s')))^M Int exp(-2/(s-s') sum|a_i-b_i|^2)
///                   W(b; s) d^2b,
/// evaluated by tensor-product Gauss-Hermite quadrature.  Requires
/// s_prime < s; throws std::domain_error otherwise, and std::runtime_error if
/// the edge-node tail estimate shows the quadrature order is insufficient.
double ordering_transform(const SampledFunction& w_src, OrderingParam s,
                          OrderingParam s_prime,
                          std::span<const Amplitude> points,
                          const TransformOptions& opts = {});

/// Integral of f over the complex plane, assuming f decays at least like
/// exp(-decay_rate |z|^2).  Gauss-Hermite in both quadratures; exact when f is
/// a polynomial times that Gaussian.
double integrate_plane(const std::function<double(const Amplitude&)>& f,
                       double decay_rate, int order = 64);

}  // namespace bellhom
