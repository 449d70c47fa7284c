#include "bellhom/ordering.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace bellhom {

OrderingParam effective_ordering(OrderingParam s, double eta_tilde) {
  require(eta_tilde > 0.0 && eta_tilde <= 1.0, "eta_tilde must lie in (0, 1]");
  return OrderingParam(-(1.0 - s.s - eta_tilde) / eta_tilde);
}

namespace {

// Orthonormal Hermite recurrence evaluated at x; returns (h_n, h_{n-1}).
std::pair<double, double> hermite_pair(int n, double x) {
  double h0 = std::pow(M_PI, -0.25);
  double h1 = std::sqrt(2.0) * x * h0;
  if (n == 0) return {h0, 0.0};
  for (int j = 1; j < n; ++j) {
    const double h2 =
        x * std::sqrt(2.0 / (j + 1)) * h1 - std::sqrt(double(j) / (j + 1)) * h0;
    h0 = h1;
    h1 = h2;
  }
  return {h1, h0};
}

GaussHermiteRule compute_rule(int order) {
  GaussHermiteRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  std::vector<double> pos(half);  // positive roots, descending
  double x = 0.0;
  for (int i = 0; i < half; ++i) {
    // Initial guesses as in standard Gauss-Hermite constructions.
    if (i == 0) {
      x = std::sqrt(2.0 * order + 1.0) -
          1.85575 * std::pow(2.0 * order + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      x -= 1.14 * std::pow(double(order), 0.426) / x;
    } else if (i == 2) {
      x = 1.86 * x - 0.86 * pos[0];
    } else if (i == 3) {
      x = 1.91 * x - 0.91 * pos[1];
    } else {
      x = 2.0 * x - pos[i - 2];
    }
    for (int it = 0; it < 100; ++it) {
      const auto [h, hm1] = hermite_pair(order, x);
      const double dh = std::sqrt(2.0 * order) * hm1;
      const double dx = h / dh;
      x -= dx;
      if (std::abs(dx) < 1e-15 * (1.0 + std::abs(x))) break;
    }
    const auto [h, hm1] = hermite_pair(order, x);
    (void)h;
    const double dh = std::sqrt(2.0 * order) * hm1;
    pos[i] = x;
    rule.nodes[order - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[order - 1 - i] = 2.0 / (dh * dh);
    rule.weights[i] = rule.weights[order - 1 - i];
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussHermiteRule& gauss_hermite(int order) {
  require(order >= 2 && order <= 512, "quadrature order out of range");
  static std::map<int, GaussHermiteRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
  return it->second;
}

double ordering_transform(const SampledFunction& w_src, OrderingParam s,
                          OrderingParam s_prime,
                          std::span<const Amplitude> points,
                          const TransformOptions& opts) {
  require(s_prime.s < s.s,
          "ordering transform runs only towards lower s (s_prime < s)");
  const std::size_t modes = points.size();
  require(modes >= 1 && modes <= 4, "transform supports 1..4 modes");

  const auto& rule = gauss_hermite(opts.quadrature_order);
  const int n = opts.quadrature_order;
  const double sigma = std::sqrt(0.5 * (s.s - s_prime.s));

  // Odometer over the 2M real dimensions.  Integration variables are the
  // sampled offsets b_i = a_i + sigma (t_{2i} + i t_{2i+1}).
  const std::size_t dims = 2 * modes;
  std::vector<int> idx(dims, 0);
  std::vector<Amplitude> b(modes);
  const double norm = std::pow(1.0 / M_PI, double(modes));

  double total = 0.0;
  double edge_contrib = 0.0;  // mass carried by outermost-node evaluations
  bool done = false;
  while (!done) {
    double w = 1.0;
    bool edge = false;
    for (std::size_t d = 0; d < dims; ++d) {
      w *= rule.weights[idx[d]];
      if (idx[d] == 0 || idx[d] == n - 1) edge = true;
    }
    for (std::size_t m = 0; m < modes; ++m) {
      b[m] = points[m] + sigma * Amplitude(rule.nodes[idx[2 * m]],
                                           rule.nodes[idx[2 * m + 1]]);
    }
    const double term = w * w_src(std::span<const Amplitude>(b));
    total += term;
    if (edge) edge_contrib += std::abs(term);
    for (std::size_t d = 0;; ++d) {
      if (d == dims) {
        done = true;
        break;
      }
      if (++idx[d] < n) break;
      idx[d] = 0;
    }
  }

  const double scale = std::abs(total) + 1e-300;
  if (edge_contrib / scale > opts.tail_tol)
    throw std::runtime_error(
        "ordering transform: quadrature order insufficient (tail estimate "
        "exceeds tolerance)");
  return norm * total;
}

double integrate_plane(const std::function<double(const Amplitude&)>& f,
                       double decay_rate, int order) {
  require(decay_rate > 0.0, "decay_rate must be positive");
  const auto& rule = gauss_hermite(order);
  const double inv = 1.0 / std::sqrt(decay_rate);
  double total = 0.0;
  for (int i = 0; i < order; ++i) {
    for (int j = 0; j < order; ++j) {
      const Amplitude z(rule.nodes[i] * inv, rule.nodes[j] * inv);
      const double gauss = std::exp(rule.nodes[i] * rule.nodes[i] +
                                    rule.nodes[j] * rule.nodes[j]);
      total += rule.weights[i] * rule.weights[j] * gauss * f(z);
    }
  }
  return total / decay_rate;
}

}  // namespace bellhom
