#include "bellhom/fock_oracle.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "bellhom/rng.hpp"

namespace bellhom {

namespace {

using CMat = Eigen::MatrixXcd;
using DMat = Eigen::MatrixXd;
using DVec = Eigen::VectorXd;

CMat displacement(const Amplitude& alpha, int dim) {
  CMat d(dim, dim);
  // Coherent-state column, log-domain to stay finite at large n.
  if (std::abs(alpha) == 0.0) {
    d.col(0).setZero();
    d(0, 0) = 1.0;
  } else {
    const double la = std::log(std::abs(alpha));
    const double ph = std::arg(alpha);
    double logfact = 0.0;
    for (int m = 0; m < dim; ++m) {
      if (m > 0) logfact += std::log(double(m));
      const double mag = std::exp(-0.5 * mag2(alpha) + m * la - 0.5 * logfact);
      d(m, 0) = std::polar(mag, m * ph);
    }
  }
  for (int n = 1; n < dim; ++n) {
    d(0, n) = -std::conj(alpha) * d(0, n - 1);
    for (int m = 1; m < dim; ++m)
      d(m, n) = std::sqrt(double(m)) * d(m - 1, n - 1) -
                std::conj(alpha) * d(m, n - 1);
    d.col(n) /= std::sqrt(double(n));
  }
  return d;
}

CMat state_matrix(const StateKind& state, int dim) {
  CMat c = CMat::Zero(dim, dim);
  if (state.is_tmsv()) {
    const double t = std::tanh(state.squeezing);
    double amp = 1.0 / std::cosh(state.squeezing);
    for (int n = 0; n < dim; ++n) {
      c(n, n) = amp;
      amp *= t;
    }
  } else {
    c(1, 0) = M_SQRT1_2;
    c(0, 1) = M_SQRT1_2;
  }
  return c;
}

double state_tail(const StateKind& state, int dim) {
  if (!state.is_tmsv()) return 0.0;
  return std::pow(std::tanh(state.squeezing), 2.0 * dim);
}

// Expectation of (1-eta)^N (x) (1-eta)^N on the displaced truncated state.
double displaced_loss_expectation(const StateKind& state,
                                  const Amplitude& alpha,
                                  const Amplitude& beta, double eta, int dim) {
  const CMat da = displacement(-alpha, dim);  // D^dag(alpha)
  const CMat db = displacement(-beta, dim);
  const CMat cp = da * state_matrix(state, dim) * db.transpose();
  DVec w(dim);
  double wn = 1.0;
  for (int n = 0; n < dim; ++n) {
    w(n) = wn;
    wn *= (1.0 - eta);
  }
  return (w.transpose() * cp.cwiseAbs2() * w).value();
}

void check_convergence(double full, double reduced, double tail, int dim,
                       const char* what) {
  const double drift = std::abs(full - reduced) + tail * 1e-6;
  if (drift > 1e-10)
    throw TruncationError(std::string(what) +
                              ": truncated Fock computation has not converged "
                              "at the requested dimension",
                          2 * dim);
}

double joint_envelope(const Amplitude& alpha, const Amplitude& beta,
                      const SetupParams& p) {
  return std::exp(-p.eta_tilde * (1.0 - p.xi) / p.xi *
                  (mag2(alpha) + mag2(beta)));
}

std::vector<double> poisson(double mean, int n_max) {
  std::vector<double> out(n_max + 1, 0.0);
  double term = std::exp(-mean);
  for (int n = 0; n <= n_max; ++n) {
    out[n] = term;
    term *= mean / (n + 1);
  }
  return out;
}

}  // namespace

TruncatedState make_truncated(const StateKind& state, int dim) {
  require(dim >= 2, "truncation dimension must be at least 2");
  const CMat c = state_matrix(state, dim);
  TruncatedState out;
  out.dim = dim;
  out.tail_mass = state_tail(state, dim);
  out.coeff.resize(std::size_t(dim) * dim);
  for (int n = 0; n < dim; ++n)
    for (int m = 0; m < dim; ++m) out.coeff[std::size_t(n) * dim + m] = c(n, m);
  return out;
}

std::vector<Amplitude> displacement_matrix(const Amplitude& alpha, int dim) {
  require(dim >= 1, "dimension must be positive");
  const CMat d = displacement(alpha, dim);
  std::vector<Amplitude> out(std::size_t(dim) * dim);
  for (int m = 0; m < dim; ++m)
    for (int n = 0; n < dim; ++n) out[std::size_t(m) * dim + n] = d(m, n);
  return out;
}

double oracle_q_joint(const StateKind& state, const Amplitude& alpha,
                      const Amplitude& beta, const SetupParams& p, int dim) {
  require(dim >= 8, "oracle dimension too small");
  const double full =
      displaced_loss_expectation(state, alpha, beta, p.eta_tilde, dim);
  const double reduced = displaced_loss_expectation(state, alpha, beta,
                                                    p.eta_tilde, (3 * dim) / 4);
  check_convergence(full, reduced, state_tail(state, dim), dim,
                    "oracle_q_joint");
  return p.p_dark * p.p_dark * joint_envelope(alpha, beta, p) * full;
}

double oracle_q_marginal(const StateKind& state, const Amplitude& alpha,
                         const SetupParams& p, Arm arm, int dim) {
  require(dim >= 8, "oracle dimension too small");
  auto expectation = [&](int d) {
    const CMat da = displacement(-alpha, d);
    CMat cs = state_matrix(state, d);
    if (arm == Arm::B) cs.transposeInPlace();
    const CMat cp = da * cs;  // displace the measured arm only
    DVec w(d);
    double wn = 1.0;
    for (int n = 0; n < d; ++n) {
      w(n) = wn;
      wn *= (1.0 - p.eta_tilde);
    }
    // Trace out the untouched arm.
    return (cp.cwiseAbs2() * DVec::Ones(d)).dot(w);
  };
  const double full = expectation(dim);
  check_convergence(full, expectation((3 * dim) / 4), state_tail(state, dim),
                    dim, "oracle_q_marginal");
  const double env = std::exp(-p.eta_tilde * (1.0 - p.xi) / p.xi * mag2(alpha));
  return p.p_dark * env * full;
}

std::vector<double> oracle_joint_counts(const StateKind& state,
                                        const Amplitude& alpha,
                                        const Amplitude& beta,
                                        const SetupParams& p, int dim,
                                        int n_max) {
  require(dim >= 8, "oracle dimension too small");
  require(n_max >= 0, "n_max must be nonnegative");
  const CMat da = displacement(-alpha, dim);
  const CMat db = displacement(-beta, dim);
  const CMat cp = da * state_matrix(state, dim) * db.transpose();
  const DMat prob = cp.cwiseAbs2();

  // Bernoulli thinning of each arm's photon number: B(k, n) eta^n (1-eta)^k-n.
  const int rows = n_max + 1;
  DMat thin = DMat::Zero(dim, rows);
  for (int k = 0; k < dim; ++k) {
    double binom = 1.0;  // C(k, n) running value
    for (int n = 0; n <= std::min(k, n_max); ++n) {
      if (n > 0) binom *= double(k - n + 1) / double(n);
      thin(k, n) = binom * std::pow(p.eta_tilde, n) *
                   std::pow(1.0 - p.eta_tilde, k - n);
    }
  }
  const DMat counts = thin.transpose() * prob * thin;
  std::vector<double> out(std::size_t(rows) * rows);
  for (int a = 0; a < rows; ++a)
    for (int b = 0; b < rows; ++b) out[std::size_t(a) * rows + b] = counts(a, b);
  return out;
}

OracleCounts oracle_count_distribution(const StateKind& state,
                                       const Amplitude& alpha,
                                       const Amplitude& beta,
                                       const SetupParams& p, int dim,
                                       int n_max) {
  const auto joint = oracle_joint_counts(state, alpha, beta, p, dim, n_max);
  const int rows = n_max + 1;
  std::vector<double> total(n_max + 1, 0.0);
  for (int a = 0; a < rows; ++a)
    for (int b = 0; b < rows && a + b <= n_max; ++b)
      total[a + b] += joint[std::size_t(a) * rows + b];

  // Unmatched probe light reaches each detector as an independent coherent
  // (Poissonian) background; on the total counts the two streams merge.
  const double mismatch_mean = p.eta_tilde * (1.0 - p.xi) / p.xi *
                               (mag2(alpha) + mag2(beta));
  // Dark noise modeled as Poissonian with the prescribed zero-count
  // probability p_D per detector.
  const double dark_mean = 2.0 * (-std::log(p.p_dark));
  const double extra = mismatch_mean + dark_mean;
  if (extra > 0.0) {
    const auto bg = poisson(extra, n_max);
    std::vector<double> mixed(n_max + 1, 0.0);
    for (int a = 0; a <= n_max; ++a)
      for (int b = 0; a + b <= n_max; ++b) mixed[a + b] += total[a] * bg[b];
    total.swap(mixed);
  }

  double mass = 0.0;
  for (double v : total) mass += v;
  OracleCounts out{CountDistribution(std::vector<double>{1.0}), 1.0 - mass};
  if (out.tail_mass > 1e-9)
    throw TruncationError(
        "oracle_count_distribution: count tail beyond n_max exceeds 1e-9",
        2 * n_max);
  for (double& v : total) v /= mass;
  out.total = CountDistribution(std::move(total));
  return out;
}

CountDistribution sample_clicks(const CountDistribution& dist,
                                std::uint64_t n_samples, std::uint64_t seed) {
  require(n_samples > 0, "need at least one sample");
  std::vector<double> cdf(dist.size());
  double acc = 0.0;
  for (std::size_t n = 0; n < dist.size(); ++n) {
    acc += dist[n];
    cdf[n] = acc;
  }
  std::vector<std::uint64_t> hits(dist.size(), 0);
  SplitMix64 gen(seed);
  for (std::uint64_t k = 0; k < n_samples; ++k) {
    const double u = gen.uniform() * acc;
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    hits[std::min<std::size_t>(it - cdf.begin(), dist.size() - 1)] += 1;
  }
  std::vector<double> emp(dist.size());
  for (std::size_t n = 0; n < dist.size(); ++n)
    emp[n] = double(hits[n]) / double(n_samples);
  return CountDistribution(std::move(emp));
}

}  // namespace bellhom
