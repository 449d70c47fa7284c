#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bellhom/fock_oracle.hpp"
#include "bellhom/rng.hpp"

using namespace bellhom;

TEST_CASE("displacement matrix is unitary on the safe block") {
  const int dim = 60;
  const auto d = displacement_matrix({1.3, -0.7}, dim);
  // columns for low n stay orthonormal despite truncation
  for (int n = 0; n < 10; ++n) {
    for (int m = 0; m < 10; ++m) {
      Amplitude dot{0, 0};
      for (int k = 0; k < dim; ++k)
        dot += std::conj(d[std::size_t(k) * dim + n]) * d[std::size_t(k) * dim + m];
      CHECK(std::abs(dot - (n == m ? 1.0 : 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("attenuated coherent state: zero-count probability") {
  // TMSV with r = 0 is the two-mode vacuum; displacing turns each arm into a
  // coherent state, and p_0 per arm must be exp(-eta |amp|^2).
  const StateKind vac = StateKind::tmsv(0.0);
  SplitMix64 gen(10);
  for (int k = 0; k < 10; ++k) {
    const Amplitude a{gen.uniform(-2, 2), gen.uniform(-2, 2)};
    const Amplitude b{gen.uniform(-2, 2), gen.uniform(-2, 2)};
    const double eta = gen.uniform(0.1, 1.0);
    const SetupParams p(eta, 1.0, 1.0);
    const double expected = std::exp(-eta * (mag2(a) + mag2(b)));
    CHECK(std::abs(oracle_q_joint(vac, a, b, p, 60) - expected) < 1e-12);
  }
}

TEST_CASE("split single photon never stays silent at unit efficiency") {
  CHECK(oracle_q_joint(StateKind::single_photon(), {0, 0}, {0, 0},
                       SetupParams(1, 1, 1), 60) == doctest::Approx(0.0));
}

TEST_CASE("TMSV joint silence matches the closed form") {
  const SetupParams p(0.7, 1.0, 1.0);
  const double oracle =
      oracle_q_joint(StateKind::tmsv(0.6), {0.5, 0}, {0.5, 0}, p, 60);
  const double closed = q_joint(StateKind::tmsv(0.6), {0.5, 0}, {0.5, 0}, p);
  CHECK(std::abs(oracle - closed) < 1e-10);
}

TEST_CASE("truncation convergence and insufficiency") {
  const SetupParams p(0.8, 1.0, 1.0);
  const StateKind state = StateKind::tmsv(1.2);
  const double q60 = oracle_q_joint(state, {1.5, 0.5}, {-0.5, 1.0}, p, 60);
  const double q120 = oracle_q_joint(state, {1.5, 0.5}, {-0.5, 1.0}, p, 120);
  CHECK(std::abs(q60 - q120) < 1e-10);

  CHECK_THROWS_AS(
      oracle_q_joint(StateKind::tmsv(2.5), {0.5, 0}, {0.5, 0}, p, 16),
      TruncationError);
  try {
    oracle_q_joint(StateKind::tmsv(2.5), {0.5, 0}, {0.5, 0}, p, 16);
  } catch (const TruncationError& e) {
    CHECK(e.suggested_dim == 32);
  }
}

TEST_CASE("count distributions: vacuum and single photon") {
  const auto vac = oracle_count_distribution(StateKind::tmsv(0.0), {0, 0},
                                             {0, 0}, SetupParams(0.9, 1, 1),
                                             40, 20);
  CHECK(vac.total[0] == doctest::Approx(1.0));

  const auto one = oracle_count_distribution(StateKind::single_photon(),
                                             {0, 0}, {0, 0},
                                             SetupParams(1, 1, 1), 40, 20);
  CHECK(one.total[0] == doctest::Approx(0.0));
  CHECK(one.total[1] == doctest::Approx(1.0));
}

TEST_CASE("count distribution p_0 ties the whole pipeline together") {
  const StateKind state = StateKind::tmsv(0.5);
  const SetupParams p(0.8, 0.92, 0.99);
  const Amplitude a{0.3, 0.0}, b{-0.3, 0.0};
  const auto counts = oracle_count_distribution(state, a, b, p, 60, 40);
  CHECK(counts.tail_mass < 1e-10);
  const double p0 = pi_s(counts.total, OrderingParam(-1.0));
  CHECK(std::abs(p0 - oracle_q_joint(state, a, b, p, 60)) < 1e-9);
  CHECK(std::abs(p0 - q_joint(state, a, b, p)) < 1e-8);
}

TEST_CASE("marginalizing the joint counts reproduces q_marginal") {
  const StateKind state = StateKind::tmsv(0.7);
  const SetupParams p(0.75, 0.88, 0.97);
  const Amplitude a{0.6, -0.2}, b{0.1, 0.4};
  const int n_max = 40;
  const auto joint = oracle_joint_counts(state, a, b, p, 60, n_max);
  double p0_field = 0.0;
  for (int nb = 0; nb <= n_max; ++nb) p0_field += joint[std::size_t(nb)];
  // arm A silence: field p(n_A=0) times its own mismatch background and dark
  const double mu_a = p.eta_tilde * (1.0 - p.xi) / p.xi * mag2(a);
  const double p0_a = p0_field * std::exp(-mu_a) * p.p_dark;
  CHECK(std::abs(p0_a - q_marginal(state, a, p, Arm::A)) < 1e-8);
}

TEST_CASE("click sampling") {
  const auto sure = sample_clicks(CountDistribution({1.0}), 1000, 5);
  CHECK(sure[0] == doctest::Approx(1.0));

  const auto coin = sample_clicks(CountDistribution({0.5, 0.5}), 1000000, 5);
  CHECK(std::abs(coin[0] - 0.5) < 3.0 * std::sqrt(0.25 / 1e6));

  // determinism
  const auto again = sample_clicks(CountDistribution({0.5, 0.5}), 1000000, 5);
  CHECK(coin[0] == again[0]);
}

TEST_CASE("Monte-Carlo pipeline agrees with the closed form") {
  const StateKind state = StateKind::tmsv(0.6);
  const SetupParams p(0.85, 0.95, 0.995);
  const Amplitude a{0.4, 0.1}, b{-0.35, 0.2};
  const auto counts = oracle_count_distribution(state, a, b, p, 60, 40);
  const std::uint64_t n = 1000000;
  const auto emp = sample_clicks(counts.total, n, 2024);
  const double expect = q_joint(state, a, b, p);
  const double sigma = std::sqrt(expect * (1.0 - expect) / double(n));
  CHECK(std::abs(emp[0] - expect) < 3.0 * sigma);
}

TEST_CASE("truncated state bookkeeping") {
  const auto ts = make_truncated(StateKind::tmsv(1.5), 60);
  CHECK(ts.dim == 60);
  CHECK(ts.tail_mass == doctest::Approx(std::pow(std::tanh(1.5), 120.0)));
  CHECK(std::abs(ts.at(0, 0) - Amplitude{1.0 / std::cosh(1.5), 0.0}) < 1e-15);
  CHECK(std::abs(ts.at(0, 1)) == 0.0);

  const auto sp = make_truncated(StateKind::single_photon(), 8);
  CHECK(std::abs(sp.at(1, 0) - Amplitude{M_SQRT1_2, 0.0}) < 1e-15);
  CHECK(sp.tail_mass == 0.0);
}
