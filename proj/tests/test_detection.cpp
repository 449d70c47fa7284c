#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bellhom/detection.hpp"
#include "bellhom/rng.hpp"

using namespace bellhom;

namespace {

CountDistribution random_dist(SplitMix64& gen, int len) {
  std::vector<double> p(len);
  double sum = 0.0;
  for (double& v : p) {
    v = gen.uniform();
    sum += v;
  }
  for (double& v : p) v /= sum;
  return CountDistribution(std::move(p));
}

}  // namespace

TEST_CASE("Pi(s) limits and parity sum") {
  const CountDistribution d({0.2, 0.3, 0.5});
  CHECK(pi_s(d, OrderingParam(-1.0)) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(pi_s(CountDistribution({1.0}), OrderingParam(0.0)) ==
        doctest::Approx(1.0));
  CHECK(pi_s(CountDistribution({0.5, 0.5}), OrderingParam(0.0)) ==
        doctest::Approx(0.0));
}

TEST_CASE("Pi(s) is a contraction for s <= 0") {
  SplitMix64 gen(99);
  for (int k = 0; k < 1000; ++k) {
    const auto d = random_dist(gen, 2 + int(gen.next() % 20));
    const double s = -gen.uniform(0.0, 5.0);
    CHECK(std::abs(pi_s(d, OrderingParam(s))) <= 1.0 + 1e-12);
  }
}

TEST_CASE("dark-count convolution") {
  const auto mixed = convolve_dark(CountDistribution({0.5, 0.5}),
                                   CountDistribution({0.9, 0.1}));
  REQUIRE(mixed.size() == 3);
  CHECK(mixed[0] == doctest::Approx(0.45).epsilon(1e-15));
  CHECK(mixed[1] == doctest::Approx(0.50).epsilon(1e-15));
  CHECK(mixed[2] == doctest::Approx(0.05).epsilon(1e-15));

  const CountDistribution f({0.25, 0.5, 0.25});
  const auto same = convolve_dark(f, CountDistribution({1.0}));
  for (std::size_t n = 0; n < f.size(); ++n) CHECK(same[n] == f[n]);
}

TEST_CASE("Pi(s) factorizes over the dark convolution") {
  SplitMix64 gen(31337);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto field = random_dist(gen, 2 + int(gen.next() % 12));
    const auto dark = random_dist(gen, 2 + int(gen.next() % 5));
    const auto mixed = convolve_dark(field, dark);
    for (double s : {-1.0, -0.5, 0.0}) {
      const OrderingParam ord(s);
      worst = std::max(worst, std::abs(pi_s(mixed, ord) -
                                       pi_s(field, ord) * pi_s(dark, ord)));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("mismatch envelope") {
  const OrderingParam geiger(-1.0);
  CHECK(mismatch_envelope({1.3, -0.4}, 0.77, 1.0, geiger) == 1.0);
  CHECK(mismatch_envelope({0, 0}, 0.5, 0.3, geiger) == 1.0);
  CHECK(mismatch_envelope({1, 0}, 1.0, 0.5, geiger) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK_THROWS_AS(mismatch_envelope({1, 0}, 1.0, 0.0, geiger),
                  std::domain_error);

  // log-quadratic in |alpha| with the stated curvature
  const double eta = 0.8, xi = 0.6, s = -0.7;
  const double coef = -2.0 * eta * (1.0 - xi) / ((1.0 - s) * xi);
  for (double mag : {0.5, 1.0, 2.0}) {
    const double measured =
        std::log(mismatch_envelope({mag, 0}, eta, xi, OrderingParam(s))) /
        (mag * mag);
    CHECK(measured == doctest::Approx(coef).epsilon(1e-6));
  }
}

TEST_CASE("visibility relations") {
  CHECK(xi_to_visibility(1.0) == doctest::Approx(1.0));
  CHECK(xi_to_visibility(0.5) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(visibility_to_xi(2.0 / 3.0) == doctest::Approx(0.5).epsilon(1e-14));
  SplitMix64 gen(5);
  double prev = 0.0;
  for (int k = 1; k <= 50; ++k) {
    const double x = k / 50.0;
    const double v = xi_to_visibility(x);
    CHECK(v > prev);  // strictly increasing
    prev = v;
    CHECK(std::abs(visibility_to_xi(v) - x) < 1e-14);
  }
  CHECK_THROWS_AS(xi_to_visibility(0.0), std::domain_error);
  CHECK_THROWS_AS(visibility_to_xi(1.1), std::domain_error);
}

TEST_CASE("interference extrema and their visibility") {
  const auto perfect = interference_extrema({1, 0}, 0.9, 1.0);
  CHECK(perfect.j_min == doctest::Approx(0.0));
  CHECK(perfect.j_max == doctest::Approx(3.6).epsilon(1e-14));

  const auto half = interference_extrema({std::sqrt(2.0), 0}, 0.5, 0.5);
  CHECK(half.j_min == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(half.j_max == doctest::Approx(2.5).epsilon(1e-14));
  CHECK((half.j_max - half.j_min) / (half.j_max + half.j_min) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-14));

  // (jmax - jmin)/(jmax + jmin) = 2 xi/(1 + xi) for any xi
  for (double xi : {1e-6, 0.2, 0.8}) {
    const auto e = interference_extrema({1.2, 0.3}, 0.7, xi);
    CHECK((e.j_max - e.j_min) / (e.j_max + e.j_min) ==
          doctest::Approx(xi_to_visibility(xi)).epsilon(1e-12));
  }
}

TEST_CASE("count distribution and mode match invariants") {
  CHECK_THROWS_AS(CountDistribution({0.5, 0.6}), std::domain_error);
  CHECK_THROWS_AS(CountDistribution({-0.1, 1.1}), std::domain_error);
  CHECK_THROWS_AS(CountDistribution({}), std::domain_error);

  const ModeMatch mm(Amplitude{2.0, 0.0}, 8.0);
  CHECK(mm.xi == doctest::Approx(0.5));
  CHECK(mm.visibility() == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(ModeMatch(Amplitude{3.0, 0.0}, 4.0), std::domain_error);
  CHECK_THROWS_AS(ModeMatch(0.0), std::domain_error);
}
