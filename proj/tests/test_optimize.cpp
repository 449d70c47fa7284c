#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bellhom/optimize.hpp"
#include "bellhom/rng.hpp"

using namespace bellhom;

TEST_CASE("simplex finds the quadratic bowl") {
  const auto res = nelder_mead(
      [](std::span<const double> x) {
        return -((x[0] - 1.0) * (x[0] - 1.0) + (x[1] + 2.0) * (x[1] + 2.0));
      },
      {0.0, 0.0}, SimplexConfig{});
  CHECK(res.converged);
  CHECK(res.value == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(res.best[0] == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(res.best[1] == doctest::Approx(-2.0).epsilon(1e-4));
}

TEST_CASE("simplex converges immediately on a constant objective") {
  const auto res = nelder_mead([](std::span<const double>) { return 0.0; },
                               {0.3, -0.7, 1.1}, SimplexConfig{});
  CHECK(res.converged);
  CHECK(res.iterations == 0);
  CHECK(res.value == 0.0);
}

TEST_CASE("parameter vector round trip under the gauge") {
  DisplacementSettings d;
  d.a1 = {0.4, 0.0};
  d.a2 = {-0.2, 0.9};
  d.b1 = {0.1, -0.3};
  d.b2 = {0.8, 0.05};
  d.r = 0.6;
  const auto c = settings_to_params(d, true);
  REQUIRE(c.size() == 8);
  const auto back = params_to_settings(c, true);
  CHECK(back.a1 == d.a1);
  CHECK(back.a2 == d.a2);
  CHECK(back.r.value() == doctest::Approx(0.6));
  CHECK_THROWS_AS(settings_to_params(DisplacementSettings{{0, 0.1}, {}, {}, {},
                                                          std::nullopt},
                                     false),
                  std::domain_error);
}

TEST_CASE("single-photon maximum violation at perfect parameters") {
  const auto res = maximize_ch(StateKind::single_photon(), SetupParams(1, 1, 1),
                               SimplexConfig{});
  CHECK(res.value > 0.15);
  CHECK(res.converged);
  CHECK(res.relabeled);  // the split photon violates the lower CH facet
  // real and pairwise equal settings
  CHECK(res.settings.a1.imag() == 0.0);
  CHECK(std::abs(res.settings.a2.imag()) < 1e-4);
  CHECK(std::abs(res.settings.b1.imag()) < 1e-4);
  CHECK(std::abs(res.settings.b2.imag()) < 1e-4);
  CHECK(std::abs(res.settings.a1 - res.settings.b1) < 1e-4);
  CHECK(std::abs(res.settings.a2 - res.settings.b2) < 1e-4);
  CHECK(res.settings.a1.real() >= 0.0);  // canonical sign
  CHECK_FALSE(res.complex_settings);
}

TEST_CASE("TMSV maximum violation at perfect parameters") {
  const auto res =
      maximize_ch(StateKind::tmsv(0.0), SetupParams(1, 1, 1), SimplexConfig{});
  CHECK(res.value > 0.1);
  CHECK_FALSE(res.relabeled);
  // opposite-sign pairs and moderate squeezing
  CHECK(std::abs(res.settings.a1 + res.settings.b1) < 1e-4);
  CHECK(std::abs(res.settings.a2 + res.settings.b2) < 1e-4);
  REQUIRE(res.settings.r.has_value());
  CHECK(*res.settings.r < 1.5);
}

TEST_CASE("no violation well below threshold, confirmed by a grid search") {
  const SetupParams p(0.5, 1.0, 1.0);
  SimplexConfig cfg;
  cfg.restarts = 16;
  const auto res = maximize_ch(StateKind::single_photon(), p, cfg);
  CHECK(res.value <= 0.0);

  // Brute-force scan, independent of the simplex: both facets over real
  // pairwise-equal and opposite-sign quadruples, plus random complex probes.
  double best = -1e9;
  const StateKind sp = StateKind::single_photon();
  for (int i = -40; i <= 40; ++i) {
    for (int j = -40; j <= 40; ++j) {
      const double x = 0.05 * i, y = 0.05 * j;
      for (int pattern = 0; pattern < 2; ++pattern) {
        DisplacementSettings d;
        d.a1 = {x, 0};
        d.a2 = {y, 0};
        d.b1 = pattern ? Amplitude{-x, 0} : Amplitude{x, 0};
        d.b2 = pattern ? Amplitude{-y, 0} : Amplitude{y, 0};
        const double ch = ch_combination(sp, d, p);
        best = std::max({best, ch, -1.0 - ch});
      }
    }
  }
  SplitMix64 gen(4242);
  for (int k = 0; k < 20000; ++k) {
    DisplacementSettings d;
    d.a1 = {gen.uniform(-2, 2), 0};
    d.a2 = {gen.uniform(-2, 2), gen.uniform(-2, 2)};
    d.b1 = {gen.uniform(-2, 2), gen.uniform(-2, 2)};
    d.b2 = {gen.uniform(-2, 2), gen.uniform(-2, 2)};
    const double ch = ch_combination(sp, d, p);
    best = std::max({best, ch, -1.0 - ch});
  }
  CHECK(best <= 0.0);
}

TEST_CASE("determinism: same seed, same result, any worker count") {
  SimplexConfig cfg;
  cfg.restarts = 12;
  cfg.rng_seed = 555;
  const SetupParams p(0.9, 0.95, 1.0);
  const auto one = maximize_ch(StateKind::tmsv(0.0), p, cfg);
  cfg.workers = 2;
  const auto two = maximize_ch(StateKind::tmsv(0.0), p, cfg);
  CHECK(one.value == two.value);
  CHECK(one.settings.a1 == two.settings.a1);
  CHECK(one.settings.a2 == two.settings.a2);
  CHECK(one.settings.b1 == two.settings.b1);
  CHECK(one.settings.b2 == two.settings.b2);
  CHECK(one.settings.r.value() == two.settings.r.value());

  cfg.rng_seed = 556;
  const auto other = maximize_ch(StateKind::tmsv(0.0), p, cfg);
  // different seed may land on a different (gauge-equivalent) optimum
  CHECK(std::abs(other.value - one.value) < 1e-7);
}

TEST_CASE("violation shrinks as imperfections grow") {
  SimplexConfig cfg;
  cfg.restarts = 12;
  const StateKind sp = StateKind::single_photon();
  const double v100 = maximize_ch(sp, SetupParams(1.0, 1, 1), cfg).value;
  const double v92 = maximize_ch(sp, SetupParams(0.92, 1, 1), cfg).value;
  const double v86 = maximize_ch(sp, SetupParams(0.86, 1, 1), cfg).value;
  CHECK(v100 > v92 - 1e-6);
  CHECK(v92 > v86 - 1e-6);

  const double vxi = maximize_ch(sp, SetupParams(1.0, 0.9, 1), cfg).value;
  CHECK(v100 > vxi - 1e-6);
  const double vpd = maximize_ch(sp, SetupParams(1.0, 1, 0.95), cfg).value;
  CHECK(v100 > vpd - 1e-6);
}

TEST_CASE("config validation") {
  SimplexConfig cfg;
  cfg.expansion = 0.9;
  CHECK_THROWS_AS(cfg.validate(), std::domain_error);
  cfg = {};
  cfg.contraction = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::domain_error);
  cfg = {};
  cfg.reflection = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::domain_error);
  cfg = {};
  cfg.shrink = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::domain_error);
}
