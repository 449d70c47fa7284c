#include "bellhom/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "bellhom/rng.hpp"

namespace bellhom {

void SimplexConfig::validate() const {
  require(reflection > 0.0, "reflection coefficient must be positive");
  require(expansion > 1.0, "expansion coefficient must exceed 1");
  require(contraction > 0.0 && contraction < 1.0,
          "contraction coefficient must lie in (0, 1)");
  require(shrink > 0.0 && shrink < 1.0, "shrink coefficient must lie in (0, 1)");
  require(f_tol > 0.0, "f_tol must be positive");
  require(max_iters > 0 && restarts >= 0, "iteration counts must be positive");
  require(init_box > 0.0, "init_box must be positive");
  require(workers >= 1, "worker count must be at least 1");
}

DisplacementSettings params_to_settings(std::span<const double> c, bool tmsv) {
  require(c.size() == std::size_t(tmsv ? 8 : 7),
          "parameter vector has wrong length");
  DisplacementSettings d;
  d.a1 = {c[0], 0.0};
  d.a2 = {c[1], c[2]};
  d.b1 = {c[3], c[4]};
  d.b2 = {c[5], c[6]};
  if (tmsv) d.r = std::min(std::abs(c[7]), kMaxSqueezing);
  return d;
}

ParamVector settings_to_params(const DisplacementSettings& d, bool tmsv) {
  require(std::abs(d.a1.imag()) == 0.0,
          "settings must be in the Im(a1) = 0 gauge");
  ParamVector c = {d.a1.real(), d.a2.real(), d.a2.imag(), d.b1.real(),
                   d.b1.imag(), d.b2.real(), d.b2.imag()};
  if (tmsv) c.push_back(d.r.value_or(0.0));
  return c;
}

NelderMeadResult nelder_mead(
    const std::function<double(std::span<const double>)>& objective,
    const ParamVector& start, const SimplexConfig& cfg) {
  cfg.validate();
  const std::size_t n = start.size();
  require(n >= 1, "empty parameter vector");
  // Maximization as minimization of the negated objective.
  auto f = [&](const ParamVector& x) {
    return -objective(std::span<const double>(x));
  };

  std::vector<ParamVector> simplex(n + 1, start);
  for (std::size_t j = 0; j < n; ++j)
    simplex[j + 1][j] += std::max(0.25, 0.1 * std::abs(start[j]));
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i <= n; ++i) fv[i] = f(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  int iter = 0;
  bool converged = false;
  for (; iter < cfg.max_iters; ++iter) {
    for (std::size_t i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order[0], worst = order[n], second = order[n - 1];
    if (fv[worst] - fv[best] < cfg.f_tol) {
      converged = true;
      break;
    }

    ParamVector centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
    }
    for (double& v : centroid) v /= double(n);

    auto blend = [&](double t) {
      ParamVector x(n);
      for (std::size_t j = 0; j < n; ++j)
        x[j] = centroid[j] + t * (centroid[j] - simplex[worst][j]);
      return x;
    };

    const ParamVector xr = blend(cfg.reflection);
    const double fr = f(xr);
    if (fr < fv[best]) {
      const ParamVector xe = blend(cfg.expansion);
      const double fe = f(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        fv[worst] = fe;
      } else {
        simplex[worst] = xr;
        fv[worst] = fr;
      }
      continue;
    }
    if (fr < fv[second]) {
      simplex[worst] = xr;
      fv[worst] = fr;
      continue;
    }
    // Contract, outside or inside depending on the reflected value.
    const bool outside = fr < fv[worst];
    const ParamVector xc = blend(outside ? cfg.contraction * cfg.reflection
                                         : -cfg.contraction);
    const double fc = f(xc);
    if (fc < std::min(fr, fv[worst])) {
      simplex[worst] = xc;
      fv[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < n; ++j)
        simplex[i][j] =
            simplex[best][j] + cfg.shrink * (simplex[i][j] - simplex[best][j]);
      fv[i] = f(simplex[i]);
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= n; ++i)
    if (fv[i] < fv[best]) best = i;
  return {simplex[best], -fv[best], converged, iter};
}

namespace {

// Pattern-based starting points covering the optimum families of both
// benchmark states: pairwise-equal and opposite-sign real quadruples over a
// small magnitude grid.
std::vector<ParamVector> structured_starts(bool tmsv) {
  static const double m1s[] = {0.05, 0.15, 0.35, 0.6};
  static const double m2s[] = {0.2, 0.45, 0.7, 1.0};
  static const double rs[] = {0.15, 0.45, 0.9};
  std::vector<ParamVector> out;
  for (double m1 : m1s) {
    for (double m2 : m2s) {
      for (int pattern = 0; pattern < 2; ++pattern) {
        const double sgn = pattern == 0 ? 1.0 : -1.0;  // b = +/- a
        DisplacementSettings d;
        d.a1 = {m1, 0.0};
        d.a2 = {-m2, 0.0};
        d.b1 = {sgn * m1, 0.0};
        d.b2 = {-sgn * m2, 0.0};
        if (tmsv) {
          for (double r : rs) {
            d.r = r;
            out.push_back(settings_to_params(d, true));
          }
        } else {
          out.push_back(settings_to_params(d, false));
        }
      }
    }
  }
  return out;
}

struct SideRun {
  bool relabeled = false;
  NelderMeadResult res;
};

// Canonical gauge for reporting: Im(a1) = 0 with Re(a1) >= 0.  The common
// phase (single photon) or conjugate phase pair (TMSV) leaves the CH
// combination invariant.
void canonicalize(DisplacementSettings& d, bool tmsv) {
  if (d.a1.real() < 0.0) {
    d.a1 = -d.a1;
    d.a2 = -d.a2;
    d.b1 = -d.b1;
    d.b2 = -d.b2;
    (void)tmsv;  // a sign flip is its own conjugate
  }
}

}  // namespace

CHResult maximize_ch(const StateKind& state, const SetupParams& p,
                     const SimplexConfig& cfg) {
  cfg.validate();
  const bool tmsv = state.is_tmsv();
  const std::size_t dims = tmsv ? 8 : 7;

  std::vector<ParamVector> starts;
  if (cfg.structured_starts) starts = structured_starts(tmsv);
  SplitMix64 gen(cfg.rng_seed);
  for (int k = 0; k < cfg.restarts; ++k) {
    ParamVector x(dims);
    for (std::size_t j = 0; j < 7; ++j)
      x[j] = gen.uniform(-cfg.init_box, cfg.init_box);
    if (tmsv) x[7] = gen.uniform(0.0, 2.0);
    starts.push_back(std::move(x));
  }

  auto raw_ch = [&](std::span<const double> c) {
    return ch_combination(state, params_to_settings(c, tmsv), p);
  };
  // value(side): the violation reached on that CH facet.
  auto objective = [&](bool relabeled) {
    return std::function<double(std::span<const double>)>(
        [&, relabeled](std::span<const double> c) {
          const double ch = raw_ch(c);
          return relabeled ? -1.0 - ch : ch;
        });
  };

  const std::size_t runs = 2 * starts.size();
  std::vector<SideRun> results(runs);
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= runs) return;
      const bool relabeled = i >= starts.size();
      const ParamVector& start = starts[i % starts.size()];
      results[i] = {relabeled, nelder_mead(objective(relabeled), start, cfg)};
    }
  };
  if (cfg.workers > 1) {
    std::vector<std::thread> pool;
    const int nthreads = std::min<std::size_t>(cfg.workers, runs);
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  } else {
    work();
  }

  // Deterministic merge: best value, ties to the lowest run index.
  std::size_t best = 0;
  for (std::size_t i = 1; i < runs; ++i)
    if (results[i].res.value > results[best].res.value) best = i;

  // Polish the winner with a tight simplex restarted at the optimum.
  SimplexConfig fine = cfg;
  fine.f_tol = std::min(cfg.f_tol, 1e-13);
  const auto polished = nelder_mead(objective(results[best].relabeled),
                                    results[best].res.best, fine);
  const NelderMeadResult& final_run =
      polished.value >= results[best].res.value ? polished : results[best].res;

  CHResult out;
  out.value = final_run.value;
  out.relabeled = results[best].relabeled;
  out.converged = results[best].res.converged && polished.converged;
  out.restarts_used = int(runs);
  out.settings = params_to_settings(final_run.best, tmsv);
  canonicalize(out.settings, tmsv);
  const double im_mag =
      std::max({std::abs(out.settings.a2.imag()), std::abs(out.settings.b1.imag()),
                std::abs(out.settings.b2.imag())});
  out.complex_settings = im_mag > 1e-3;
  return out;
}

}  // namespace bellhom
