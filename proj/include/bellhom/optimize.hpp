#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "bellhom/bell.hpp"

namespace bellhom {

/// Downhill-simplex settings.  Coefficients default to the classic
/// reflection/expansion/contraction/shrink values; restarts draw starting
/// points uniformly from [-init_box, init_box] per coordinate (squeezing
/// starts in [0, 2]).  When structured_starts is set, a fixed grid of
/// pattern-based starting points is searched in addition to the random ones --
/// without it the small violation basins near the efficiency thresholds are
/// missed.
struct SimplexConfig {
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  double f_tol = 1e-10;
  int max_iters = 5000;
  int restarts = 32;
  double init_box = 3.0;
  std::uint64_t rng_seed = 20020412;
  bool structured_starts = true;
  int workers = 1;

  void validate() const;
};

/// Flat coordinate vector for the simplex: 7 entries for the single photon
/// (Re a1, Re a2, Im a2, Re b1, Im b1, Re b2, Im b2; gauge Im a1 = 0) and an
/// eighth |r| entry for TMSV.
using ParamVector = std::vector<double>;

DisplacementSettings params_to_settings(std::span<const double> coords,
                                        bool tmsv);
ParamVector settings_to_params(const DisplacementSettings& d, bool tmsv);

struct NelderMeadResult {
  ParamVector best;
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Maximizes the objective with the Nelder-Mead simplex; deterministic given
/// the start and configuration.  Convergence means the spread of vertex
/// values fell below f_tol.
NelderMeadResult nelder_mead(
    const std::function<double(std::span<const double>)>& objective,
    const ParamVector& start, const SimplexConfig& cfg);

/// Maximal Clauser-Horne violation over displacement settings (and squeezing
/// for TMSV).  Both CH facets are searched -- the combination itself and its
/// outcome-relabeled mirror -1-CH -- and the result is reported as a positive
/// violation value (see CHResult).  Restarts are independent and may run on
/// cfg.workers threads; results are bit-identical for any worker count.
CHResult maximize_ch(const StateKind& state, const SetupParams& p,
                     const SimplexConfig& cfg);

}  // namespace bellhom
