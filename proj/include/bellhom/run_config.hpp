#pragma once

#include <string>

#include "bellhom/optimize.hpp"
#include "bellhom/sweep.hpp"

namespace bellhom {

/// Everything a CLI run needs; a run is reproducible from its RunConfig
/// alone.  Serialized as JSON and echoed into output files.
struct RunConfig {
  std::string state = "single-photon";  // or "tmsv"
  double eta_tilde = 1.0;
  double xi = 1.0;
  double p_dark = 1.0;

  SimplexConfig simplex;

  // sweep
  double eta_min = 0.0;
  double eta_max = 1.0;
  double xi_min = 0.0;
  double xi_max = 1.0;
  int resolution = 50;
  bool warm_start = false;

  // threshold
  double threshold_tol = 1e-3;
  double contour_offset = 1e-3;

  // oracle
  int fock_dim = 60;

  std::string output_path;      // empty: stdout
  std::string output_format = "csv";  // or "json"
  int workers = 1;

  StateKind make_state() const;
  SetupParams make_setup() const;
  SweepOptions make_sweep_options() const;

  std::string to_json() const;
  static RunConfig from_json(const std::string& text);
};

}  // namespace bellhom
