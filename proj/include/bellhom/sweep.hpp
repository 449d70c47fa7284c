#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bellhom/optimize.hpp"

namespace bellhom {

/// Maximized CH violation over an (eta_tilde, xi) lattice with the winning
/// settings per cell.  Cells are stored row-major as [eta index][xi index].
struct SweepGrid {
  StateKind state;
  double p_dark = 1.0;
  std::uint64_t base_seed = 0;
  std::vector<double> eta_axis;
  std::vector<double> xi_axis;
  std::vector<double> ch_values;
  std::vector<DisplacementSettings> settings;
  std::vector<std::uint8_t> converged;

  std::size_t index(std::size_t i, std::size_t j) const {
    return i * xi_axis.size() + j;
  }
  double ch(std::size_t i, std::size_t j) const {
    return ch_values[index(i, j)];
  }
};

struct SweepOptions {
  std::pair<double, double> eta_range{0.0, 1.0};  // (lo, hi]; lo=0 excluded
  std::pair<double, double> xi_range{0.0, 1.0};
  int eta_resolution = 50;
  int xi_resolution = 50;
  double p_dark = 1.0;
  int workers = 1;
  bool warm_start = false;  // additionally seed each cell from its row neighbor
};

/// Per-cell RNG seed, derived so that execution order never matters.
std::uint64_t cell_seed(std::uint64_t base, std::size_t i, std::size_t j);

/// Runs maximize_ch on every lattice cell.  Cell (i, j) uses the seed
/// cell_seed(cfg.rng_seed, i, j); recomputing a single cell in isolation
/// reproduces the sweep value bit-exactly (warm_start off).
SweepGrid sweep_ch(const StateKind& state, const SweepOptions& opts,
                   const SimplexConfig& cfg);

struct ThresholdResult {
  double eta_threshold = 0.0;
  double xi = 1.0;
  double p_dark = 1.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double tol = 0.0;
};

/// Minimum overall efficiency for which the maximal CH violation exceeds
/// `offset` (default the 1e-3 contour level used for the violation masks), by
/// bisection at fixed xi and p_dark.  Throws std::runtime_error when no sign
/// change exists in (0, 1].
ThresholdResult find_eta_threshold(const StateKind& state, double xi,
                                   double p_dark, double tol,
                                   const SimplexConfig& cfg,
                                   double offset = 1e-3);

enum class GridFormat { Csv, Json };

/// Deterministic serialization; all floats carry 17 significant digits.  CSV
/// columns: eta,xi,ch,re_a1,re_a2,im_a2,re_b1,im_b1,re_b2,im_b2[,r],mask with
/// mask = 1 iff ch > contour_offset.  The JSON form round-trips byte-exactly
/// through parse_grid_json/export_grid at a fixed contour_offset.
std::string export_grid(const SweepGrid& grid, GridFormat format,
                        double contour_offset = 1e-3);

SweepGrid parse_grid_json(const std::string& text);

}  // namespace bellhom
