#include "bellhom/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include <nlohmann/json.hpp>

#include "bellhom/rng.hpp"

namespace bellhom {

namespace {

std::vector<double> make_axis(std::pair<double, double> range, int resolution) {
  require(resolution >= 2, "resolution must be at least 2 per axis");
  require(range.first >= 0.0 && range.second <= 1.0 &&
              range.first < range.second,
          "sweep ranges must lie within (0, 1]");
  std::vector<double> axis(resolution);
  if (range.first == 0.0) {
    // Left-open interval: the first cell sits one step in, the last at hi.
    for (int k = 0; k < resolution; ++k)
      axis[k] = range.second * (k + 1) / resolution;
  } else {
    const double span = range.second - range.first;
    for (int k = 0; k < resolution; ++k)
      axis[k] = range.first + span * k / (resolution - 1);
  }
  return axis;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::uint64_t cell_seed(std::uint64_t base, std::size_t i, std::size_t j) {
  return derive_seed(base, i, j);
}

SweepGrid sweep_ch(const StateKind& state, const SweepOptions& opts,
                   const SimplexConfig& cfg) {
  cfg.validate();
  require(opts.p_dark > 0.0 && opts.p_dark <= 1.0, "p_dark must lie in (0, 1]");
  require(opts.workers >= 1, "worker count must be at least 1");
  SweepGrid grid;
  grid.state = state;
  grid.p_dark = opts.p_dark;
  grid.base_seed = cfg.rng_seed;
  grid.eta_axis = make_axis(opts.eta_range, opts.eta_resolution);
  grid.xi_axis = make_axis(opts.xi_range, opts.xi_resolution);
  const std::size_t rows = grid.eta_axis.size();
  const std::size_t cols = grid.xi_axis.size();
  grid.ch_values.assign(rows * cols, 0.0);
  grid.settings.assign(rows * cols, {});
  grid.converged.assign(rows * cols, 0);

  auto run_cell = [&](std::size_t i, std::size_t j,
                      const DisplacementSettings* warm) {
    SimplexConfig cell_cfg = cfg;
    cell_cfg.rng_seed = cell_seed(cfg.rng_seed, i, j);
    cell_cfg.workers = 1;
    const SetupParams p(grid.eta_axis[i], grid.xi_axis[j], opts.p_dark);
    CHResult best = maximize_ch(state, p, cell_cfg);
    if (warm) {
      // One extra simplex run seeded at the neighbor's optimum.
      auto obj = [&](std::span<const double> c) {
        const double ch =
            ch_combination(state, params_to_settings(c, state.is_tmsv()), p);
        return best.relabeled ? -1.0 - ch : ch;
      };
      const auto warm_run = nelder_mead(
          obj, settings_to_params(*warm, state.is_tmsv()), cell_cfg);
      if (warm_run.value > best.value) {
        best.value = warm_run.value;
        best.settings = params_to_settings(warm_run.best, state.is_tmsv());
        best.converged = warm_run.converged;
      }
    }
    grid.ch_values[grid.index(i, j)] = best.value;
    grid.settings[grid.index(i, j)] = best.settings;
    grid.converged[grid.index(i, j)] = best.converged ? 1 : 0;
  };

  if (opts.warm_start) {
    // Row-sequential so each cell can reuse its left neighbor; rows are
    // independent and parallel.
    std::atomic<std::size_t> next_row{0};
    auto row_work = [&]() {
      for (;;) {
        const std::size_t i = next_row.fetch_add(1);
        if (i >= rows) return;
        for (std::size_t j = 0; j < cols; ++j)
          run_cell(i, j, j > 0 ? &grid.settings[grid.index(i, j - 1)] : nullptr);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < opts.workers; ++t) pool.emplace_back(row_work);
    row_work();
    for (auto& th : pool) th.join();
  } else {
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
      for (;;) {
        const std::size_t k = next.fetch_add(1);
        if (k >= rows * cols) return;
        run_cell(k / cols, k % cols, nullptr);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < opts.workers; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
  }
  return grid;
}

ThresholdResult find_eta_threshold(const StateKind& state, double xi,
                                   double p_dark, double tol,
                                   const SimplexConfig& cfg, double offset) {
  require(tol >= 1e-5, "threshold tolerance must be at least 1e-5");
  require(xi > 0.0 && xi <= 1.0, "xi must lie in (0, 1]");
  auto violation = [&](double eta) {
    return maximize_ch(state, SetupParams(eta, xi, p_dark), cfg).value - offset;
  };
  double lo = 0.05;
  double hi = 1.0;
  if (violation(hi) <= 0.0)
    throw std::runtime_error(
        "find_eta_threshold: no sign change in (0, 1]; the CH combination is "
        "never violated at this xi and p_dark");
  if (violation(lo) > 0.0) {
    // Violated already at the smallest probed efficiency; tighten downward.
    hi = lo;
    lo = 1e-3;
    if (violation(lo) > 0.0)
      throw std::runtime_error(
          "find_eta_threshold: violated across (0, 1]; no threshold exists");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (violation(mid) > 0.0 ? hi : lo) = mid;
  }
  return {0.5 * (lo + hi), xi, p_dark, lo, hi, tol};
}

namespace {

void append_cell_columns(std::string& out, const SweepGrid& grid,
                         std::size_t idx, bool tmsv, double contour_offset) {
  const auto& d = grid.settings[idx];
  out += fmt17(grid.ch_values[idx]);
  for (double v : {d.a1.real(), d.a2.real(), d.a2.imag(), d.b1.real(),
                   d.b1.imag(), d.b2.real(), d.b2.imag()}) {
    out += ',';
    out += fmt17(v);
  }
  if (tmsv) {
    out += ',';
    out += fmt17(d.r.value_or(0.0));
  }
  out += ',';
  out += grid.ch_values[idx] > contour_offset ? '1' : '0';
}

}  // namespace

std::string export_grid(const SweepGrid& grid, GridFormat format,
                        double contour_offset) {
  const bool tmsv = grid.state.is_tmsv();
  const std::size_t rows = grid.eta_axis.size();
  const std::size_t cols = grid.xi_axis.size();
  require(grid.ch_values.size() == rows * cols &&
              grid.settings.size() == rows * cols,
          "grid dimensions do not match its axes");

  std::string out;
  if (format == GridFormat::Csv) {
    out += "eta,xi,ch,re_a1,re_a2,im_a2,re_b1,im_b1,re_b2,im_b2";
    if (tmsv) out += ",r";
    out += ",mask\n";
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        out += fmt17(grid.eta_axis[i]);
        out += ',';
        out += fmt17(grid.xi_axis[j]);
        out += ',';
        append_cell_columns(out, grid, grid.index(i, j), tmsv, contour_offset);
        out += '\n';
      }
    }
    return out;
  }

  // Manual JSON writer: nlohmann's dump() prints shortest-round-trip floats,
  // while the interface pins 17 significant digits.
  auto arr = [&](const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (k) s += ',';
      s += fmt17(v[k]);
    }
    return s + "]";
  };
  out += "{\"state\":\"";
  out += tmsv ? "tmsv" : "single-photon";
  out += "\",\"p_dark\":" + fmt17(grid.p_dark);
  out += ",\"base_seed\":" + std::to_string(grid.base_seed);
  out += ",\"contour_offset\":" + fmt17(contour_offset);
  out += ",\"eta_axis\":" + arr(grid.eta_axis);
  out += ",\"xi_axis\":" + arr(grid.xi_axis);
  out += ",\"cells\":[";
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const std::size_t idx = grid.index(i, j);
      if (idx) out += ',';
      const auto& d = grid.settings[idx];
      out += "{\"ch\":" + fmt17(grid.ch_values[idx]);
      out += ",\"settings\":" +
             arr({d.a1.real(), d.a2.real(), d.a2.imag(), d.b1.real(),
                  d.b1.imag(), d.b2.real(), d.b2.imag()});
      if (tmsv) out += ",\"r\":" + fmt17(d.r.value_or(0.0));
      out += ",\"converged\":";
      out += grid.converged[idx] ? "true" : "false";
      out += ",\"mask\":";
      out += grid.ch_values[idx] > contour_offset ? "true" : "false";
      out += '}';
    }
  }
  out += "]}";
  return out;
}

SweepGrid parse_grid_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  SweepGrid grid;
  const std::string state = j.at("state").get<std::string>();
  grid.p_dark = j.at("p_dark").get<double>();
  grid.base_seed = j.at("base_seed").get<std::uint64_t>();
  grid.eta_axis = j.at("eta_axis").get<std::vector<double>>();
  grid.xi_axis = j.at("xi_axis").get<std::vector<double>>();
  const auto& cells = j.at("cells");
  const bool tmsv = state == "tmsv";
  grid.state = tmsv ? StateKind::tmsv(0.0) : StateKind::single_photon();
  for (const auto& cell : cells) {
    grid.ch_values.push_back(cell.at("ch").get<double>());
    const auto c = cell.at("settings").get<std::vector<double>>();
    DisplacementSettings d;
    d.a1 = {c.at(0), 0.0};
    d.a2 = {c.at(1), c.at(2)};
    d.b1 = {c.at(3), c.at(4)};
    d.b2 = {c.at(5), c.at(6)};
    if (tmsv) d.r = cell.at("r").get<double>();
    grid.settings.push_back(d);
    grid.converged.push_back(cell.at("converged").get<bool>() ? 1 : 0);
  }
  require(grid.ch_values.size() == grid.eta_axis.size() * grid.xi_axis.size(),
          "grid JSON has inconsistent dimensions");
  return grid;
}

}  // namespace bellhom
