// bellhom: feasibility analysis of Clauser-Horne tests with unbalanced
// homodyne detection -- CH optimization, parameter sweeps, efficiency
// thresholds, Fock-oracle verification, and count-statistics utilities.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bellhom/detection.hpp"
#include "bellhom/fock_oracle.hpp"
#include "bellhom/run_config.hpp"
#include "bellhom/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitVerification = 4;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_output(const bellhom::RunConfig& cfg, const std::string& body,
                  bool comment_header) {
  std::string text;
  if (comment_header) text = "# " + cfg.to_json() + "\n";
  text += body;
  if (cfg.output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + cfg.output_path);
  out << text;
}

std::string settings_json(const bellhom::DisplacementSettings& d) {
  std::string s = "{\"a1\":[" + fmt17(d.a1.real()) + "," + fmt17(d.a1.imag()) +
                  "],\"a2\":[" + fmt17(d.a2.real()) + "," + fmt17(d.a2.imag()) +
                  "],\"b1\":[" + fmt17(d.b1.real()) + "," + fmt17(d.b1.imag()) +
                  "],\"b2\":[" + fmt17(d.b2.real()) + "," + fmt17(d.b2.imag()) +
                  "]";
  if (d.r) s += ",\"r\":" + fmt17(*d.r);
  return s + "}";
}

int run(int argc, char** argv) {
  CLI::App app{
      "Clauser-Horne violation analysis for unbalanced homodyne detection"};
  app.require_subcommand(1);

  bellhom::RunConfig cfg;
  if (const char* env = std::getenv("BELLHOM_WORKERS"))
    cfg.workers = std::max(1, std::atoi(env));

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (flags override)")
      ->check(CLI::ExistingFile);

  // Two-phase parse: load the config file first, then let explicit flags win.
  {
    CLI::App pre;
    pre.allow_extras();
    pre.set_help_flag();
    std::string path;
    pre.add_option("--config", path);
    try {
      pre.parse(argc, argv);
    } catch (const CLI::ParseError&) {
      // full parse below reports the error
    }
    if (!path.empty()) {
      std::ifstream in(path);
      if (!in) throw std::runtime_error("cannot read config " + path);
      std::stringstream ss;
      ss << in.rdbuf();
      cfg = bellhom::RunConfig::from_json(ss.str());
    }
  }

  std::vector<std::pair<CLI::App*, CLI::Option*>> state_options;
  auto add_common = [&](CLI::App* cmd, bool needs_state) {
    cmd->fallthrough();  // app-level --config may follow the subcommand
    auto* opt = cmd->add_option("--state", cfg.state,
                                "input state: single-photon or tmsv");
    opt->check(CLI::IsMember({"single-photon", "tmsv"}));
    if (needs_state) state_options.emplace_back(cmd, opt);
    cmd->add_option("--eta", cfg.eta_tilde, "combined efficiency eta*T");
    cmd->add_option("--xi", cfg.xi, "mode matching parameter");
    cmd->add_option("--pdark", cfg.p_dark, "zero-dark-count probability");
    cmd->add_option("--seed", cfg.simplex.rng_seed, "RNG seed");
    cmd->add_option("--restarts", cfg.simplex.restarts, "random restarts");
    cmd->add_option("--ftol", cfg.simplex.f_tol, "simplex value tolerance");
    cmd->add_option("--max-iters", cfg.simplex.max_iters, "simplex iterations");
    cmd->add_option("--init-box", cfg.simplex.init_box,
                    "half-width of the random start box");
    cmd->add_option("--workers", cfg.workers, "worker thread count");
    cmd->add_option("--output", cfg.output_path, "output file (default stdout)");
  };

  auto* opt_cmd =
      app.add_subcommand("ch-optimize", "maximize the CH violation");
  add_common(opt_cmd, true);

  auto* sweep_cmd =
      app.add_subcommand("sweep", "CH violation over an (eta, xi) grid");
  add_common(sweep_cmd, true);
  sweep_cmd->add_option("--eta-min", cfg.eta_min, "grid lower eta bound");
  sweep_cmd->add_option("--eta-max", cfg.eta_max, "grid upper eta bound");
  sweep_cmd->add_option("--xi-min", cfg.xi_min, "grid lower xi bound");
  sweep_cmd->add_option("--xi-max", cfg.xi_max, "grid upper xi bound");
  sweep_cmd->add_option("--resolution", cfg.resolution, "cells per axis");
  sweep_cmd->add_flag("--warm-start", cfg.warm_start,
                      "seed each cell from its row neighbor");
  sweep_cmd->add_option("--format", cfg.output_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_option("--contour-offset", cfg.contour_offset,
                        "violation mask level");

  auto* thr_cmd = app.add_subcommand(
      "threshold", "minimum efficiency for a CH violation at fixed xi");
  add_common(thr_cmd, true);
  thr_cmd->add_option("--tol", cfg.threshold_tol, "bisection tolerance");
  thr_cmd->add_option("--offset", cfg.contour_offset,
                      "violation level defining the threshold");

  auto* verify_cmd = app.add_subcommand(
      "verify", "run the oracle/factorization/transform/lhv check suites");
  verify_cmd->fallthrough();
  std::string suite = "all";
  verify_cmd
      ->add_option("--suite", suite,
                   "oracle, factorization, transform, lhv, or all")
      ->check(CLI::IsMember({"oracle", "factorization", "transform", "lhv",
                             "all"}));

  auto* pis_cmd = app.add_subcommand(
      "pi-s", "evaluate Pi(s) for a count distribution read from CSV");
  std::string pis_input;
  double s_value = -1.0;
  pis_cmd->add_option("--input", pis_input, "CSV file, one probability per line")
      ->required()
      ->check(CLI::ExistingFile);
  pis_cmd->add_option("--s", s_value, "ordering parameter (s <= 0)");

  auto* vis_cmd =
      app.add_subcommand("visibility", "convert mode matching <-> visibility");
  double vis_xi = -1.0, vis_v = -1.0;
  vis_cmd->add_option("--xi", vis_xi, "mode matching to convert");
  vis_cmd->add_option("--visibility", vis_v, "visibility to convert");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  // A state must come from either the command line or the config file.
  for (auto& [cmd, opt] : state_options) {
    if (cmd->parsed() && opt->count() == 0 && config_path.empty()) {
      std::cerr << cmd->get_name() << ": --state is required\n";
      return kExitUsage;
    }
  }

  cfg.simplex.workers = cfg.workers;

  if (*opt_cmd) {
    const auto result = bellhom::maximize_ch(cfg.make_state(),
                                             cfg.make_setup(), cfg.simplex);
    std::string body = "{\"value\":" + fmt17(result.value);
    body += ",\"converged\":" + std::string(result.converged ? "true" : "false");
    body += ",\"restarts_used\":" + std::to_string(result.restarts_used);
    body += ",\"relabeled\":" + std::string(result.relabeled ? "true" : "false");
    body += ",\"complex_settings\":" +
            std::string(result.complex_settings ? "true" : "false");
    body += ",\"settings\":" + settings_json(result.settings);
    body += ",\"config\":" + cfg.to_json() + "}\n";
    write_output(cfg, body, false);
    return kExitOk;
  }
  if (*sweep_cmd) {
    bellhom::SimplexConfig cell_cfg = cfg.simplex;
    cell_cfg.workers = 1;
    const auto grid = bellhom::sweep_ch(cfg.make_state(),
                                        cfg.make_sweep_options(), cell_cfg);
    const auto format = cfg.output_format == "json"
                            ? bellhom::GridFormat::Json
                            : bellhom::GridFormat::Csv;
    std::string body = bellhom::export_grid(grid, format, cfg.contour_offset);
    if (format == bellhom::GridFormat::Json) {
      // JSON cannot carry comments; embed the effective config instead.
      body.insert(1, "\"config\":" + cfg.to_json() + ",");
      body += "\n";
      write_output(cfg, body, false);
    } else {
      write_output(cfg, body, true);
    }
    return kExitOk;
  }
  if (*thr_cmd) {
    const auto res = bellhom::find_eta_threshold(
        cfg.make_state(), cfg.xi, cfg.p_dark, cfg.threshold_tol, cfg.simplex,
        cfg.contour_offset);
    std::string body = "{\"eta_threshold\":" + fmt17(res.eta_threshold);
    body += ",\"xi\":" + fmt17(res.xi);
    body += ",\"p_dark\":" + fmt17(res.p_dark);
    body += ",\"bracket\":[" + fmt17(res.bracket_lo) + "," +
            fmt17(res.bracket_hi) + "]";
    body += ",\"tol\":" + fmt17(res.tol);
    body += ",\"config\":" + cfg.to_json() + "}\n";
    write_output(cfg, body, false);
    return kExitOk;
  }
  if (*verify_cmd) {
    std::vector<bellhom::SuiteResult> results;
    if (suite == "all") {
      results = bellhom::verify_all();
    } else if (suite == "oracle") {
      results = {bellhom::verify_oracle_equivalence()};
    } else if (suite == "factorization") {
      results = {bellhom::verify_factorization()};
    } else if (suite == "transform") {
      results = {bellhom::verify_transform()};
    } else {
      results = {bellhom::verify_lhv_kernel()};
    }
    bool all_pass = true;
    for (const auto& r : results) {
      std::printf("[%s] %s: %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                  r.detail.c_str());
      all_pass = all_pass && r.pass;
    }
    return all_pass ? kExitOk : kExitVerification;
  }
  if (*pis_cmd) {
    std::ifstream in(pis_input);
    std::vector<double> probs;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::stringstream ss(line);
      std::string tok;
      while (std::getline(ss, tok, ',')) probs.push_back(std::stod(tok));
    }
    const bellhom::CountDistribution dist(std::move(probs));
    std::printf("%s\n", fmt17(pi_s(dist, bellhom::OrderingParam(s_value))).c_str());
    return kExitOk;
  }
  if (*vis_cmd) {
    if ((vis_xi < 0.0) == (vis_v < 0.0)) {
      std::cerr << "visibility: provide exactly one of --xi, --visibility\n";
      return kExitUsage;
    }
    if (vis_xi >= 0.0)
      std::printf("visibility %s\n", fmt17(bellhom::xi_to_visibility(vis_xi)).c_str());
    else
      std::printf("xi %s\n", fmt17(bellhom::visibility_to_xi(vis_v)).c_str());
    return kExitOk;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::ParseError&) {
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}
