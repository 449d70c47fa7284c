#include "bellhom/run_config.hpp"

#include <nlohmann/json.hpp>

namespace bellhom {

using nlohmann::ordered_json;

StateKind RunConfig::make_state() const {
  if (state == "single-photon") return StateKind::single_photon();
  if (state == "tmsv") return StateKind::tmsv(0.0);
  throw std::domain_error("unknown state '" + state +
                          "' (expected single-photon or tmsv)");
}

SetupParams RunConfig::make_setup() const {
  return SetupParams(eta_tilde, xi, p_dark);
}

SweepOptions RunConfig::make_sweep_options() const {
  SweepOptions opts;
  opts.eta_range = {eta_min, eta_max};
  opts.xi_range = {xi_min, xi_max};
  opts.eta_resolution = resolution;
  opts.xi_resolution = resolution;
  opts.p_dark = p_dark;
  opts.workers = workers;
  opts.warm_start = warm_start;
  return opts;
}

std::string RunConfig::to_json() const {
  ordered_json j;
  j["state"] = state;
  j["eta_tilde"] = eta_tilde;
  j["xi"] = xi;
  j["p_dark"] = p_dark;
  j["simplex"] = {{"reflection", simplex.reflection},
                  {"expansion", simplex.expansion},
                  {"contraction", simplex.contraction},
                  {"shrink", simplex.shrink},
                  {"f_tol", simplex.f_tol},
                  {"max_iters", simplex.max_iters},
                  {"restarts", simplex.restarts},
                  {"init_box", simplex.init_box},
                  {"rng_seed", simplex.rng_seed},
                  {"structured_starts", simplex.structured_starts}};
  j["eta_min"] = eta_min;
  j["eta_max"] = eta_max;
  j["xi_min"] = xi_min;
  j["xi_max"] = xi_max;
  j["resolution"] = resolution;
  j["warm_start"] = warm_start;
  // output_path is deliberately not echoed: the artifact's content must not
  // depend on where it is written.
  j["threshold_tol"] = threshold_tol;
  j["contour_offset"] = contour_offset;
  j["fock_dim"] = fock_dim;
  j["output_format"] = output_format;
  j["workers"] = workers;
  return j.dump();
}

RunConfig RunConfig::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  RunConfig c;
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  get("state", c.state);
  get("eta_tilde", c.eta_tilde);
  get("xi", c.xi);
  get("p_dark", c.p_dark);
  if (j.contains("simplex")) {
    const auto& s = j.at("simplex");
    auto gets = [&](const char* key, auto& field) {
      if (s.contains(key))
        field = s.at(key).get<std::decay_t<decltype(field)>>();
    };
    gets("reflection", c.simplex.reflection);
    gets("expansion", c.simplex.expansion);
    gets("contraction", c.simplex.contraction);
    gets("shrink", c.simplex.shrink);
    gets("f_tol", c.simplex.f_tol);
    gets("max_iters", c.simplex.max_iters);
    gets("restarts", c.simplex.restarts);
    gets("init_box", c.simplex.init_box);
    gets("rng_seed", c.simplex.rng_seed);
    gets("structured_starts", c.simplex.structured_starts);
  }
  get("eta_min", c.eta_min);
  get("eta_max", c.eta_max);
  get("xi_min", c.xi_min);
  get("xi_max", c.xi_max);
  get("resolution", c.resolution);
  get("warm_start", c.warm_start);
  get("threshold_tol", c.threshold_tol);
  get("contour_offset", c.contour_offset);
  get("fock_dim", c.fock_dim);
  get("output_path", c.output_path);
  get("output_format", c.output_format);
  get("workers", c.workers);
  return c;
}

}  // namespace bellhom
