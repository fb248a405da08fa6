#pragma once

#include <nlohmann/json.hpp>

#include "qwadg/adg.hpp"
#include "qwadg/patterns2d.hpp"
#include "qwadg/targets.hpp"

namespace qwadg {

inline const char* to_string(WalkKind kind) {
  switch (kind) {
    case WalkKind::DTQW:
      return "dtqw";
    case WalkKind::SSQW:
      return "ssqw";
    default:
      return "entangled2d";
  }
}

inline const char* to_string(CostKind kind) {
  return kind == CostKind::MSE ? "mse" : "kl";
}

inline void to_json(nlohmann::json& j, const TargetDistribution& t) {
  j = {{"name", t.name},
       {"shape", t.shape},
       {"probabilities", t.probabilities},
       {"grid_labels", t.grid_labels}};
}

inline void to_json(nlohmann::json& j, const OptimizerConfig& c) {
  j = {{"cost", to_string(c.cost)},
       {"eta_theta", c.eta_theta},
       {"eta_phi", c.eta_phi},
       {"eta_lambda", c.eta_lambda},
       {"fd_step", c.fd_step},
       {"max_iters", c.max_iters},
       {"tol", c.tol},
       {"restarts", c.restarts},
       {"seed", c.seed},
       {"kl_epsilon", c.kl_epsilon},
       {"jobs", c.jobs},
       {"freeze_interaction", c.freeze_interaction}};
}

inline void to_json(nlohmann::json& j, const OptimizationTrace& t) {
  j = {{"cost_history", t.cost_history},
       {"best_params", t.best_params},
       {"best_cost", t.best_cost},
       {"iterations_run", t.iterations_run},
       {"wall_time_s", t.wall_time_s},
       {"seed", t.seed}};
}

inline void to_json(nlohmann::json& j, const SweepCell& c) {
  double mean = 0.0, var = 0.0;
  for (double t : c.wall_times_s) mean += t;
  mean /= static_cast<double>(c.wall_times_s.size());
  for (double t : c.wall_times_s) var += (t - mean) * (t - mean);
  var /= static_cast<double>(c.wall_times_s.size());
  j = {{"coins", c.coins},
       {"final_errors", c.final_errors},
       {"wall_times_s", c.wall_times_s},
       {"mean_wall_time_s", mean},
       {"stddev_wall_time_s", std::sqrt(var)},
       {"best_error", c.best_error},
       {"best_params", c.best_params},
       {"best_fit", c.best_fit}};
}

inline void to_json(nlohmann::json& j, const SweepReport& r) {
  j = {{"target", r.target_name},
       {"kind", to_string(r.kind)},
       {"position_qubits", r.position_qubits},
       {"repetitions", r.repetitions},
       {"seed", r.seed},
       {"cells", r.cells}};
}

inline void to_json(nlohmann::json& j, const Pattern2DResult& r) {
  j = {{"digit", r.digit},
       {"target", r.target},
       {"fitted", r.fitted},
       {"fidelity", r.fidelity},
       {"trace",
        {{"best_cost", r.trace.best_cost},
         {"iterations_run", r.trace.iterations_run},
         {"wall_time_s", r.trace.wall_time_s},
         {"seed", r.trace.seed}}}};
}

}  // namespace qwadg
