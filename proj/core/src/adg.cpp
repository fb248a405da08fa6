#include "qwadg/adg.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <numbers>
#include <random>
#include <stdexcept>

namespace qwadg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_normalized(std::span<const double> p, const char* what) {
  double s = 0.0;
  for (double v : p) s += v;
  if (std::abs(s - 1.0) > 1e-8)
    throw std::invalid_argument(std::string(what) + " is not normalized");
}

void push_coin(std::vector<double>& out, const CoinParams& c) {
  out.push_back(c.theta);
  out.push_back(c.phi);
  out.push_back(c.lambda);
}

void push_entangled(std::vector<double>& out, const EntangledCoinParams& e) {
  push_coin(out, e.pre_a);
  push_coin(out, e.pre_b);
  out.push_back(e.interaction.a);
  out.push_back(e.interaction.b);
  out.push_back(e.interaction.c);
  push_coin(out, e.post_a);
  push_coin(out, e.post_b);
}

CoinParams pop_coin(std::span<const double> p, std::size_t& i) {
  CoinParams c(p[i], p[i + 1], p[i + 2]);
  i += 3;
  return c;
}

EntangledCoinParams pop_entangled(std::span<const double> p, std::size_t& i) {
  EntangledCoinParams e;
  e.pre_a = pop_coin(p, i);
  e.pre_b = pop_coin(p, i);
  e.interaction = {p[i], p[i + 1], p[i + 2]};
  i += 3;
  e.post_a = pop_coin(p, i);
  e.post_b = pop_coin(p, i);
  return e;
}

double eta_for(const OptimizerConfig& cfg, AngleRole role) {
  switch (role) {
    case AngleRole::Phi:
      return cfg.eta_phi;
    case AngleRole::Lambda:
      return cfg.eta_lambda;
    default:  // theta and interaction angles share the theta rate
      return cfg.eta_theta;
  }
}

double eval_cost(WalkSpec& scratch, std::span<const double> params,
                 const TargetDistribution& target, const OptimizerConfig& cfg) {
  set_params(scratch, params);
  const auto probs = position_probabilities(evolve(scratch));
  return cost(probs, target.probabilities, cfg.cost, cfg.kl_epsilon);
}

}  // namespace

void OptimizerConfig::validate() const {
  if (!(eta_theta > 0) || !(eta_phi > 0) || !(eta_lambda > 0))
    throw std::invalid_argument("learning rates must be > 0");
  if (!(fd_step > 0)) throw std::invalid_argument("fd_step must be > 0");
  if (max_iters < 0) throw std::invalid_argument("max_iters must be >= 0");
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (!(kl_epsilon > 0)) throw std::invalid_argument("kl_epsilon must be > 0");
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
}

double cost(std::span<const double> simulated, std::span<const double> target,
            CostKind kind, double kl_epsilon) {
  if (simulated.size() != target.size())
    throw std::invalid_argument("cost: length mismatch");
  check_normalized(simulated, "simulated distribution");
  check_normalized(target, "target distribution");

  if (kind == CostKind::MSE) {
    double s = 0.0;
    for (std::size_t i = 0; i < simulated.size(); ++i) {
      const double d = simulated[i] - target[i];
      s += d * d;
    }
    return s / static_cast<double>(simulated.size());
  }
  double s = 0.0;
  for (std::size_t i = 0; i < simulated.size(); ++i) {
    if (target[i] <= 0.0) continue;  // 0 ln 0 = 0
    s += target[i] * std::log(target[i] / std::max(simulated[i], kl_epsilon));
  }
  return s;
}

std::vector<double> flatten_params(const WalkSpec& spec) {
  std::vector<double> out;
  std::visit(
      [&](const auto& layers) {
        for (const auto& layer : layers) {
          using T = std::decay_t<decltype(layer)>;
          if constexpr (std::is_same_v<T, CoinParams>) {
            push_coin(out, layer);
          } else if constexpr (std::is_same_v<T, SsqwLayer>) {
            push_coin(out, layer.first);
            push_coin(out, layer.second);
          } else {
            push_entangled(out, layer.first);
            push_entangled(out, layer.second);
          }
        }
      },
      spec.layers);
  return out;
}

std::vector<AngleRole> param_roles(const WalkSpec& spec) {
  const int coins_per_layer = spec.kind == WalkKind::DTQW ? 1 : 2;
  std::vector<AngleRole> roles;
  for (int step = 0; step < spec.steps; ++step) {
    for (int c = 0; c < coins_per_layer; ++c) {
      if (spec.kind == WalkKind::Entangled2D) {
        for (int local = 0; local < 2; ++local) {
          roles.push_back(AngleRole::Theta);
          roles.push_back(AngleRole::Phi);
          roles.push_back(AngleRole::Lambda);
        }
        roles.insert(roles.end(), 3, AngleRole::Interaction);
        for (int local = 0; local < 2; ++local) {
          roles.push_back(AngleRole::Theta);
          roles.push_back(AngleRole::Phi);
          roles.push_back(AngleRole::Lambda);
        }
      } else {
        roles.push_back(AngleRole::Theta);
        roles.push_back(AngleRole::Phi);
        roles.push_back(AngleRole::Lambda);
      }
    }
  }
  return roles;
}

void set_params(WalkSpec& spec, std::span<const double> params) {
  std::size_t i = 0;
  std::visit(
      [&](auto& layers) {
        for (auto& layer : layers) {
          using T = std::decay_t<decltype(layer)>;
          if constexpr (std::is_same_v<T, CoinParams>) {
            layer = pop_coin(params, i);
          } else if constexpr (std::is_same_v<T, SsqwLayer>) {
            layer.first = pop_coin(params, i);
            layer.second = pop_coin(params, i);
          } else {
            layer.first = pop_entangled(params, i);
            layer.second = pop_entangled(params, i);
          }
        }
      },
      spec.layers);
  if (i != params.size())
    throw std::invalid_argument("parameter vector length does not match spec");
}

std::vector<double> gradient(const WalkSpec& spec, const TargetDistribution& target,
                             const OptimizerConfig& config) {
  config.validate();
  spec.validate();
  WalkSpec scratch = spec;
  std::vector<double> p = flatten_params(spec);
  std::vector<double> g(p.size(), 0.0);
  const double h = config.fd_step;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double orig = p[i];
    p[i] = orig + h;
    const double up = eval_cost(scratch, p, target, config);
    p[i] = orig - h;
    const double dn = eval_cost(scratch, p, target, config);
    p[i] = orig;
    g[i] = (up - dn) / (2.0 * h);
  }
  return g;
}

OptimizationTrace descend(const WalkSpec& start, const TargetDistribution& target,
                          const OptimizerConfig& config) {
  config.validate();
  start.validate();
  if (target.size() != start.grid_size())
    throw std::invalid_argument("target length does not match the position grid");

  const auto t0 = std::chrono::steady_clock::now();
  WalkSpec scratch = start;
  std::vector<double> p = flatten_params(start);
  const std::vector<AngleRole> roles = param_roles(start);
  const double h = config.fd_step;

  OptimizationTrace trace;
  trace.seed = config.seed;
  trace.best_params = p;
  trace.best_cost = eval_cost(scratch, p, target, config);
  trace.cost_history.push_back(trace.best_cost);

  for (int iter = 0; iter < config.max_iters; ++iter) {
    if (trace.best_cost <= config.tol) break;
    // in-place central differences; skips frozen interaction angles
    std::vector<double> step(p.size(), 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (config.freeze_interaction && roles[i] == AngleRole::Interaction) continue;
      const double orig = p[i];
      p[i] = orig + h;
      const double up = eval_cost(scratch, p, target, config);
      p[i] = orig - h;
      const double dn = eval_cost(scratch, p, target, config);
      p[i] = orig;
      step[i] = eta_for(config, roles[i]) * (up - dn) / (2.0 * h);
    }
    for (std::size_t i = 0; i < p.size(); ++i) p[i] -= step[i];
    const double c = eval_cost(scratch, p, target, config);
    trace.cost_history.push_back(c);
    trace.iterations_run = iter + 1;
    if (c < trace.best_cost) {
      trace.best_cost = c;
      trace.best_params = p;
    }
  }
  trace.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return trace;
}

WalkSpec make_template(WalkKind kind, const std::vector<int>& position_qubits,
                       int layers) {
  WalkSpec spec;
  spec.kind = kind;
  spec.position_qubits = position_qubits;
  spec.steps = layers;
  switch (kind) {
    case WalkKind::DTQW:
      spec.layers = std::vector<CoinParams>(layers);
      break;
    case WalkKind::SSQW:
      spec.layers = std::vector<SsqwLayer>(layers);
      break;
    case WalkKind::Entangled2D:
      spec.layers = std::vector<Ent2dLayer>(layers);
      break;
  }
  spec.initial_coin = kind == WalkKind::Entangled2D ? symmetric_initial_coin_2d()
                                                    : symmetric_initial_coin_1d();
  return spec;
}

OptimizationTrace optimize(const WalkSpec& spec_template,
                           const TargetDistribution& target,
                           const OptimizerConfig& config) {
  config.validate();
  spec_template.validate();
  if (target.size() != spec_template.grid_size())
    throw std::invalid_argument("target length does not match the position grid");

  const std::vector<AngleRole> roles = param_roles(spec_template);
  auto run_restart = [&](int r) {
    OptimizerConfig cfg = config;
    cfg.seed = config.seed + static_cast<std::uint64_t>(r);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    std::vector<double> init(roles.size());
    for (std::size_t i = 0; i < init.size(); ++i) {
      init[i] = angle(rng);
      if (cfg.freeze_interaction && roles[i] == AngleRole::Interaction) init[i] = 0.0;
    }
    WalkSpec start = spec_template;
    set_params(start, init);
    return descend(start, target, cfg);
  };

  std::vector<OptimizationTrace> traces(config.restarts);
  if (config.jobs > 1 && config.restarts > 1) {
    std::vector<std::future<OptimizationTrace>> futs;
    futs.reserve(config.restarts);
    for (int r = 0; r < config.restarts; ++r)
      futs.push_back(std::async(std::launch::async, run_restart, r));
    for (int r = 0; r < config.restarts; ++r) traces[r] = futs[r].get();
  } else {
    for (int r = 0; r < config.restarts; ++r) traces[r] = run_restart(r);
  }

  int best = 0;
  for (int r = 1; r < config.restarts; ++r)
    if (traces[r].best_cost < traces[best].best_cost) best = r;
  return traces[best];
}

SweepReport run_sweep(const TargetDistribution& target, WalkKind kind,
                      const std::vector<int>& position_qubits,
                      const std::vector<int>& coin_counts, int repetitions,
                      const OptimizerConfig& config) {
  config.validate();
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  if (coin_counts.empty()) throw std::invalid_argument("coin_counts is empty");

  SweepReport report;
  report.target_name = target.name;
  report.kind = kind;
  report.position_qubits = position_qubits;
  report.repetitions = repetitions;
  report.seed = config.seed;

  for (std::size_t ci = 0; ci < coin_counts.size(); ++ci) {
    const int coins = coin_counts[ci];
    if (coins < 1) throw std::invalid_argument("coin count must be >= 1");
    const WalkSpec templ = make_template(kind, position_qubits, coins);

    SweepCell cell;
    cell.coins = coins;
    int best_rep = -1;
    OptimizationTrace best_trace;
    for (int rep = 0; rep < repetitions; ++rep) {
      OptimizerConfig cfg = config;
      // globally distinct restart seeds across every (cell, rep) job
      cfg.seed = config.seed +
                 static_cast<std::uint64_t>(ci * repetitions + rep) *
                     static_cast<std::uint64_t>(config.restarts);
      const auto t0 = std::chrono::steady_clock::now();
      OptimizationTrace trace = optimize(templ, target, cfg);
      const double dt =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      cell.final_errors.push_back(trace.best_cost);
      cell.wall_times_s.push_back(dt);
      if (best_rep < 0 || trace.best_cost < best_trace.best_cost) {
        best_rep = rep;
        best_trace = std::move(trace);
      }
    }
    cell.best_error = best_trace.best_cost;
    cell.best_params = best_trace.best_params;
    WalkSpec best_spec = templ;
    set_params(best_spec, cell.best_params);
    cell.best_fit = position_probabilities(evolve(best_spec));
    report.cells.push_back(std::move(cell));
  }
  return report;
}

}  // namespace qwadg
