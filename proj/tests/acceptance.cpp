// Acceptance gate: ten numbered criteria, one PASS/FAIL line each, with the
// per-criterion runtime budget enforced. Exit status is the failure count.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <nlohmann/json.hpp>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "qwadg/adg.hpp"
#include "qwadg/patterns2d.hpp"
#include "qwadg/pricing.hpp"
#include "qwadg/statevec.hpp"
#include "qwadg/targets.hpp"

using namespace qwadg;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& why) {
    if (!cond && ok) {
      ok = false;
      detail = why;
    }
  }
};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

CoinParams random_coin(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2 * kPi);
  return {u(rng), u(rng), u(rng)};
}

EntangledCoinParams random_entangled(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2 * kPi);
  return {random_coin(rng), random_coin(rng), {u(rng), u(rng), u(rng)},
          random_coin(rng), random_coin(rng)};
}

// Factor-wise dense oracle for the 2D walk (matrix-vector, so the
// 4-qubit-per-axis cases stay cheap).
std::vector<double> oracle_probs_2d(const WalkSpec& spec) {
  const int nx = 1 << spec.position_qubits[0];
  const int ny = 1 << spec.position_qubits[1];
  const int np = nx * ny;
  const oracle::Mat sp = oracle::shift_matrix_2d(nx, ny, true);
  const oracle::Mat sm = oracle::shift_matrix_2d(nx, ny, false);
  oracle::Vec v = oracle::initial_vector(spec);
  const auto& layers = std::get<std::vector<Ent2dLayer>>(spec.layers);
  for (const Ent2dLayer& layer : layers) {
    v = oracle::coin_on_full(oracle::entangled_coin_matrix(layer.first), np) * v;
    v = sp * v;
    v = oracle::coin_on_full(oracle::entangled_coin_matrix(layer.second), np) * v;
    v = sm * v;
  }
  std::vector<double> probs(np, 0.0);
  for (int c = 0; c < 4; ++c)
    for (int p = 0; p < np; ++p) probs[p] += std::norm(v(c * np + p));
  return probs;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// ---- criteria ----

// Contract: S=6.0, sigma=0.4, r=0.04, T=90/365; reference analytic call
// prices for K=1..10.
constexpr double kReferencePrices[10] = {5.0098, 4.0196, 3.0295, 2.0457, 1.1447,
                                         0.5024, 0.1745, 0.0502, 0.0126, 0.0029};

Check criterion_black_scholes() {
  Check c;
  for (int k = 1; k <= 10; ++k) {
    const double p = black_scholes_call({6.0, double(k), 0.04, 0.4, 90.0 / 365.0});
    c.require(std::abs(p - kReferencePrices[k - 1]) <= 5e-4,
              "K=" + std::to_string(k) + " off the reference value");
  }
  return c;
}

Check criterion_oracle_equivalence() {
  Check c;
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> qubits(2, 4), steps(1, 8);
  double worst = 0.0;

  for (int draw = 0; draw < 20; ++draw) {  // DTQW
    WalkSpec spec;
    spec.kind = WalkKind::DTQW;
    spec.position_qubits = {qubits(rng)};
    spec.steps = steps(rng);
    std::vector<CoinParams> layers;
    for (int t = 0; t < spec.steps; ++t) layers.push_back(random_coin(rng));
    spec.layers = layers;
    spec.initial_coin = symmetric_initial_coin_1d();
    worst = std::max(worst,
                     max_abs_diff(position_probabilities(evolve(spec)),
                                  oracle::evolve_probabilities(spec)));
  }
  for (int draw = 0; draw < 20; ++draw) {  // SSQW
    WalkSpec spec;
    spec.kind = WalkKind::SSQW;
    spec.position_qubits = {qubits(rng)};
    spec.steps = steps(rng);
    std::vector<SsqwLayer> layers;
    for (int t = 0; t < spec.steps; ++t)
      layers.push_back({random_coin(rng), random_coin(rng)});
    spec.layers = layers;
    spec.initial_coin = symmetric_initial_coin_1d();
    worst = std::max(worst,
                     max_abs_diff(position_probabilities(evolve(spec)),
                                  oracle::evolve_probabilities(spec)));
  }
  for (int draw = 0; draw < 10; ++draw) {  // Entangled2D, three at 4 qubits/axis
    WalkSpec spec;
    spec.kind = WalkKind::Entangled2D;
    const int q = draw < 7 ? 2 + draw % 2 : 4;
    spec.position_qubits = {q, q};
    spec.steps = q == 4 ? 1 + draw % 4 : steps(rng);
    std::vector<Ent2dLayer> layers;
    for (int t = 0; t < spec.steps; ++t)
      layers.push_back({random_entangled(rng), random_entangled(rng)});
    spec.layers = layers;
    spec.initial_coin = symmetric_initial_coin_2d();
    worst = std::max(worst, max_abs_diff(position_probabilities(evolve(spec)),
                                         oracle_probs_2d(spec)));
  }

  c.require(worst <= 1e-10,
            "max probability deviation " + std::to_string(worst));
  return c;
}

Check criterion_unitarity_permutations() {
  Check c;
  std::mt19937_64 rng(7);

  auto unitary_defect_2 = [](const Mat2& m) {
    double worst = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Amplitude dot = 0.0;
        for (int k = 0; k < 2; ++k) dot += std::conj(m(k, i)) * m(k, j);
        worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
      }
    return worst;
  };
  auto unitary_defect_4 = [](const Mat4& m) {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        Amplitude dot = 0.0;
        for (int k = 0; k < 4; ++k) dot += std::conj(m(k, i)) * m(k, j);
        worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
      }
    return worst;
  };

  for (int i = 0; i < 500; ++i)
    c.require(unitary_defect_2(build_coin(random_coin(rng))) <= 1e-12,
              "2x2 coin not unitary to 1e-12");
  for (int i = 0; i < 500; ++i)
    c.require(unitary_defect_4(build_entangled_coin(random_entangled(rng))) <= 1e-12,
              "4x4 coin not unitary to 1e-12");

  // every shift maps each basis state to exactly one basis state, bijectively
  auto check_permutation = [&](int coin_dim, std::vector<int> dims,
                               const std::function<void(StateVector&)>& shift,
                               const std::string& name) {
    int np = 1;
    for (int d : dims) np *= d;
    const int dim = coin_dim * np;
    std::vector<bool> hit(dim, false);
    for (int src = 0; src < dim; ++src) {
      StateVector s{coin_dim, dims, std::vector<Amplitude>(dim, 0.0)};
      s.amps[src] = 1.0;
      shift(s);
      int dst = -1;
      for (int i = 0; i < dim; ++i) {
        if (s.amps[i] == Amplitude(0.0)) continue;
        c.require(dst == -1 && s.amps[i] == Amplitude(1.0),
                  name + ": image of a basis state is not a basis state");
        dst = i;
      }
      c.require(dst >= 0 && !hit[dst], name + ": not a bijection");
      if (dst >= 0) hit[dst] = true;
    }
  };

  check_permutation(2, {16}, [](StateVector& s) { apply_shift_sym(s); }, "sym");
  check_permutation(2, {16}, [](StateVector& s) { apply_shift_plus(s); }, "plus");
  check_permutation(2, {16}, [](StateVector& s) { apply_shift_minus(s); }, "minus");
  check_permutation(4, {4, 4},
                    [](StateVector& s) { apply_shift_2d(s, ShiftDir::Plus); },
                    "2d plus");
  check_permutation(4, {4, 4},
                    [](StateVector& s) { apply_shift_2d(s, ShiftDir::Minus); },
                    "2d minus");
  return c;
}

Check criterion_hadamard_sanity() {
  Check c;
  WalkSpec spec;
  spec.kind = WalkKind::DTQW;
  spec.position_qubits = {5};
  spec.steps = 1;
  spec.layers = std::vector<CoinParams>{CoinParams{kPi / 2, 0.0, kPi}};
  spec.initial_coin = symmetric_initial_coin_1d();
  const auto probs = position_probabilities(evolve(spec));
  for (int x = 0; x < 32; ++x) {
    const double expect = (x == 15 || x == 17) ? 0.5 : 0.0;
    c.require(std::abs(probs[x] - expect) <= 1e-14, "t=1 P(+-1) != 1/2");
  }

  for (int t = 2; t <= 10; ++t) {
    WalkSpec w = spec;
    w.steps = t;
    w.layers = std::vector<CoinParams>(t, CoinParams{kPi / 2, 0.0, kPi});
    const auto p = position_probabilities(evolve(w));
    for (int k = 1; k <= 10; ++k)
      c.require(std::abs(p[16 + k] - p[16 - k]) <= 1e-10,
                "walk asymmetric at t=" + std::to_string(t));
  }
  return c;
}

Check criterion_zero_residual_recovery() {
  Check c;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 2 * kPi);

    WalkSpec truth = make_template(WalkKind::SSQW, {4}, 2);
    auto params = flatten_params(truth);
    for (double& p : params) p = u(rng);
    set_params(truth, params);

    TargetDistribution target;
    target.probabilities = position_probabilities(evolve(truth));
    target.shape = {16};

    WalkSpec start = truth;
    std::bernoulli_distribution sign;
    for (double& p : params) p += sign(rng) ? 0.01 : -0.01;
    set_params(start, params);

    OptimizerConfig cfg;
    cfg.cost = CostKind::MSE;
    cfg.eta_theta = cfg.eta_phi = cfg.eta_lambda = 0.3;
    cfg.max_iters = 200;
    cfg.tol = 1e-6;
    const auto trace = descend(start, target, cfg);
    c.require(trace.best_cost <= 1e-6,
              "seed " + std::to_string(seed) + " stalled at cost " +
                  std::to_string(trace.best_cost));
  }
  return c;
}

Check criterion_binomial_fit() {
  Check c;
  const auto target = discretize(BinomialParams{15, 0.5}, 16);
  OptimizerConfig cfg;
  cfg.cost = CostKind::MSE;
  cfg.seed = 7;
  cfg.restarts = 5;
  cfg.max_iters = 2000;
  const auto trace = optimize(make_template(WalkKind::SSQW, {4}, 4), target, cfg);
  c.require(trace.best_cost <= 1e-3,
            "best MSE " + std::to_string(trace.best_cost));
  return c;
}

Check criterion_sweep_monotonicity() {
  Check c;
  const auto target = discretize(BimodalParams{4.0, 1.5, 11.0, 1.5, 0.5}, 16);
  OptimizerConfig cfg;
  cfg.seed = 1;
  const auto report = run_sweep(target, WalkKind::SSQW, {4}, {2, 4, 6}, 10, cfg);

  std::vector<double> med, mt;
  for (const auto& cell : report.cells) {
    med.push_back(median(cell.final_errors));
    mt.push_back(mean(cell.wall_times_s));
  }
  int non_increasing = 0;
  if (med[1] <= med[0]) ++non_increasing;
  if (med[2] <= med[1]) ++non_increasing;
  if (med[2] <= med[0]) ++non_increasing;
  std::ostringstream os;
  os << "medians " << med[0] << ", " << med[1] << ", " << med[2]
     << "; mean times " << mt[0] << "s, " << mt[1] << "s, " << mt[2] << "s";
  c.require(non_increasing >= 2, "median error not improving: " + os.str());
  c.require(mt[0] < mt[1] && mt[1] < mt[2],
            "mean wall time not strictly increasing: " + os.str());
  c.detail = c.ok ? os.str() : c.detail;
  return c;
}

Check criterion_pricing_end_to_end() {
  Check c;
  const OptionContract contract{6.0, 6.0, 0.04, 0.4, 90.0 / 365.0};
  const PriceGrid grid = build_price_grid(contract, 16);
  const double d = grid.levels[1] - grid.levels[0];
  const auto target =
      discretize(LogNormalParams{6.0, 0.4, 0.04, 90.0 / 365.0}, 16,
                 Support{grid.levels.front() - d / 2, grid.levels.back() + d / 2});

  OptimizerConfig cfg;
  cfg.seed = 11;
  WalkSpec templ = make_template(WalkKind::SSQW, {4}, 6);
  const auto trace = optimize(templ, target, cfg);
  set_params(templ, trace.best_params);
  const auto fitted = position_probabilities(evolve(templ));

  for (int k = 4; k <= 8; ++k) {
    OptionContract at = contract;
    at.strike = k;
    const double bs = black_scholes_call(at);
    const double sim =
        expected_call_payoff(fitted, grid, at.strike, at.rate, at.maturity);
    const double base = expected_call_payoff(target.probabilities, grid,
                                             at.strike, at.rate, at.maturity);
    c.require(std::abs(sim - bs) / bs <= 0.20,
              "K=" + std::to_string(k) + " relative error " +
                  std::to_string(std::abs(sim - bs) / bs));
    // the analytic distribution through the same estimator isolates the
    // discretization error; the fit must not beat it
    c.require(std::abs(base - bs) < std::abs(sim - bs),
              "K=" + std::to_string(k) + " baseline not strictly better");
  }
  return c;
}

Check criterion_digit_fitting() {
  Check c;
  OptimizerConfig cfg;
  cfg.cost = CostKind::KL;
  cfg.max_iters = 400;
  cfg.restarts = 5;
  cfg.seed = 3;
  const auto res = fit_digit(1, 4, cfg);
  c.require(res.fidelity >= 0.9,
            "digit 1 fidelity " + std::to_string(res.fidelity));
  c.detail = "digit 1 fidelity " + std::to_string(res.fidelity);

  OptimizerConfig quick = cfg;
  quick.max_iters = 5;
  quick.restarts = 1;
  for (int digit = 0; digit <= 9; ++digit) {
    const auto r = fit_digit(digit, 2, quick);
    double sum = 0.0;
    for (double p : r.fitted) {
      c.require(p >= 0.0, "negative cell for digit " + std::to_string(digit));
      sum += p;
    }
    c.require(std::abs(sum - 1.0) <= 1e-10,
              "digit " + std::to_string(digit) + " grid not normalized");
  }
  return c;
}

void scrub_timing(nlohmann::json& j) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end();) {
      if (it.key().find("wall_time") != std::string::npos)
        it = j.erase(it);
      else {
        scrub_timing(it.value());
        ++it;
      }
    }
  } else if (j.is_array()) {
    for (auto& e : j) scrub_timing(e);
  }
}

Check criterion_cli_determinism() {
  Check c;
#ifndef QWADG_CLI_PATH
  c.require(false, "CLI path not configured");
  return c;
#else
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "qwadg_acceptance";
  fs::create_directories(dir);
  const std::string flags =
      " fit1d --family binomial:15,0.5 --qubits 4 --layers 2 --max-iters 40"
      " --restarts 2 --seed 9 --jobs 2 --out ";
  nlohmann::json runs[2];
  for (int i = 0; i < 2; ++i) {
    const fs::path out = dir / ("det_" + std::to_string(i) + ".json");
    const std::string cmd =
        std::string(QWADG_CLI_PATH) + flags + out.string() + " >/dev/null 2>&1";
    c.require(std::system(cmd.c_str()) == 0, "CLI run failed");
    std::ifstream in(out);
    if (!in) {
      c.require(false, "missing CLI output");
      return c;
    }
    runs[i] = nlohmann::json::parse(in);
    scrub_timing(runs[i]);
  }
  c.require(runs[0] == runs[1], "non-timing fields differ between re-runs");
  return c;
#endif
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // <= 0: no runtime bound
    std::function<Check()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "Black-Scholes analytic prices match the reference table (+-5e-4)",
       1.0, criterion_black_scholes},
      {2, "evolve matches the dense-matrix oracle on 50 random draws (<=1e-10)",
       30.0, criterion_oracle_equivalence},
      {3, "1000 random coins unitary to 1e-12; shifts are permutations", 10.0,
       criterion_unitarity_permutations},
      {4, "Hadamard walk: t=1 gives P(+-1)=1/2; symmetric to 1e-10 for t<=10",
       0.0, criterion_hadamard_sanity},
      {5, "zero-residual recovery from 0.01-rad perturbations, 10/10 seeds",
       0.0, criterion_zero_residual_recovery},
      {6, "Binomial(15,0.5) SSQW 4-layer fit reaches MSE <= 1e-3", 120.0,
       criterion_binomial_fit},
      {7, "bimodal sweep: median error improves with coins, time increases",
       900.0, criterion_sweep_monotonicity},
      {8, "option pricing within 20% of analytic, discretization baseline wins",
       300.0, criterion_pricing_end_to_end},
      {9, "digit 1 fidelity >= 0.9; all ten digit fits are normalized grids",
       900.0, criterion_digit_fitting},
      {10, "CLI re-run reproduces all non-timing output fields", 0.0,
       criterion_cli_determinism},
  };

  int failures = 0;
  for (const Criterion& crit : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Check result = crit.run();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (crit.limit_s > 0 && secs > crit.limit_s)
      result.require(false, "runtime " + std::to_string(secs) + "s over the " +
                                std::to_string(crit.limit_s) + "s budget");
    std::printf("criterion %2d: %s  %s (%.2fs%s%s)\n", crit.id,
                result.ok ? "PASS" : "FAIL", crit.name, secs,
                result.detail.empty() ? "" : "; ",
                result.detail.c_str());
    if (!result.ok) ++failures;
  }
  if (failures) std::printf("%d criterion(s) FAILED\n", failures);
  else std::printf("all 10 criteria PASSED\n");
  return failures;
}
