#include "qwadg/patterns2d.hpp"

#include <cmath>
#include <stdexcept>

#include "qwadg/targets.hpp"

namespace qwadg {

double bhattacharyya(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::sqrt(p[i] * q[i]);
  return s;
}

WalkSpec make_entangled2d_spec(int layers) {
  if (layers < 1) throw std::invalid_argument("layers must be >= 1");
  return make_template(WalkKind::Entangled2D, {3, 3}, layers);
}

namespace {

Pattern2DResult fit_impl(int d, int layers, OptimizerConfig config) {
  const TargetDistribution target = digit_target(d);
  const WalkSpec templ = make_entangled2d_spec(layers);

  Pattern2DResult result;
  result.digit = d;
  result.target = target.probabilities;
  result.trace = optimize(templ, target, config);

  WalkSpec fitted_spec = templ;
  set_params(fitted_spec, result.trace.best_params);
  result.fitted = position_probabilities(evolve(fitted_spec));
  result.fidelity = bhattacharyya(result.fitted, result.target);
  return result;
}

}  // namespace

Pattern2DResult fit_digit(int d, int layers, const OptimizerConfig& config) {
  return fit_impl(d, layers, config);
}

Pattern2DResult separable_baseline(int d, int layers, const OptimizerConfig& config) {
  OptimizerConfig cfg = config;
  cfg.freeze_interaction = true;
  return fit_impl(d, layers, cfg);
}

}  // namespace qwadg
