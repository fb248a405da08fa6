#pragma once

#include <istream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qwadg {

/// Normalized probability vector over the position grid. 2D grids are
/// stored row-major (x * Ny + y) with shape {Nx, Ny}.
struct TargetDistribution {
  std::vector<double> probabilities;
  std::vector<int> shape;
  std::vector<double> grid_labels;  // physical value per index (1D families)
  std::string name;

  int size() const { return static_cast<int>(probabilities.size()); }
};

struct LogNormalParams {
  double spot, sigma, rate, maturity;
};
struct BetaParams {
  double a, b;
};
struct BinomialParams {
  int n;
  double p;
};
struct BimodalParams {
  double mu1, sigma1, mu2, sigma2, weight;
};
struct ExponentialParams {
  double rate;
};
struct PoissonParams {
  double mean;
};
struct EmpiricalParams {
  std::vector<double> prices;  // chronological price series
};
struct DigitParams {
  int digit;
};

using DistributionFamily =
    std::variant<LogNormalParams, BetaParams, BinomialParams, BimodalParams,
                 ExponentialParams, PoissonParams, EmpiricalParams, DigitParams>;

struct Support {
  double lo, hi;
};

/// Mean and standard deviation of the lognormal terminal price S_T.
double lognormal_terminal_mean(const LogNormalParams& p);
double lognormal_terminal_stddev(const LogNormalParams& p);

/// Default grid support for a continuous family (e.g. the +-4 stddev
/// price window for the lognormal).
Support default_support(const DistributionFamily& family);

/// Evaluate a family on an n_points grid. Continuous densities are taken
/// at the midpoints of n equal bins on [lo, hi) and renormalized; integer
/// families land on grid indices with tail mass folded into the end bins.
TargetDistribution discretize(const DistributionFamily& family, int n_points,
                              std::optional<Support> support = std::nullopt);

/// Histogram of log-returns ln(p_{t+1}/p_t) over equal-width bins.
TargetDistribution empirical_from_returns(const std::vector<double>& prices,
                                          int n_bins);

/// Built-in 8x8 glyph for digit d, lit pixels sharing mass equally.
TargetDistribution digit_target(int d);

/// Newline-delimited decimal prices; '#' starts a comment.
std::vector<double> load_price_series(std::istream& in);
std::vector<double> load_price_series_file(const std::string& path);

}  // namespace qwadg
