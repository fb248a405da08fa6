#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qwadg {

struct OptionContract {
  double spot;
  double strike;
  double rate;
  double volatility;
  double maturity;

  void validate() const;  // throws std::invalid_argument
};

/// Strictly increasing price levels, one per position-grid index.
struct PriceGrid {
  std::vector<double> levels;
};

/// Closed-form Black-Scholes European call value.
double black_scholes_call(const OptionContract& contract);

/// Uniform grid on [max(0, m - 4s), m + 4s] where m, s are the analytic
/// lognormal mean and stddev of the terminal price.
PriceGrid build_price_grid(const OptionContract& contract, int n_points);

/// Discounted discrete expectation: sum_i P(S_i) max(S_i - K, 0) e^{-rT}.
double expected_call_payoff(std::span<const double> dist, const PriceGrid& grid,
                            double strike, double rate, double maturity);

struct PriceRow {
  double strike;
  double black_scholes;
  double simulated;
  std::optional<double> error_pct;  // empty when the analytic price ~ 0
};

std::vector<PriceRow> price_table(std::span<const double> fitted_dist,
                                  const PriceGrid& grid,
                                  const OptionContract& contract,
                                  const std::vector<double>& strikes);

/// CSV with header `strike,black_scholes,simulated,error_pct`.
std::string price_table_csv(const std::vector<PriceRow>& rows);

}  // namespace qwadg
