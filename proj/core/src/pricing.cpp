#include "qwadg/pricing.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qwadg/targets.hpp"

namespace qwadg {

namespace {

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

void OptionContract::validate() const {
  if (!(spot > 0) || !(strike > 0) || !(volatility > 0) || !(maturity > 0))
    throw std::invalid_argument(
        "contract requires spot, strike, volatility, maturity > 0");
  if (!std::isfinite(rate)) throw std::invalid_argument("rate is not finite");
}

double black_scholes_call(const OptionContract& c) {
  c.validate();
  const double vs = c.volatility * std::sqrt(c.maturity);
  const double d1 =
      (std::log(c.spot / c.strike) + (c.rate + 0.5 * c.volatility * c.volatility) * c.maturity) /
      vs;
  const double d2 = d1 - vs;
  return c.spot * norm_cdf(d1) - c.strike * std::exp(-c.rate * c.maturity) * norm_cdf(d2);
}

PriceGrid build_price_grid(const OptionContract& c, int n_points) {
  c.validate();
  if (n_points < 2) throw std::invalid_argument("n_points must be >= 2");
  const LogNormalParams ln{c.spot, c.volatility, c.rate, c.maturity};
  const double m = lognormal_terminal_mean(ln);
  const double s = lognormal_terminal_stddev(ln);
  const double lo = std::max(0.0, m - 4 * s);
  const double hi = m + 4 * s;
  PriceGrid grid;
  grid.levels.resize(n_points);
  for (int i = 0; i < n_points; ++i)
    grid.levels[i] = lo + (hi - lo) * i / (n_points - 1);
  return grid;
}

double expected_call_payoff(std::span<const double> dist, const PriceGrid& grid,
                            double strike, double rate, double maturity) {
  if (dist.size() != grid.levels.size())
    throw std::invalid_argument("distribution and grid lengths differ");
  double total = 0.0, payoff = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    total += dist[i];
    payoff += dist[i] * std::max(grid.levels[i] - strike, 0.0);
  }
  if (std::abs(total - 1.0) > 1e-8)
    throw std::invalid_argument("distribution is not normalized");
  return payoff * std::exp(-rate * maturity);
}

std::vector<PriceRow> price_table(std::span<const double> fitted_dist,
                                  const PriceGrid& grid,
                                  const OptionContract& contract,
                                  const std::vector<double>& strikes) {
  if (strikes.empty()) throw std::invalid_argument("strikes is empty");
  std::vector<PriceRow> rows;
  rows.reserve(strikes.size());
  for (double k : strikes) {
    OptionContract c = contract;
    c.strike = k;
    PriceRow row;
    row.strike = k;
    row.black_scholes = black_scholes_call(c);
    row.simulated =
        expected_call_payoff(fitted_dist, grid, k, contract.rate, contract.maturity);
    if (row.black_scholes >= 1e-12)
      row.error_pct = 100.0 * std::abs(row.black_scholes - row.simulated) / row.black_scholes;
    rows.push_back(row);
  }
  return rows;
}

std::string price_table_csv(const std::vector<PriceRow>& rows) {
  std::ostringstream out;
  out.precision(10);
  out << "strike,black_scholes,simulated,error_pct\n";
  for (const PriceRow& r : rows) {
    out << r.strike << ',' << r.black_scholes << ',' << r.simulated << ',';
    if (r.error_pct)
      out << *r.error_pct;
    else
      out << "na";
    out << '\n';
  }
  return out.str();
}

}  // namespace qwadg
