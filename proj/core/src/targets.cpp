#include "qwadg/targets.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qwadg {

namespace {

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " is not finite");
}

void validate_family(const DistributionFamily& family) {
  std::visit(
      [](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, LogNormalParams>) {
          check_finite(f.spot, "spot");
          check_finite(f.sigma, "sigma");
          check_finite(f.rate, "rate");
          check_finite(f.maturity, "maturity");
          if (f.spot <= 0 || f.sigma <= 0 || f.maturity <= 0)
            throw std::invalid_argument("lognormal requires spot, sigma, maturity > 0");
        } else if constexpr (std::is_same_v<T, BetaParams>) {
          if (!(f.a > 0) || !(f.b > 0))
            throw std::invalid_argument("beta requires a, b > 0");
        } else if constexpr (std::is_same_v<T, BinomialParams>) {
          if (f.n < 0 || !(f.p >= 0 && f.p <= 1))
            throw std::invalid_argument("binomial requires n >= 0 and p in [0,1]");
        } else if constexpr (std::is_same_v<T, BimodalParams>) {
          if (!(f.sigma1 > 0) || !(f.sigma2 > 0) || !(f.weight >= 0 && f.weight <= 1))
            throw std::invalid_argument("bimodal requires sigmas > 0 and weight in [0,1]");
          check_finite(f.mu1, "mu1");
          check_finite(f.mu2, "mu2");
        } else if constexpr (std::is_same_v<T, ExponentialParams>) {
          if (!(f.rate > 0)) throw std::invalid_argument("exponential requires rate > 0");
        } else if constexpr (std::is_same_v<T, PoissonParams>) {
          if (!(f.mean > 0)) throw std::invalid_argument("poisson requires mean > 0");
        } else if constexpr (std::is_same_v<T, DigitParams>) {
          if (f.digit < 0 || f.digit > 9)
            throw std::invalid_argument("digit must be in 0..9");
        }
      },
      family);
}

double normal_pdf(double x, double mu, double sigma) {
  const double z = (x - mu) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

double lognormal_pdf(double x, const LogNormalParams& p) {
  if (x <= 0.0) return 0.0;
  const double s = p.sigma * std::sqrt(p.maturity);
  const double mu = std::log(p.spot) + (p.rate - 0.5 * p.sigma * p.sigma) * p.maturity;
  const double z = (std::log(x) - mu) / s;
  return std::exp(-0.5 * z * z) / (x * s * std::sqrt(2.0 * std::numbers::pi));
}

double beta_pdf(double x, const BetaParams& p) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double log_b = std::lgamma(p.a) + std::lgamma(p.b) - std::lgamma(p.a + p.b);
  return std::exp((p.a - 1) * std::log(x) + (p.b - 1) * std::log(1 - x) - log_b);
}

double binomial_pmf(int k, const BinomialParams& p) {
  if (k < 0 || k > p.n) return 0.0;
  if (p.p == 0.0) return k == 0 ? 1.0 : 0.0;
  if (p.p == 1.0) return k == p.n ? 1.0 : 0.0;
  const double logc = std::lgamma(p.n + 1.0) - std::lgamma(k + 1.0) -
                      std::lgamma(p.n - k + 1.0);
  return std::exp(logc + k * std::log(p.p) + (p.n - k) * std::log1p(-p.p));
}

double poisson_pmf(int k, const PoissonParams& p) {
  return std::exp(k * std::log(p.mean) - p.mean - std::lgamma(k + 1.0));
}

TargetDistribution from_continuous_pdf(const char* name, int n_points, Support sup,
                                       const std::function<double(double)>& pdf) {
  if (!(sup.lo < sup.hi)) throw std::invalid_argument("support requires lo < hi");
  TargetDistribution t;
  t.name = name;
  t.shape = {n_points};
  t.probabilities.resize(n_points);
  t.grid_labels.resize(n_points);
  const double w = (sup.hi - sup.lo) / n_points;
  double sum = 0.0;
  for (int i = 0; i < n_points; ++i) {
    const double x = sup.lo + (i + 0.5) * w;
    t.grid_labels[i] = x;
    t.probabilities[i] = pdf(x);
    sum += t.probabilities[i];
  }
  if (!(sum > 0)) throw std::invalid_argument("density vanishes on the given support");
  for (double& p : t.probabilities) p /= sum;
  return t;
}

TargetDistribution from_pmf(const char* name, int n_points, int max_outcome,
                            const std::function<double(int)>& pmf) {
  TargetDistribution t;
  t.name = name;
  t.shape = {n_points};
  t.probabilities.assign(n_points, 0.0);
  t.grid_labels.resize(n_points);
  for (int i = 0; i < n_points; ++i) t.grid_labels[i] = i;
  double assigned = 0.0;
  for (int k = 0; k < n_points - 1 && k <= max_outcome; ++k) {
    t.probabilities[k] = pmf(k);
    assigned += t.probabilities[k];
  }
  // everything at or past the last grid index folds into the end bin
  t.probabilities[n_points - 1] = std::max(0.0, 1.0 - assigned);
  return t;
}

}  // namespace

double lognormal_terminal_mean(const LogNormalParams& p) {
  return p.spot * std::exp(p.rate * p.maturity);
}

double lognormal_terminal_stddev(const LogNormalParams& p) {
  const double m = lognormal_terminal_mean(p);
  return m * std::sqrt(std::expm1(p.sigma * p.sigma * p.maturity));
}

Support default_support(const DistributionFamily& family) {
  validate_family(family);
  if (const auto* ln = std::get_if<LogNormalParams>(&family)) {
    const double m = lognormal_terminal_mean(*ln);
    const double s = lognormal_terminal_stddev(*ln);
    return {std::max(0.0, m - 4 * s), m + 4 * s};
  }
  if (std::holds_alternative<BetaParams>(family)) return {0.0, 1.0};
  if (const auto* bm = std::get_if<BimodalParams>(&family)) {
    const double lo = std::min(bm->mu1 - 4 * bm->sigma1, bm->mu2 - 4 * bm->sigma2);
    const double hi = std::max(bm->mu1 + 4 * bm->sigma1, bm->mu2 + 4 * bm->sigma2);
    return {lo, hi};
  }
  if (const auto* ex = std::get_if<ExponentialParams>(&family))
    return {0.0, 8.0 / ex->rate};
  throw std::invalid_argument("family has no continuous support");
}

TargetDistribution discretize(const DistributionFamily& family, int n_points,
                              std::optional<Support> support) {
  validate_family(family);
  if (n_points < 2) throw std::invalid_argument("n_points must be >= 2");

  if (const auto* f = std::get_if<LogNormalParams>(&family)) {
    const Support sup = support ? *support : default_support(family);
    return from_continuous_pdf("lognormal", n_points, sup,
                               [f](double x) { return lognormal_pdf(x, *f); });
  }
  if (const auto* f = std::get_if<BetaParams>(&family)) {
    const Support sup = support ? *support : Support{0.0, 1.0};
    return from_continuous_pdf("beta", n_points, sup,
                               [f](double x) { return beta_pdf(x, *f); });
  }
  if (const auto* f = std::get_if<BimodalParams>(&family)) {
    const Support sup = support ? *support : default_support(family);
    return from_continuous_pdf("bimodal", n_points, sup, [f](double x) {
      return f->weight * normal_pdf(x, f->mu1, f->sigma1) +
             (1 - f->weight) * normal_pdf(x, f->mu2, f->sigma2);
    });
  }
  if (const auto* f = std::get_if<ExponentialParams>(&family)) {
    const Support sup = support ? *support : Support{0.0, 8.0 / f->rate};
    return from_continuous_pdf("exponential", n_points, sup,
                               [f](double x) { return f->rate * std::exp(-f->rate * x); });
  }
  if (const auto* f = std::get_if<BinomialParams>(&family))
    return from_pmf("binomial", n_points, f->n,
                    [f](int k) { return binomial_pmf(k, *f); });
  if (const auto* f = std::get_if<PoissonParams>(&family))
    return from_pmf("poisson", n_points, n_points,
                    [f](int k) { return poisson_pmf(k, *f); });
  if (const auto* f = std::get_if<EmpiricalParams>(&family))
    return empirical_from_returns(f->prices, n_points);
  return digit_target(std::get<DigitParams>(family).digit);
}

TargetDistribution empirical_from_returns(const std::vector<double>& prices,
                                          int n_bins) {
  if (n_bins < 1) throw std::invalid_argument("n_bins must be >= 1");
  if (prices.size() < static_cast<std::size_t>(n_bins))
    throw std::invalid_argument("price series shorter than the bin count");
  for (double p : prices)
    if (!std::isfinite(p) || p <= 0.0)
      throw std::invalid_argument("price series must be finite and positive");

  std::vector<double> returns(prices.size() - 1);
  for (std::size_t i = 0; i + 1 < prices.size(); ++i)
    returns[i] = std::log(prices[i + 1] / prices[i]);

  const auto [mn_it, mx_it] = std::minmax_element(returns.begin(), returns.end());
  double lo = *mn_it, hi = *mx_it;
  if (hi - lo < 1e-15) {  // degenerate series: a single return value
    lo -= 0.5;
    hi += 0.5;
  }
  const double w = (hi - lo) / n_bins;

  TargetDistribution t;
  t.name = "empirical";
  t.shape = {n_bins};
  t.probabilities.assign(n_bins, 0.0);
  t.grid_labels.resize(n_bins);
  for (int i = 0; i < n_bins; ++i) t.grid_labels[i] = lo + (i + 0.5) * w;
  for (double r : returns) {
    int idx = static_cast<int>((r - lo) / w);
    idx = std::clamp(idx, 0, n_bins - 1);
    t.probabilities[idx] += 1.0;
  }
  for (double& p : t.probabilities) p /= static_cast<double>(returns.size());
  return t;
}

namespace {

// 5x7 glyphs placed at column offset 1, row offset 0 of the 8x8 grid.
// Digit 1 is a plain vertical stroke; 8 differs from 0 by the middle bar.
constexpr const char* kGlyphs[10][7] = {
    {"01110", "10001", "10001", "10001", "10001", "10001", "01110"},  // 0
    {"00100", "00100", "00100", "00100", "00100", "00100", "00100"},  // 1
    {"01110", "10001", "00001", "00010", "00100", "01000", "11111"},  // 2
    {"01110", "10001", "00001", "00110", "00001", "10001", "01110"},  // 3
    {"00010", "00110", "01010", "10010", "11111", "00010", "00010"},  // 4
    {"11111", "10000", "11110", "00001", "00001", "10001", "01110"},  // 5
    {"01110", "10001", "10000", "11110", "10001", "10001", "01110"},  // 6
    {"11111", "00001", "00010", "00100", "01000", "01000", "01000"},  // 7
    {"01110", "10001", "10001", "01110", "10001", "10001", "01110"},  // 8
    {"01110", "10001", "10001", "01111", "00001", "10001", "01110"},  // 9
};

}  // namespace

TargetDistribution digit_target(int d) {
  if (d < 0 || d > 9) throw std::invalid_argument("digit must be in 0..9");
  TargetDistribution t;
  t.name = "digit" + std::to_string(d);
  t.shape = {8, 8};
  t.probabilities.assign(64, 0.0);
  int lit = 0;
  for (int r = 0; r < 7; ++r)
    for (int c = 0; c < 5; ++c)
      if (kGlyphs[d][r][c] == '1') {
        t.probabilities[r * 8 + (c + 1)] = 1.0;
        ++lit;
      }
  for (double& p : t.probabilities) p /= lit;
  t.grid_labels.resize(64);
  for (int i = 0; i < 64; ++i) t.grid_labels[i] = i;
  return t;
}

std::vector<double> load_price_series(std::istream& in) {
  std::vector<double> prices;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    double v;
    if (ss >> v) {
      prices.push_back(v);
    } else if (!std::all_of(line.begin(), line.end(),
                            [](unsigned char ch) { return std::isspace(ch); })) {
      throw std::invalid_argument("bad price on line " + std::to_string(lineno));
    }
  }
  return prices;
}

std::vector<double> load_price_series_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open price series: " + path);
  return load_price_series(in);
}

}  // namespace qwadg
