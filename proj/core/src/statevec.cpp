#include "qwadg/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

namespace qwadg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
  if (!std::isfinite(a)) throw std::invalid_argument("coin angle is not finite");
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  // fmod can land exactly on 2*pi after the correction for tiny negatives
  if (w >= kTwoPi) w -= kTwoPi;
  return w;
}

int center_index(int qubits) { return 1 << (qubits - 1); }

}  // namespace

CoinParams::CoinParams(double theta_, double phi_, double lambda_)
    : theta(wrap_angle(theta_)), phi(wrap_angle(phi_)), lambda(wrap_angle(lambda_)) {}

Mat2 mat2_mul(const Mat2& a, const Mat2& b) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
  return r;
}

Mat4 mat4_mul(const Mat4& a, const Mat4& b) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Amplitude s = 0.0;
      for (int k = 0; k < 4; ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return r;
}

Mat2 build_coin(const CoinParams& p) {
  const double ct = std::cos(p.theta / 2.0);
  const double st = std::sin(p.theta / 2.0);
  const Amplitude eiphi = std::polar(1.0, p.phi);
  const Amplitude eilam = std::polar(1.0, p.lambda);
  Mat2 c;
  c(0, 0) = ct;
  c(0, 1) = -eilam * st;
  c(1, 0) = eiphi * st;
  c(1, 1) = eiphi * eilam * ct;
  return c;
}

Mat4 build_entangled_coin(const EntangledCoinParams& p) {
  // exp(i(a XX + b YY + c ZZ)) in closed form: XX, YY, ZZ commute and act
  // as Pauli-x blocks on the {|00>,|11>} and {|01>,|10>} subspaces.
  const double a = p.interaction.a, b = p.interaction.b, c = p.interaction.c;
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
    throw std::invalid_argument("interaction angle is not finite");
  const Amplitude eic = std::polar(1.0, c);
  const Amplitude emic = std::polar(1.0, -c);
  const Amplitude i1(0.0, 1.0);
  Mat4 inter;
  inter(0, 0) = eic * std::cos(a - b);
  inter(0, 3) = i1 * eic * std::sin(a - b);
  inter(3, 0) = inter(0, 3);
  inter(3, 3) = inter(0, 0);
  inter(1, 1) = emic * std::cos(a + b);
  inter(1, 2) = i1 * emic * std::sin(a + b);
  inter(2, 1) = inter(1, 2);
  inter(2, 2) = inter(1, 1);

  const Mat4 pre = kron(build_coin(p.pre_a), build_coin(p.pre_b));
  const Mat4 post = kron(build_coin(p.post_a), build_coin(p.post_b));
  return mat4_mul(post, mat4_mul(inter, pre));
}

int StateVector::positions() const {
  int n = 1;
  for (int d : position_dims) n *= d;
  return n;
}

double StateVector::norm_sq() const {
  double s = 0.0;
  for (const Amplitude& a : amps) s += std::norm(a);
  return s;
}

std::vector<int> WalkSpec::position_dims() const {
  std::vector<int> dims;
  dims.reserve(position_qubits.size());
  for (int q : position_qubits) dims.push_back(1 << q);
  return dims;
}

int WalkSpec::grid_size() const {
  int n = 1;
  for (int d : position_dims()) n *= d;
  return n;
}

void WalkSpec::validate() const {
  const bool two_d = kind == WalkKind::Entangled2D;
  if (axes() != (two_d ? 2 : 1))
    throw std::invalid_argument("walk kind and axis count disagree");
  for (int q : position_qubits)
    if (q < 1) throw std::invalid_argument("position_qubits must be >= 1");
  if (steps < 0) throw std::invalid_argument("steps must be >= 0");

  const std::size_t want = static_cast<std::size_t>(steps);
  const bool count_ok = std::visit(
      [&](const auto& v) { return v.size() == want; }, layers);
  if (!count_ok) throw std::invalid_argument("layer count must equal steps");
  switch (kind) {
    case WalkKind::DTQW:
      if (!std::holds_alternative<std::vector<CoinParams>>(layers))
        throw std::invalid_argument("DTQW expects one CoinParams per step");
      break;
    case WalkKind::SSQW:
      if (!std::holds_alternative<std::vector<SsqwLayer>>(layers))
        throw std::invalid_argument("SSQW expects a coin pair per step");
      break;
    case WalkKind::Entangled2D:
      if (!std::holds_alternative<std::vector<Ent2dLayer>>(layers))
        throw std::invalid_argument(
            "Entangled2D expects an entangled coin pair per step");
      break;
  }

  if (static_cast<int>(initial_coin.size()) != coin_dim())
    throw std::invalid_argument("initial_coin size must equal the coin dimension");
  double n = 0.0;
  for (const Amplitude& a : initial_coin) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw std::invalid_argument("initial_coin amplitude is not finite");
    n += std::norm(a);
  }
  if (std::abs(n - 1.0) > 1e-12)
    throw std::invalid_argument("initial_coin must be normalized to 1e-12");

  if (!initial_position.empty()) {
    if (initial_position.size() != position_qubits.size())
      throw std::invalid_argument("initial_position needs one entry per axis");
    const auto dims = position_dims();
    for (std::size_t i = 0; i < dims.size(); ++i)
      if (initial_position[i] < 0 || initial_position[i] >= dims[i])
        throw std::invalid_argument("initial_position out of range");
  }
}

std::vector<Amplitude> symmetric_initial_coin_1d() {
  const double s = 1.0 / std::sqrt(2.0);
  return {Amplitude(s, 0.0), Amplitude(0.0, s)};
}

std::vector<Amplitude> symmetric_initial_coin_2d() {
  const auto c = symmetric_initial_coin_1d();
  std::vector<Amplitude> out(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[2 * i + j] = c[i] * c[j];
  return out;
}

void apply_coin(StateVector& state, const Mat2& coin) {
  if (state.coin_dim != 2)
    throw std::invalid_argument("2x2 coin on a non-2 coin dimension");
  const int np = state.positions();
  Amplitude* up = state.amps.data();
  Amplitude* dn = up + np;
  for (int p = 0; p < np; ++p) {
    const Amplitude u = up[p], d = dn[p];
    up[p] = coin(0, 0) * u + coin(0, 1) * d;
    dn[p] = coin(1, 0) * u + coin(1, 1) * d;
  }
}

void apply_coin(StateVector& state, const Mat4& coin) {
  if (state.coin_dim != 4)
    throw std::invalid_argument("4x4 coin on a non-4 coin dimension");
  const int np = state.positions();
  Amplitude* b0 = state.amps.data();
  Amplitude* b1 = b0 + np;
  Amplitude* b2 = b1 + np;
  Amplitude* b3 = b2 + np;
  for (int p = 0; p < np; ++p) {
    const Amplitude v0 = b0[p], v1 = b1[p], v2 = b2[p], v3 = b3[p];
    b0[p] = coin(0, 0) * v0 + coin(0, 1) * v1 + coin(0, 2) * v2 + coin(0, 3) * v3;
    b1[p] = coin(1, 0) * v0 + coin(1, 1) * v1 + coin(1, 2) * v2 + coin(1, 3) * v3;
    b2[p] = coin(2, 0) * v0 + coin(2, 1) * v1 + coin(2, 2) * v2 + coin(2, 3) * v3;
    b3[p] = coin(3, 0) * v0 + coin(3, 1) * v1 + coin(3, 2) * v2 + coin(3, 3) * v3;
  }
}

namespace {

void require_1d(const StateVector& state) {
  if (state.position_dims.size() != 1 || state.coin_dim != 2)
    throw std::invalid_argument("shift expects a 1D two-sided coin state");
}

// Cyclic x -> x+1 on one coin block (right rotation by one).
void rotate_block_right(Amplitude* block, int n) {
  std::rotate(block, block + n - 1, block + n);
}

void rotate_block_left(Amplitude* block, int n) {
  std::rotate(block, block + 1, block + n);
}

}  // namespace

void apply_shift_sym(StateVector& state) {
  require_1d(state);
  const int n = state.position_dims[0];
  rotate_block_right(state.amps.data(), n);      // |up>: x -> x+1
  rotate_block_left(state.amps.data() + n, n);   // |down>: x -> x-1
}

void apply_shift_plus(StateVector& state) {
  require_1d(state);
  const int n = state.position_dims[0];
  rotate_block_right(state.amps.data(), n);  // |up> moves, |down> holds
}

void apply_shift_minus(StateVector& state) {
  require_1d(state);
  const int n = state.position_dims[0];
  rotate_block_left(state.amps.data() + n, n);  // |down> moves, |up> holds
}

void apply_shift_2d(StateVector& state, ShiftDir dir) {
  if (state.position_dims.size() != 2 || state.coin_dim != 4)
    throw std::invalid_argument("2D shift expects a 2D four-sided coin state");
  const int nx = state.position_dims[0];
  const int ny = state.position_dims[1];
  const int np = nx * ny;
  for (int c = 0; c < 4; ++c) {
    const int c1 = (c >> 1) & 1;
    const int c2 = c & 1;
    Amplitude* block = state.amps.data() + c * np;
    if (dir == ShiftDir::Plus) {
      if (c1 == 1)  // x -> x+1: rotate rows down by one
        std::rotate(block, block + (nx - 1) * ny, block + np);
      if (c2 == 1)  // y -> y+1 within each row
        for (int x = 0; x < nx; ++x) rotate_block_right(block + x * ny, ny);
    } else {
      if (c1 == 0)  // x -> x-1
        std::rotate(block, block + ny, block + np);
      if (c2 == 0)  // y -> y-1
        for (int x = 0; x < nx; ++x) rotate_block_left(block + x * ny, ny);
    }
  }
}

StateVector evolve(const WalkSpec& spec) {
  spec.validate();
  StateVector state;
  state.coin_dim = spec.coin_dim();
  state.position_dims = spec.position_dims();
  const int np = state.positions();
  state.amps.assign(static_cast<std::size_t>(state.coin_dim) * np, Amplitude{});

  std::vector<int> pos = spec.initial_position;
  if (pos.empty())
    for (int q : spec.position_qubits) pos.push_back(center_index(q));
  int p0 = pos[0];
  if (pos.size() == 2) p0 = pos[0] * state.position_dims[1] + pos[1];
  for (int c = 0; c < state.coin_dim; ++c)
    state.amps[static_cast<std::size_t>(c) * np + p0] = spec.initial_coin[c];

  switch (spec.kind) {
    case WalkKind::DTQW:
      for (const CoinParams& layer : std::get<std::vector<CoinParams>>(spec.layers)) {
        apply_coin(state, build_coin(layer));
        apply_shift_sym(state);
      }
      break;
    case WalkKind::SSQW:
      for (const SsqwLayer& layer : std::get<std::vector<SsqwLayer>>(spec.layers)) {
        apply_coin(state, build_coin(layer.first));
        apply_shift_plus(state);
        apply_coin(state, build_coin(layer.second));
        apply_shift_minus(state);
      }
      break;
    case WalkKind::Entangled2D:
      for (const Ent2dLayer& layer : std::get<std::vector<Ent2dLayer>>(spec.layers)) {
        apply_coin(state, build_entangled_coin(layer.first));
        apply_shift_2d(state, ShiftDir::Plus);
        apply_coin(state, build_entangled_coin(layer.second));
        apply_shift_2d(state, ShiftDir::Minus);
      }
      break;
  }
  return state;
}

std::vector<double> position_probabilities(const StateVector& state) {
  const int np = state.positions();
  std::vector<double> probs(np, 0.0);
  for (int c = 0; c < state.coin_dim; ++c) {
    const Amplitude* block = state.amps.data() + static_cast<std::size_t>(c) * np;
    for (int p = 0; p < np; ++p) probs[p] += std::norm(block[p]);
  }
  return probs;
}

std::vector<std::uint64_t> sample_shots(const std::vector<double>& probabilities,
                                        std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  double total = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0)) throw std::invalid_argument("negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-8)
    throw std::invalid_argument("probabilities must sum to 1");

  std::vector<double> cdf(probabilities.size());
  std::partial_sum(probabilities.begin(), probabilities.end(), cdf.begin());
  cdf.back() = 1.0;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::uint64_t> counts(probabilities.size(), 0);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = unit(rng);
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    counts[static_cast<std::size_t>(it - cdf.begin())]++;
  }
  return counts;
}

}  // namespace qwadg
