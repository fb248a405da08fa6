#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <variant>
#include <vector>

namespace qwadg {

using Amplitude = std::complex<double>;

/// Row-major 2x2 complex matrix.
struct Mat2 {
  std::array<Amplitude, 4> m{};
  Amplitude& operator()(int r, int c) { return m[r * 2 + c]; }
  const Amplitude& operator()(int r, int c) const { return m[r * 2 + c]; }
};

/// Row-major 4x4 complex matrix.
struct Mat4 {
  std::array<Amplitude, 16> m{};
  Amplitude& operator()(int r, int c) { return m[r * 4 + c]; }
  const Amplitude& operator()(int r, int c) const { return m[r * 4 + c]; }
};

Mat2 mat2_mul(const Mat2& a, const Mat2& b);
Mat4 mat4_mul(const Mat4& a, const Mat4& b);
Mat4 kron(const Mat2& a, const Mat2& b);

/// Three-angle coin parameterization (U3 form). Angles are wrapped into
/// [0, 2*pi) on construction.
struct CoinParams {
  double theta = 0.0;
  double phi = 0.0;
  double lambda = 0.0;

  CoinParams() = default;
  CoinParams(double theta_, double phi_, double lambda_);
};

/// XX/YY/ZZ interaction strengths of the two-qubit coin.
struct InteractionAngles {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/// 15-angle local--interaction--local parameterization of a 4x4 coin:
/// (post_a (x) post_b) * exp(i(a XX + b YY + c ZZ)) * (pre_a (x) pre_b).
/// Spans all two-qubit unitaries up to global phase; interaction = 0
/// reduces it to a product coin.
struct EntangledCoinParams {
  CoinParams pre_a, pre_b;
  InteractionAngles interaction;
  CoinParams post_a, post_b;
};

enum class WalkKind { DTQW, SSQW, Entangled2D };

struct SsqwLayer {
  CoinParams first, second;
};

struct Ent2dLayer {
  EntangledCoinParams first, second;
};

/// Walk topology plus per-step coin parameters. Layer count must equal
/// `steps`; the layer variant must match `kind`.
struct WalkSpec {
  WalkKind kind = WalkKind::DTQW;
  std::vector<int> position_qubits;  // one entry per axis
  int steps = 0;
  std::variant<std::vector<CoinParams>, std::vector<SsqwLayer>,
               std::vector<Ent2dLayer>>
      layers;
  std::vector<Amplitude> initial_coin;  // 2 amplitudes (1D) or 4 (2D)
  std::vector<int> initial_position;    // per axis; empty = center 2^(n-1)

  int axes() const { return static_cast<int>(position_qubits.size()); }
  int coin_dim() const { return kind == WalkKind::Entangled2D ? 4 : 2; }
  std::vector<int> position_dims() const;
  int grid_size() const;
  void validate() const;  // throws std::invalid_argument
};

/// Default symmetric initial coin (|up> + i|down>)/sqrt(2).
std::vector<Amplitude> symmetric_initial_coin_1d();
/// Per-axis symmetric product coin for the 2D walk.
std::vector<Amplitude> symmetric_initial_coin_2d();

/// Dense walker state over coin (x) position. The coin index is the
/// slowest-varying axis, then x, then y; so the amplitude of coin c at
/// flat position p lives at amps[c * positions() + p].
struct StateVector {
  int coin_dim = 2;
  std::vector<int> position_dims;
  std::vector<Amplitude> amps;

  int positions() const;
  double norm_sq() const;
};

enum class ShiftDir { Plus, Minus };

Mat2 build_coin(const CoinParams& params);
Mat4 build_entangled_coin(const EntangledCoinParams& params);

void apply_coin(StateVector& state, const Mat2& coin);
void apply_coin(StateVector& state, const Mat4& coin);

/// Symmetric conditional shift: coin-up moves x+1, coin-down moves x-1,
/// cyclically.
void apply_shift_sym(StateVector& state);
/// Split-step half shifts: plus moves coin-up to x+1 and holds coin-down;
/// minus moves coin-down to x-1 and holds coin-up.
void apply_shift_plus(StateVector& state);
void apply_shift_minus(StateVector& state);
/// 2D conditional shift on joint coin |c1 c2>: plus moves x+1 when c1=1
/// and y+1 when c2=1; minus moves x-1 when c1=0 and y-1 when c2=0.
void apply_shift_2d(StateVector& state, ShiftDir dir);

/// Build the initial product state of `spec` and run all steps.
StateVector evolve(const WalkSpec& spec);

/// Coin-marginalized measurement distribution. 2D states come back
/// row-major as x * Ny + y.
std::vector<double> position_probabilities(const StateVector& state);

/// Reproducible multinomial draw; counts sum to `shots`.
std::vector<std::uint64_t> sample_shots(const std::vector<double>& probabilities,
                                        std::uint64_t shots,
                                        std::uint64_t seed);

}  // namespace qwadg
