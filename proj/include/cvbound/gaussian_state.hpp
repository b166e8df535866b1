// Copyright 2026 The cvbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CVBOUND_GAUSSIAN_STATE_HPP
#define CVBOUND_GAUSSIAN_STATE_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

/// Covariance-matrix description of bosonic Gaussian states.
///
/// Conventions used throughout the library:
///   * quadratures are interleaved per mode, (x_1, p_1, x_2, p_2, ...);
///   * [x, p] = i, so the vacuum has quadrature variance 1/2;
///   * `cov` stores true second moments, cov_ij = <{dR_i, dR_j}>/2.
///
/// Some references write the Wigner function as pi^-N exp(-R^T G^-1 R),
/// which makes their matrix G equal to twice the `cov` stored here. Direct
/// variances such as var(x_1 + x_2) are convention independent and can be
/// compared without conversion.
///
/// Modes are addressed with 0-based indices in the library API. The CLI
/// uses 1-based labels.
namespace cvbound {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using ModeSet = std::vector<std::size_t>;

/// Thrown when an eigen-solver result cannot be interpreted, e.g. a
/// symplectic spectrum whose +-i nu pairs do not collapse.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kSymmetryTol = 1e-10;
inline constexpr double kPhysicalityTol = 1e-9;
inline constexpr double kPairCollapseTol = 1e-8;
inline constexpr double kSymplecticTol = 1e-10;
/// Largest accepted squeezing parameter. cosh(40)/2 is about 1.2e17.
inline constexpr double kMaxSqueezing = 20.0;

enum class Quadrature { x, p };

/// Lists every broken state invariant (dimensions, finiteness, symmetry,
/// physicality). An empty result means the moments describe a valid state.
std::vector<std::string> moment_breaches(const Vector& mean, const Matrix& cov);

class GaussianState {
 public:
  /// Validated construction; throws std::invalid_argument naming the first
  /// broken invariant.
  static GaussianState from_moments(Vector mean, Matrix cov);

  /// Construction for moments that are physical by derivation. Only
  /// dimensions and symmetry are checked, which keeps huge-squeezing states
  /// (whose spectra are not resolvable in double precision) constructible.
  static GaussianState from_trusted_moments(Vector mean, Matrix cov);

  std::size_t n_modes() const { return static_cast<std::size_t>(mean_.size() / 2); }
  const Vector& mean() const { return mean_; }
  const Matrix& cov() const { return cov_; }

 private:
  GaussianState(Vector mean, Matrix cov) : mean_(std::move(mean)), cov_(std::move(cov)) {}

  Vector mean_;
  Matrix cov_;
};

class SymplecticMap {
 public:
  /// Throws std::invalid_argument unless S Omega S^T = Omega within 1e-10.
  static SymplecticMap from_matrix(Matrix s);

  std::size_t n_modes() const { return static_cast<std::size_t>(s_.rows() / 2); }
  const Matrix& matrix() const { return s_; }

  /// Composition: (a * b) applies b first.
  friend SymplecticMap operator*(const SymplecticMap& a, const SymplecticMap& b);

 private:
  explicit SymplecticMap(Matrix s) : s_(std::move(s)) {}
  Matrix s_;
};

/// Classical Gaussian displacement noise along a fixed quadrature pattern.
struct NoisePattern {
  Vector pattern;
  double sigma = 0.0;

  static NoisePattern make(Vector pattern, double sigma);
};

/// Omega for n modes: block diagonal with [[0, 1], [-1, 0]] blocks.
Matrix symplectic_form(std::size_t n_modes);

GaussianState vacuum_state(std::size_t n_modes);

/// Two-mode squeezed vacuum with var(x1 + x2) = var(p1 - p2) = e^{-2r}.
GaussianState epr_pair(double r);

/// Block-diagonal product; modes of `a` come first.
GaussianState tensor(const GaussianState& a, const GaussianState& b);

GaussianState apply_symplectic(const GaussianState& state, const SymplecticMap& s);

/// x_i -> cos(t) x_i + sin(t) x_j, x_j -> -sin(t) x_i + cos(t) x_j, and the
/// same for p. theta = pi/4 is the balanced beamsplitter.
SymplecticMap beamsplitter(std::size_t i, std::size_t j, double theta, std::size_t n_modes);

/// Phase-space rotation of one mode: x -> cos(t) x + sin(t) p,
/// p -> -sin(t) x + cos(t) p.
SymplecticMap phase_rotation(std::size_t mode, double theta, std::size_t n_modes);

/// Linear-optics map acting identically on x and p, new_q = sum_j U_ij q_j.
/// U must be orthogonal.
SymplecticMap passive_map(const Matrix& mode_matrix);

/// cov -> cov + sigma^2 pattern pattern^T; the mean is unchanged.
GaussianState add_classical_noise(const GaussianState& state, const NoisePattern& noise);

/// Reduced state on `keep`, in the order given.
GaussianState partial_trace(const GaussianState& state, const ModeSet& keep);

/// T cov T with T flipping the sign of p on every mode in `flip`.
Matrix partial_transpose(const GaussianState& state, const ModeSet& flip);

/// Williamson spectrum, ascending, one value per mode.
std::vector<double> symplectic_eigenvalues(const Matrix& cov);

double min_symplectic_eigenvalue(const Matrix& cov);

/// coeffs^T cov coeffs.
double quad_variance(const GaussianState& state, const Vector& coeffs);

/// Coefficient vector of a single quadrature of one mode.
Vector quadrature_vector(std::size_t n_modes, std::size_t mode, Quadrature q, double weight = 1.0);

/// Draws phase-space samples distributed as the state's Wigner function.
///
/// Every linear combination of the sampled quadratures has the mean and
/// variance of the corresponding symmetrically ordered observable, which is
/// all the Monte-Carlo cross-checks in this library rely on.
class GaussianSampler {
 public:
  GaussianSampler(const GaussianState& state, std::uint64_t seed);

  /// Writes one sample into `out` (resized to 2n).
  void draw(Vector& out);

 private:
  Vector mean_;
  Matrix factor_;
  Vector normals_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

struct SampleMoments {
  Vector mean;
  Matrix cov;
  std::size_t count = 0;
};

/// Empirical moments (unbiased covariance) of `count` samples.
SampleMoments sample_oracle(const GaussianState& state, std::size_t count, std::uint64_t seed);

}  // namespace cvbound

#endif  // CVBOUND_GAUSSIAN_STATE_HPP
