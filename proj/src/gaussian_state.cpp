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

#include "cvbound/gaussian_state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cvbound {

namespace {

double entry_scale(const Matrix& m) {
  return std::max(1.0, m.cwiseAbs().maxCoeff());
}

bool is_symmetric(const Matrix& m) {
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= kSymmetryTol * entry_scale(m);
}

void require_mode(std::size_t mode, std::size_t n_modes, const char* what) {
  if (mode >= n_modes) {
    std::ostringstream msg;
    msg << what << ": mode " << mode << " out of range for " << n_modes << " modes";
    throw std::invalid_argument(msg.str());
  }
}

void require_distinct_modes(const ModeSet& modes, std::size_t n_modes, const char* what) {
  std::vector<bool> seen(n_modes, false);
  for (auto m : modes) {
    require_mode(m, n_modes, what);
    if (seen[m]) {
      throw std::invalid_argument(std::string(what) + ": repeated mode index");
    }
    seen[m] = true;
  }
}

}  // namespace

std::vector<std::string> moment_breaches(const Vector& mean, const Matrix& cov) {
  std::vector<std::string> breaches;
  if (cov.rows() != cov.cols()) {
    breaches.emplace_back("dimension: covariance matrix is not square");
    return breaches;
  }
  if (cov.rows() == 0 || cov.rows() % 2 != 0) {
    breaches.emplace_back("dimension: covariance size must be a positive even number");
    return breaches;
  }
  if (mean.size() != cov.rows()) {
    breaches.emplace_back("dimension: mean length differs from covariance size");
    return breaches;
  }
  if (!mean.allFinite() || !cov.allFinite()) {
    breaches.emplace_back("finiteness: moments contain NaN or infinity");
    return breaches;
  }
  if (!is_symmetric(cov)) {
    breaches.emplace_back("symmetry: covariance matrix is not symmetric within 1e-10");
    return breaches;
  }
  try {
    double nu_min = min_symplectic_eigenvalue(cov);
    if (nu_min < 0.5 - kPhysicalityTol) {
      std::ostringstream msg;
      msg.precision(12);
      msg << "physicality: minimum symplectic eigenvalue " << nu_min << " is below 1/2";
      breaches.push_back(msg.str());
    }
  } catch (const std::exception& e) {
    breaches.push_back(std::string("physicality: ") + e.what());
  }
  return breaches;
}

GaussianState GaussianState::from_moments(Vector mean, Matrix cov) {
  auto breaches = moment_breaches(mean, cov);
  if (!breaches.empty()) {
    throw std::invalid_argument("invalid Gaussian state: " + breaches.front());
  }
  Matrix sym = 0.5 * (cov + cov.transpose());
  return GaussianState(std::move(mean), std::move(sym));
}

GaussianState GaussianState::from_trusted_moments(Vector mean, Matrix cov) {
  if (cov.rows() != cov.cols() || cov.rows() == 0 || cov.rows() % 2 != 0 ||
      mean.size() != cov.rows()) {
    throw std::invalid_argument("invalid Gaussian state: dimension mismatch");
  }
  if (!is_symmetric(cov)) {
    throw std::invalid_argument("invalid Gaussian state: covariance matrix is not symmetric");
  }
  Matrix sym = 0.5 * (cov + cov.transpose());
  return GaussianState(std::move(mean), std::move(sym));
}

SymplecticMap SymplecticMap::from_matrix(Matrix s) {
  if (s.rows() != s.cols() || s.rows() == 0 || s.rows() % 2 != 0) {
    throw std::invalid_argument("symplectic map must be a square matrix of even size");
  }
  Matrix omega = symplectic_form(static_cast<std::size_t>(s.rows() / 2));
  double err = (s * omega * s.transpose() - omega).cwiseAbs().maxCoeff();
  if (!(err <= kSymplecticTol)) {
    throw std::invalid_argument("matrix is not symplectic: |S Omega S^T - Omega| = " +
                                std::to_string(err));
  }
  return SymplecticMap(std::move(s));
}

SymplecticMap operator*(const SymplecticMap& a, const SymplecticMap& b) {
  if (a.s_.rows() != b.s_.rows()) {
    throw std::invalid_argument("cannot compose symplectic maps of different size");
  }
  return SymplecticMap(a.s_ * b.s_);
}

NoisePattern NoisePattern::make(Vector pattern, double sigma) {
  if (pattern.size() == 0 || !pattern.allFinite() || pattern.cwiseAbs().maxCoeff() == 0.0) {
    throw std::invalid_argument("noise pattern must be a finite nonzero vector");
  }
  if (!std::isfinite(sigma) || sigma < 0.0) {
    throw std::invalid_argument("noise strength sigma must be finite and nonnegative");
  }
  return NoisePattern{std::move(pattern), sigma};
}

Matrix symplectic_form(std::size_t n_modes) {
  Matrix omega = Matrix::Zero(2 * n_modes, 2 * n_modes);
  for (std::size_t k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

GaussianState vacuum_state(std::size_t n_modes) {
  if (n_modes == 0) {
    throw std::invalid_argument("vacuum_state requires at least one mode");
  }
  return GaussianState::from_trusted_moments(Vector::Zero(2 * n_modes),
                                             0.5 * Matrix::Identity(2 * n_modes, 2 * n_modes));
}

GaussianState epr_pair(double r) {
  if (!(r >= 0.0)) {
    throw std::invalid_argument("squeezing parameter r must be nonnegative");
  }
  if (r > kMaxSqueezing) {
    throw std::out_of_range("squeezing parameter r exceeds the supported maximum of 20");
  }
  const double c = std::cosh(2.0 * r) / 2.0;
  const double s = std::sinh(2.0 * r) / 2.0;
  Matrix cov = c * Matrix::Identity(4, 4);
  cov(0, 2) = cov(2, 0) = -s;
  cov(1, 3) = cov(3, 1) = s;
  return GaussianState::from_trusted_moments(Vector::Zero(4), std::move(cov));
}

GaussianState tensor(const GaussianState& a, const GaussianState& b) {
  const auto na = a.cov().rows();
  const auto nb = b.cov().rows();
  Vector mean(na + nb);
  mean << a.mean(), b.mean();
  Matrix cov = Matrix::Zero(na + nb, na + nb);
  cov.topLeftCorner(na, na) = a.cov();
  cov.bottomRightCorner(nb, nb) = b.cov();
  return GaussianState::from_trusted_moments(std::move(mean), std::move(cov));
}

GaussianState apply_symplectic(const GaussianState& state, const SymplecticMap& s) {
  if (s.n_modes() != state.n_modes()) {
    throw std::invalid_argument("symplectic map size does not match the state");
  }
  const Matrix& m = s.matrix();
  Matrix cov = m * state.cov() * m.transpose();
  cov = 0.5 * (cov + cov.transpose());
  return GaussianState::from_trusted_moments(m * state.mean(), std::move(cov));
}

SymplecticMap beamsplitter(std::size_t i, std::size_t j, double theta, std::size_t n_modes) {
  require_mode(i, n_modes, "beamsplitter");
  require_mode(j, n_modes, "beamsplitter");
  if (i == j) {
    throw std::invalid_argument("beamsplitter requires two distinct modes");
  }
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Matrix m = Matrix::Identity(2 * n_modes, 2 * n_modes);
  for (std::size_t q = 0; q < 2; ++q) {
    const auto a = 2 * i + q;
    const auto b = 2 * j + q;
    m(a, a) = c;
    m(a, b) = s;
    m(b, a) = -s;
    m(b, b) = c;
  }
  return SymplecticMap::from_matrix(std::move(m));
}

SymplecticMap phase_rotation(std::size_t mode, double theta, std::size_t n_modes) {
  require_mode(mode, n_modes, "phase_rotation");
  Matrix m = Matrix::Identity(2 * n_modes, 2 * n_modes);
  const auto a = 2 * mode;
  m(a, a) = std::cos(theta);
  m(a, a + 1) = std::sin(theta);
  m(a + 1, a) = -std::sin(theta);
  m(a + 1, a + 1) = std::cos(theta);
  return SymplecticMap::from_matrix(std::move(m));
}

SymplecticMap passive_map(const Matrix& mode_matrix) {
  const auto n = mode_matrix.rows();
  if (n == 0 || mode_matrix.cols() != n) {
    throw std::invalid_argument("passive_map requires a square mode matrix");
  }
  Matrix m = Matrix::Zero(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(2 * i, 2 * j) = mode_matrix(i, j);
      m(2 * i + 1, 2 * j + 1) = mode_matrix(i, j);
    }
  }
  return SymplecticMap::from_matrix(std::move(m));
}

GaussianState add_classical_noise(const GaussianState& state, const NoisePattern& noise) {
  if (noise.pattern.size() != state.mean().size()) {
    throw std::invalid_argument("noise pattern length does not match the state");
  }
  if (!std::isfinite(noise.sigma) || noise.sigma < 0.0) {
    throw std::invalid_argument("noise strength sigma must be finite and nonnegative");
  }
  Matrix cov = state.cov();
  cov.noalias() += (noise.sigma * noise.sigma) * noise.pattern * noise.pattern.transpose();
  return GaussianState::from_trusted_moments(state.mean(), std::move(cov));
}

GaussianState partial_trace(const GaussianState& state, const ModeSet& keep) {
  if (keep.empty()) {
    throw std::invalid_argument("partial_trace requires a nonempty set of kept modes");
  }
  require_distinct_modes(keep, state.n_modes(), "partial_trace");
  const auto k = static_cast<Eigen::Index>(keep.size());
  Vector mean(2 * k);
  Matrix cov(2 * k, 2 * k);
  for (Eigen::Index a = 0; a < 2 * k; ++a) {
    const auto ra = static_cast<Eigen::Index>(2 * keep[a / 2] + a % 2);
    mean(a) = state.mean()(ra);
    for (Eigen::Index b = 0; b < 2 * k; ++b) {
      const auto rb = static_cast<Eigen::Index>(2 * keep[b / 2] + b % 2);
      cov(a, b) = state.cov()(ra, rb);
    }
  }
  return GaussianState::from_trusted_moments(std::move(mean), std::move(cov));
}

Matrix partial_transpose(const GaussianState& state, const ModeSet& flip) {
  const auto n = state.n_modes();
  if (flip.empty() || flip.size() >= n) {
    throw std::invalid_argument("partial_transpose requires a nonempty proper subset of modes");
  }
  require_distinct_modes(flip, n, "partial_transpose");
  Matrix cov = state.cov();
  for (auto m : flip) {
    const auto p = static_cast<Eigen::Index>(2 * m + 1);
    cov.row(p) *= -1.0;
    cov.col(p) *= -1.0;
  }
  return cov;
}

std::vector<double> symplectic_eigenvalues(const Matrix& cov) {
  if (cov.rows() != cov.cols() || cov.rows() == 0 || cov.rows() % 2 != 0) {
    throw std::invalid_argument("symplectic_eigenvalues requires a square matrix of even size");
  }
  if (!cov.allFinite() || !is_symmetric(cov)) {
    throw std::invalid_argument("symplectic_eigenvalues requires a finite symmetric matrix");
  }
  const auto n = static_cast<std::size_t>(cov.rows() / 2);
  Eigen::LLT<Matrix> llt(0.5 * (cov + cov.transpose()));
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("symplectic_eigenvalues requires a positive definite matrix");
  }
  // L^T Omega L is similar to Omega cov and antisymmetric, so its singular
  // values are the nu_k, each appearing twice.
  Matrix l = llt.matrixL();
  Matrix k = l.transpose() * symplectic_form(n) * l;
  Eigen::JacobiSVD<Matrix> svd(k);
  Vector sv = svd.singularValues();
  std::vector<double> values(sv.data(), sv.data() + sv.size());
  std::sort(values.begin(), values.end());
  std::vector<double> nu;
  nu.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = values[2 * i];
    const double b = values[2 * i + 1];
    if (std::abs(a - b) > kPairCollapseTol) {
      std::ostringstream msg;
      msg.precision(12);
      msg << "symplectic spectrum does not pair: " << a << " vs " << b;
      throw NumericalFailure(msg.str());
    }
    nu.push_back(0.5 * (a + b));
  }
  return nu;
}

double min_symplectic_eigenvalue(const Matrix& cov) {
  return symplectic_eigenvalues(cov).front();
}

double quad_variance(const GaussianState& state, const Vector& coeffs) {
  if (coeffs.size() != state.mean().size()) {
    throw std::invalid_argument("coefficient vector length does not match the state");
  }
  return coeffs.dot(state.cov() * coeffs);
}

Vector quadrature_vector(std::size_t n_modes, std::size_t mode, Quadrature q, double weight) {
  require_mode(mode, n_modes, "quadrature_vector");
  Vector v = Vector::Zero(2 * n_modes);
  v(2 * mode + (q == Quadrature::p ? 1 : 0)) = weight;
  return v;
}

GaussianSampler::GaussianSampler(const GaussianState& state, std::uint64_t seed)
    : mean_(state.mean()), engine_(seed) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(state.cov());
  if (eig.info() != Eigen::Success) {
    throw std::invalid_argument("sampler: eigen-decomposition of the covariance failed");
  }
  const Vector& d = eig.eigenvalues();
  if (d.minCoeff() < -kSymmetryTol * std::max(1.0, d.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("sampler: covariance matrix is not positive semidefinite");
  }
  factor_ = eig.eigenvectors() * d.cwiseMax(0.0).cwiseSqrt().asDiagonal();
  normals_.resize(mean_.size());
}

void GaussianSampler::draw(Vector& out) {
  for (Eigen::Index i = 0; i < normals_.size(); ++i) {
    normals_(i) = normal_(engine_);
  }
  out.noalias() = mean_ + factor_ * normals_;
}

SampleMoments sample_oracle(const GaussianState& state, std::size_t count, std::uint64_t seed) {
  if (count < 2) {
    throw std::invalid_argument("sample_oracle requires at least two samples");
  }
  GaussianSampler sampler(state, seed);
  const auto dim = state.mean().size();
  Vector mean = Vector::Zero(dim);
  Matrix m2 = Matrix::Zero(dim, dim);
  Vector x(dim);
  Vector delta(dim);
  // Welford accumulation.
  for (std::size_t k = 1; k <= count; ++k) {
    sampler.draw(x);
    delta = x - mean;
    mean += delta / static_cast<double>(k);
    m2.noalias() += delta * (x - mean).transpose();
  }
  SampleMoments out;
  out.mean = std::move(mean);
  out.cov = m2 / static_cast<double>(count - 1);
  out.cov = 0.5 * (out.cov + out.cov.transpose());
  out.count = count;
  return out;
}

}  // namespace cvbound
