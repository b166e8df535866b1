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

#include "cvbound/stabilizer.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cvbound {

PauliElement PauliElement::make(Vector s, Vector t) {
  if (s.size() != t.size() || s.size() == 0) {
    throw std::invalid_argument("Pauli element needs equal nonzero-length s and t vectors");
  }
  return PauliElement{std::move(s), std::move(t)};
}

Nullifier Nullifier::make(Vector coeffs) {
  if (coeffs.size() == 0 || coeffs.size() % 2 != 0) {
    throw std::invalid_argument("nullifier coefficients must have even nonzero length");
  }
  if (!coeffs.allFinite() || coeffs.cwiseAbs().maxCoeff() == 0.0) {
    throw std::invalid_argument("nullifier coefficients must be finite and not all zero");
  }
  return Nullifier{std::move(coeffs)};
}

Nullifier Nullifier::from_pauli(const PauliElement& g) {
  const auto n = g.s.size();
  Vector c(2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    c(2 * k) = g.t(k);
    c(2 * k + 1) = -g.s(k);
  }
  return Nullifier::make(std::move(c));
}

PauliElement Nullifier::to_pauli() const {
  const auto n = coeffs.size() / 2;
  Vector s(n);
  Vector t(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    t(k) = coeffs(2 * k);
    s(k) = -coeffs(2 * k + 1);
  }
  return PauliElement{std::move(s), std::move(t)};
}

Partition Partition::make(std::vector<ModeSet> subsets, std::size_t n_modes) {
  if (subsets.empty()) {
    throw std::invalid_argument("partition needs at least one subset");
  }
  std::vector<int> owner(n_modes, -1);
  for (std::size_t a = 0; a < subsets.size(); ++a) {
    if (subsets[a].empty()) {
      throw std::invalid_argument("partition subsets must be nonempty");
    }
    for (auto m : subsets[a]) {
      if (m >= n_modes) {
        throw std::invalid_argument("partition references a mode outside the system");
      }
      if (owner[m] != -1) {
        throw std::invalid_argument("partition subsets must be disjoint");
      }
      owner[m] = static_cast<int>(a);
    }
  }
  if (std::find(owner.begin(), owner.end(), -1) != owner.end()) {
    throw std::invalid_argument("partition subsets must cover every mode");
  }
  return Partition(std::move(subsets), n_modes);
}

Partition Partition::parse(const std::string& label, std::size_t n_modes) {
  std::vector<ModeSet> subsets;
  ModeSet current;
  std::string number;
  bool has_commas = label.find(',') != std::string::npos;
  auto flush_number = [&] {
    if (number.empty()) return;
    const auto value = std::stoul(number);
    if (value == 0) {
      throw std::invalid_argument("partition labels are 1-based");
    }
    current.push_back(value - 1);
    number.clear();
  };
  for (char ch : label) {
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      if (has_commas) {
        number.push_back(ch);
      } else {
        number.assign(1, ch);
        flush_number();
      }
    } else if (ch == ',') {
      flush_number();
    } else if (ch == '-' || ch == '|' || ch == ':') {
      flush_number();
      subsets.push_back(std::move(current));
      current.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      throw std::invalid_argument("unexpected character in partition label: " + label);
    }
  }
  flush_number();
  subsets.push_back(std::move(current));
  return Partition::make(std::move(subsets), n_modes);
}

std::string Partition::label() const {
  const bool wide = n_modes_ > 9;
  std::ostringstream out;
  for (std::size_t a = 0; a < subsets_.size(); ++a) {
    if (a) out << '-';
    ModeSet sorted = subsets_[a];
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (wide && i) out << ',';
      out << sorted[i] + 1;
    }
  }
  return out.str();
}

double symplectic_phase(const PauliElement& u, const PauliElement& v) {
  if (u.s.size() != v.s.size() || u.t.size() != v.t.size()) {
    throw std::invalid_argument("symplectic_phase: elements act on different mode counts");
  }
  return v.s.dot(u.t) - u.s.dot(v.t);
}

bool commutes(const PauliElement& u, const PauliElement& v, double tol) {
  return std::abs(symplectic_phase(u, v)) <= tol;
}

PauliElement restrict(const PauliElement& g, const ModeSet& subset) {
  if (subset.empty()) {
    throw std::invalid_argument("restrict requires a nonempty subset");
  }
  PauliElement out{Vector::Zero(g.s.size()), Vector::Zero(g.t.size())};
  for (auto m : subset) {
    if (m >= g.n_modes()) {
      throw std::invalid_argument("restrict: mode outside the element's support");
    }
    out.s(m) = g.s(m);
    out.t(m) = g.t(m);
  }
  return out;
}

bool CommutationTable::all_commuting(double tol) const {
  return max_abs() <= tol;
}

double CommutationTable::max_abs() const {
  double worst = 0.0;
  for (const auto& m : per_subset) {
    if (m.size()) worst = std::max(worst, m.cwiseAbs().maxCoeff());
  }
  return worst;
}

CommutationTable partition_commutation_table(const std::vector<PauliElement>& gens,
                                             const Partition& part) {
  if (gens.empty()) {
    throw std::invalid_argument("partition_commutation_table needs at least one generator");
  }
  CommutationTable table;
  const auto k = static_cast<Eigen::Index>(gens.size());
  for (const auto& subset : part.subsets()) {
    std::vector<PauliElement> local;
    local.reserve(gens.size());
    for (const auto& g : gens) local.push_back(restrict(g, subset));
    Matrix omega(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = 0; j < k; ++j) {
        omega(i, j) = symplectic_phase(local[i], local[j]);
      }
    }
    table.per_subset.push_back(std::move(omega));
  }
  return table;
}

double nullifier_variance(const GaussianState& state, const Nullifier& h) {
  if (h.coeffs.size() != state.mean().size()) {
    throw std::invalid_argument("nullifier_variance: nullifier and state sizes differ");
  }
  return quad_variance(state, h.coeffs);
}

bool is_complete_on(const std::vector<PauliElement>& gens, const ModeSet& subset, double tol) {
  if (gens.empty() || subset.empty()) return false;
  const auto width = static_cast<Eigen::Index>(subset.size());
  Matrix rows(static_cast<Eigen::Index>(gens.size()), 2 * width);
  std::vector<PauliElement> local;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    local.push_back(restrict(gens[i], subset));
    for (Eigen::Index j = 0; j < width; ++j) {
      rows(static_cast<Eigen::Index>(i), j) = local.back().s(subset[j]);
      rows(static_cast<Eigen::Index>(i), width + j) = local.back().t(subset[j]);
    }
  }
  Eigen::JacobiSVD<Matrix> svd(rows);
  const Vector& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return false;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > 1e-9 * sv(0)) ++rank;
  }
  if (rank != width) return false;
  for (std::size_t i = 0; i < local.size(); ++i) {
    for (std::size_t j = i + 1; j < local.size(); ++j) {
      if (!commutes(local[i], local[j], tol)) return false;
    }
  }
  return true;
}

std::vector<PauliElement> bound_state_generators(std::size_t n_modes) {
  if (n_modes < 2 || n_modes % 2 != 0) {
    throw std::invalid_argument("bound-state generators need an even number of modes >= 2");
  }
  const auto n = static_cast<Eigen::Index>(n_modes);
  Vector alternating(n);
  for (Eigen::Index k = 0; k < n; ++k) alternating(k) = (k % 2 == 0) ? 1.0 : -1.0;
  return {PauliElement::make(Vector::Zero(n), Vector::Ones(n)),
          PauliElement::make(alternating, Vector::Zero(n))};
}

std::vector<Nullifier> bound_state_nullifiers(std::size_t n_modes) {
  if (n_modes < 2 || n_modes % 2 != 0) {
    throw std::invalid_argument("bound-state nullifiers need an even number of modes >= 2");
  }
  Vector h1 = Vector::Zero(2 * n_modes);
  Vector h2 = Vector::Zero(2 * n_modes);
  for (std::size_t k = 0; k < n_modes; ++k) {
    h1(2 * k) = 1.0;
    h2(2 * k + 1) = (k % 2 == 0) ? 1.0 : -1.0;
  }
  return {Nullifier::make(std::move(h1)), Nullifier::make(std::move(h2))};
}

}  // namespace cvbound
