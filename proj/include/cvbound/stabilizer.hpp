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

#ifndef CVBOUND_STABILIZER_HPP
#define CVBOUND_STABILIZER_HPP

#include <string>
#include <vector>

#include "cvbound/gaussian_state.hpp"

namespace cvbound {

/// Weyl displacement U(s, t) = exp(i sum_k (-s_k p_k + t_k x_k)).
/// `s` shifts positions (X-type), `t` shifts momenta (Z-type).
struct PauliElement {
  Vector s;
  Vector t;

  static PauliElement make(Vector s, Vector t);
  std::size_t n_modes() const { return static_cast<std::size_t>(s.size()); }
};

/// Hermitian generator H = sum_k (a_k x_k + b_k p_k), stored interleaved as
/// (a_1, b_1, a_2, b_2, ...). U = exp(iH) relates to PauliElement through
/// t_k = a_k and s_k = -b_k.
struct Nullifier {
  Vector coeffs;

  static Nullifier make(Vector coeffs);
  static Nullifier from_pauli(const PauliElement& g);
  PauliElement to_pauli() const;
  std::size_t n_modes() const { return static_cast<std::size_t>(coeffs.size() / 2); }
};

/// Disjoint covering grouping of modes into parties.
class Partition {
 public:
  static Partition make(std::vector<ModeSet> subsets, std::size_t n_modes);

  /// Parses labels like "12-34" or "1,4|2,3" (1-based modes). Single-digit
  /// groups may be written without commas.
  static Partition parse(const std::string& label, std::size_t n_modes);

  const std::vector<ModeSet>& subsets() const { return subsets_; }
  std::size_t n_modes() const { return n_modes_; }

  /// Canonical 1-based label, e.g. "14-23".
  std::string label() const;

 private:
  Partition(std::vector<ModeSet> subsets, std::size_t n_modes)
      : subsets_(std::move(subsets)), n_modes_(n_modes) {}

  std::vector<ModeSet> subsets_;
  std::size_t n_modes_ = 0;
};

/// omega(u, v) = sum_k (s'_k t_k - s_k t'_k) for u = (s, t), v = (s', t').
double symplectic_phase(const PauliElement& u, const PauliElement& v);

bool commutes(const PauliElement& u, const PauliElement& v, double tol = 1e-12);

/// Zeroes every displacement outside `subset`.
PauliElement restrict(const PauliElement& g, const ModeSet& subset);

struct CommutationTable {
  /// One k x k matrix of omega values per partition subset, computed on the
  /// generators restricted to that subset.
  std::vector<Matrix> per_subset;

  bool all_commuting(double tol = 1e-12) const;
  double max_abs() const;
};

CommutationTable partition_commutation_table(const std::vector<PauliElement>& gens,
                                             const Partition& part);

double nullifier_variance(const GaussianState& state, const Nullifier& h);

/// True when the restrictions of `gens` to `subset` span an isotropic
/// subspace of dimension |subset|: exactly |subset| independent local
/// generators that pairwise commute within `tol`. Rank uses a singular-value
/// threshold of 1e-9 times the largest singular value.
bool is_complete_on(const std::vector<PauliElement>& gens, const ModeSet& subset, double tol = 1e-12);

/// U_1 = Z_1(1) Z_2(1) ... Z_2n(1) and U_2 = X_1(1) X_2(-1) ... X_2n(-1).
std::vector<PauliElement> bound_state_generators(std::size_t n_modes);

/// H_1 = x_1 + x_2 + ... + x_2n and H_2 = p_1 - p_2 + ... - p_2n.
std::vector<Nullifier> bound_state_nullifiers(std::size_t n_modes);

}  // namespace cvbound

#endif  // CVBOUND_STABILIZER_HPP
