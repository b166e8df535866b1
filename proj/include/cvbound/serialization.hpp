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

#ifndef CVBOUND_SERIALIZATION_HPP
#define CVBOUND_SERIALIZATION_HPP

#include <json.hpp>

#include "cvbound/gaussian_state.hpp"
#include "cvbound/protocols.hpp"
#include "cvbound/stabilizer.hpp"
#include "cvbound/state_factory.hpp"

namespace cvbound {

using Json = nlohmann::json;

/// {"n_modes": n, "mean": [...], "cov": [[...], ...]}, full row-major matrix.
Json state_to_json(const GaussianState& state);

/// Validated load; throws std::invalid_argument on malformed documents or
/// moments that fail the state invariants.
GaussianState state_from_json(const Json& doc);

struct RawMoments {
  Vector mean;
  Matrix cov;
};

/// Shape-checked load without physical validation, for diagnostics.
RawMoments raw_moments_from_json(const Json& doc);

/// {"n_pairs": .., "r": .., "sigma_x": .., "sigma_p": ..}. Missing keys keep
/// the values of `defaults`; "sigma" sets both deviations.
BoundStateSpec spec_from_json(const Json& doc, BoundStateSpec defaults = {2, 1.0, 1.0, 1.0});
Json spec_to_json(const BoundStateSpec& spec);

/// Nullifier list with the xp-interleaved coefficient ordering and, when a
/// state is given, each nullifier's variance.
Json nullifiers_to_json(const std::vector<Nullifier>& nullifiers,
                        const GaussianState* state = nullptr);

/// {"survivors": [1-based], "witness_sum_x", "witness_diff_p", "duan",
///  "entangled", "params", ...}.
Json report_to_json(const ProtocolReport& report);

}  // namespace cvbound

#endif  // CVBOUND_SERIALIZATION_HPP
