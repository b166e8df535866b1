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

#include "cvbound/serialization.hpp"

#include <stdexcept>
#include <string>

namespace cvbound {

namespace {

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

double number_at(const Json& value, const std::string& where) {
  if (!value.is_number()) {
    throw std::invalid_argument("expected a number at " + where);
  }
  return value.get<double>();
}

}  // namespace

Json state_to_json(const GaussianState& state) {
  Json cov = Json::array();
  for (Eigen::Index r = 0; r < state.cov().rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < state.cov().cols(); ++c) row.push_back(state.cov()(r, c));
    cov.push_back(std::move(row));
  }
  return Json{{"n_modes", state.n_modes()}, {"mean", vector_to_json(state.mean())}, {"cov", cov}};
}

RawMoments raw_moments_from_json(const Json& doc) {
  if (!doc.is_object()) {
    throw std::invalid_argument("state document must be a JSON object");
  }
  for (const char* key : {"n_modes", "mean", "cov"}) {
    if (!doc.contains(key)) {
      throw std::invalid_argument(std::string("state document lacks \"") + key + "\"");
    }
  }
  if (!doc["n_modes"].is_number_unsigned() || doc["n_modes"].get<std::size_t>() == 0) {
    throw std::invalid_argument("\"n_modes\" must be a positive integer");
  }
  const auto dim = static_cast<Eigen::Index>(2 * doc["n_modes"].get<std::size_t>());
  const Json& mean = doc["mean"];
  const Json& cov = doc["cov"];
  if (!mean.is_array() || static_cast<Eigen::Index>(mean.size()) != dim) {
    throw std::invalid_argument("\"mean\" must hold 2 * n_modes numbers");
  }
  if (!cov.is_array() || static_cast<Eigen::Index>(cov.size()) != dim) {
    throw std::invalid_argument("\"cov\" must hold 2 * n_modes rows");
  }
  RawMoments out{Vector(dim), Matrix(dim, dim)};
  for (Eigen::Index i = 0; i < dim; ++i) {
    out.mean(i) = number_at(mean[i], "mean[" + std::to_string(i) + "]");
    const Json& row = cov[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
      throw std::invalid_argument("\"cov\" row " + std::to_string(i) + " has the wrong length");
    }
    for (Eigen::Index j = 0; j < dim; ++j) {
      out.cov(i, j) =
          number_at(row[j], "cov[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
  }
  return out;
}

GaussianState state_from_json(const Json& doc) {
  RawMoments raw = raw_moments_from_json(doc);
  return GaussianState::from_moments(std::move(raw.mean), std::move(raw.cov));
}

BoundStateSpec spec_from_json(const Json& doc, BoundStateSpec defaults) {
  if (!doc.is_object()) {
    throw std::invalid_argument("spec document must be a JSON object");
  }
  BoundStateSpec spec = defaults;
  if (doc.contains("n_pairs")) {
    if (!doc["n_pairs"].is_number_unsigned()) {
      throw std::invalid_argument("\"n_pairs\" must be a positive integer");
    }
    spec.n_pairs = doc["n_pairs"].get<std::size_t>();
  }
  if (doc.contains("r")) spec.r = number_at(doc["r"], "r");
  if (doc.contains("sigma")) {
    spec.sigma_x = spec.sigma_p = number_at(doc["sigma"], "sigma");
  }
  if (doc.contains("sigma_x")) spec.sigma_x = number_at(doc["sigma_x"], "sigma_x");
  if (doc.contains("sigma_p")) spec.sigma_p = number_at(doc["sigma_p"], "sigma_p");
  spec.validate();
  return spec;
}

Json spec_to_json(const BoundStateSpec& spec) {
  return Json{{"n_pairs", spec.n_pairs},
              {"r", spec.r},
              {"sigma_x", spec.sigma_x},
              {"sigma_p", spec.sigma_p}};
}

Json nullifiers_to_json(const std::vector<Nullifier>& nullifiers, const GaussianState* state) {
  Json list = Json::array();
  for (const auto& h : nullifiers) {
    Json entry{{"coeffs", vector_to_json(h.coeffs)}};
    if (state) entry["variance"] = nullifier_variance(*state, h);
    list.push_back(std::move(entry));
  }
  return Json{{"ordering", "xp-interleaved"}, {"nullifiers", list}};
}

Json report_to_json(const ProtocolReport& report) {
  Json survivors = Json::array();
  for (auto m : report.surviving_modes) survivors.push_back(m + 1);
  Json params = Json::object();
  for (const auto& [key, value] : report.params) params[key] = value;
  Json feedforward = Json::array();
  for (const auto& ff : report.feedforward) {
    feedforward.push_back({{"target", ff.target + 1}, {"gain_x", ff.gain_x}, {"gain_p", ff.gain_p}});
  }
  return Json{{"survivors", survivors},
              {"survivor_labels", report.survivor_labels},
              {"witness_sum_x", report.witness_sum_x},
              {"witness_diff_p", report.witness_diff_p},
              {"duan", report.duan},
              {"duan_other_sign", report.duan_other_sign},
              {"duan_sign", report.duan_sign},
              {"entangled", report.entangled},
              {"feedforward", feedforward},
              {"conditioned_state", state_to_json(report.conditioned_state)},
              {"params", params}};
}

}  // namespace cvbound
