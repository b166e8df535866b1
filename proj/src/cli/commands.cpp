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

#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cvbound/protocols.hpp"
#include "cvbound/serialization.hpp"

namespace cvbound::cli {

namespace {

/// Raised for bad flags, unreadable inputs and unwritable outputs.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

struct RunConfig {
  std::string command;
  std::size_t pairs = 2;
  double r = 1.0;
  double sigma = 1.0;
  double sigma_x = 1.0;
  double sigma_p = 1.0;
  std::string bipartition;
  std::string pair = "1,4";
  std::string grid_r = "0.5,1,2";
  std::string grid_sigma = "0:2:0.05";
  std::string out_path;
  std::string format;
  std::uint64_t seed = 7;
  unsigned jobs = 1;
  std::string state_path;
  std::string config_path;
  std::size_t samples = 100000;

  // Set from option counts after parsing.
  bool has_pairs = false, has_r = false, has_sigma = false, has_sigma_x = false,
       has_sigma_p = false;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError("malformed JSON in " + path + ": " + e.what());
  }
}

BoundStateSpec resolve_spec(const RunConfig& cfg) {
  BoundStateSpec spec{2, 1.0, 1.0, 1.0};
  try {
    if (!cfg.config_path.empty()) spec = spec_from_json(read_json_file(cfg.config_path), spec);
    if (cfg.has_pairs) spec.n_pairs = cfg.pairs;
    if (cfg.has_r) spec.r = cfg.r;
    if (cfg.has_sigma) spec.sigma_x = spec.sigma_p = cfg.sigma;
    if (cfg.has_sigma_x) spec.sigma_x = cfg.sigma_x;
    if (cfg.has_sigma_p) spec.sigma_p = cfg.sigma_p;
    spec.validate();
  } catch (const std::logic_error& e) {
    throw UsageError(e.what());
  }
  return spec;
}

GaussianState build_state(const BoundStateSpec& spec) {
  return spec.n_pairs == 2 ? smolin_cv_four(spec) : smolin_cv_2n(spec);
}

GaussianState load_state(const std::string& path) {
  try {
    return state_from_json(read_json_file(path));
  } catch (const std::invalid_argument& e) {
    throw UsageError("malformed state file " + path + ": " + e.what());
  }
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out_path);
  if (!file || !(file << text) || !file.flush()) {
    throw UsageError("cannot write " + cfg.out_path);
  }
}

std::vector<Bipartition> selected_cuts(const RunConfig& cfg, std::size_t n_modes) {
  try {
    if (!cfg.bipartition.empty()) return {Bipartition::parse(cfg.bipartition, n_modes)};
    if (n_modes != 4) {
      throw UsageError("--bipartition is required for states with more than four modes");
    }
    return {Bipartition::parse("12-34", 4), Bipartition::parse("14-23", 4),
            Bipartition::parse("13-24", 4)};
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

bool is_pair_cut(const Bipartition& bp) {
  return bp.n_modes() == 4 && bp.side_a().size() == 2;
}

// ---------------------------------------------------------------- build

int cmd_build(const RunConfig& cfg, std::ostream& out) {
  const BoundStateSpec spec = resolve_spec(cfg);
  emit(cfg, state_to_json(build_state(spec)).dump(2) + "\n", out);
  return kExitOk;
}

// ----------------------------------------------------------- nullifiers

int cmd_nullifiers(const RunConfig& cfg, std::ostream& out) {
  const BoundStateSpec spec = resolve_spec(cfg);
  const GaussianState state = build_state(spec);
  const auto n = spec.n_modes();
  Json doc = nullifiers_to_json(bound_state_nullifiers(n), &state);
  doc["expected_variance"] = static_cast<double>(spec.n_pairs) * std::exp(-2.0 * spec.r);
  const auto gens = bound_state_generators(n);
  doc["global_phase"] = symplectic_phase(gens[0], gens[1]);
  Json tables = Json::array();
  for (const auto& bp : selected_cuts(cfg, n)) {
    const Partition part = bp.as_partition();
    const CommutationTable table = partition_commutation_table(gens, part);
    Json subsets = Json::array();
    for (std::size_t a = 0; a < part.subsets().size(); ++a) {
      Json modes = Json::array();
      for (auto m : part.subsets()[a]) modes.push_back(m + 1);
      subsets.push_back({{"modes", modes},
                         {"phase", table.per_subset[a](0, 1)},
                         {"complete", is_complete_on(gens, part.subsets()[a])}});
    }
    tables.push_back({{"bipartition", bp.label()},
                      {"all_commuting", table.all_commuting()},
                      {"subsets", subsets}});
  }
  doc["partitions"] = tables;
  emit(cfg, doc.dump(2) + "\n", out);
  return kExitOk;
}

// ------------------------------------------------------------ sep-check

struct CutReport {
  std::string label;
  SeparabilityVerdict ppt;
  SeparabilityVerdict duan;
  std::optional<SeparabilityVerdict> construction;
  double log_neg = 0.0;
  Verdict verdict = Verdict::inconclusive;
};

CutReport check_cut(const GaussianState& state, const Bipartition& bp,
                    const std::optional<BoundStateSpec>& spec) {
  CutReport rep;
  rep.label = bp.label();
  rep.ppt = ppt_verdict(state, bp);
  rep.duan = duan_verdict(state, bp);
  rep.log_neg = log_negativity(state, bp);
  std::vector<SeparabilityVerdict> all{rep.ppt, rep.duan};
  if (spec && is_pair_cut(bp)) {
    rep.construction = construction_verdict(*spec, bp);
    all.push_back(*rep.construction);
  }
  rep.verdict = combined_verdict(all);
  return rep;
}

std::string ppt_label(const SeparabilityVerdict& v) {
  if (v.verdict == Verdict::entangled) return "NPT (entangled)";
  if (v.verdict == Verdict::separable) return "PPT (separable)";
  return "PPT (separability not certified)";
}

std::string construction_label(const std::optional<SeparabilityVerdict>& v) {
  if (!v) return "n/a";
  return v->verdict == Verdict::separable ? "separable (local EPR + classical noise)"
                                          : "no local construction";
}

int cmd_sep_check(const RunConfig& cfg, std::ostream& out) {
  std::optional<BoundStateSpec> spec;
  GaussianState state = vacuum_state(1);
  if (!cfg.state_path.empty()) {
    state = load_state(cfg.state_path);
  } else {
    spec = resolve_spec(cfg);
    state = build_state(*spec);
  }
  std::vector<CutReport> reports;
  for (const auto& bp : selected_cuts(cfg, state.n_modes())) {
    reports.push_back(check_cut(state, bp, spec));
  }

  std::optional<double> sigma_star;
  const bool threshold = spec && spec->n_pairs == 2;
  if (threshold) {
    sigma_star = ppt_threshold_search(spec->r, Bipartition::parse("14-23", 4));
  }

  std::ostringstream text;
  if (cfg.format == "json") {
    Json doc;
    if (spec) doc["spec"] = spec_to_json(*spec);
    Json rows = Json::array();
    for (const auto& rep : reports) {
      Json row{{"bipartition", rep.label},
               {"nu_min", rep.ppt.witness_value},
               {"log_neg", rep.log_neg},
               {"duan_min", rep.duan.witness_value},
               {"ppt", ppt_label(rep.ppt)},
               {"construction", construction_label(rep.construction)},
               {"verdict", to_string(rep.verdict)}};
      rows.push_back(std::move(row));
    }
    doc["bipartitions"] = rows;
    if (threshold) {
      doc["threshold"] = {
          {"bipartition", "14-23"},
          {"ppt_sigma", sigma_star ? Json(*sigma_star) : Json(nullptr)},
          {"duan_boundary_sigma", std::sqrt(duan_threshold_sigma_sq(spec->r))},
          {"local_construction_sigma", std::sqrt(local_matching_sigma_sq(spec->r))}};
    }
    text << doc.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    text << kSweepHeader << "\n";
    for (const auto& rep : reports) {
      SweepRow row{spec ? spec->r : std::nan(""),
                   spec ? spec->sigma_x : std::nan(""),
                   rep.label,
                   rep.ppt.witness_value,
                   rep.log_neg,
                   rep.duan.witness_value,
                   rep.verdict,
                   spec ? duan_threshold_sigma_sq(spec->r) : std::nan("")};
      text << format_row(row) << "\n";
    }
  } else {
    if (spec) {
      text << "state: n_pairs=" << spec->n_pairs << " r=" << fmt(spec->r)
           << " sigma_x=" << fmt(spec->sigma_x) << " sigma_p=" << fmt(spec->sigma_p) << "\n";
    } else {
      text << "state: " << cfg.state_path << " (" << state.n_modes() << " modes)\n";
    }
    text << std::left << std::setw(12) << "bipartition" << std::setw(20) << "nu_min"
         << std::setw(20) << "log_neg" << std::setw(20) << "duan_min" << std::setw(36) << "ppt"
         << std::setw(42) << "construction"
         << "verdict\n";
    for (const auto& rep : reports) {
      text << std::left << std::setw(12) << rep.label << std::setw(20)
           << fmt(rep.ppt.witness_value) << std::setw(20) << fmt(rep.log_neg) << std::setw(20)
           << fmt(rep.duan.witness_value) << std::setw(36) << ppt_label(rep.ppt) << std::setw(42)
           << construction_label(rep.construction) << to_string(rep.verdict) << "\n";
    }
    if (threshold) {
      text << "threshold across 14-23 at r=" << fmt(spec->r) << ":\n";
      text << "  ppt transition sigma*            = "
           << (sigma_star ? fmt(*sigma_star) : std::string("none in [0, 10]")) << "\n";
      text << "  duan boundary sqrt((1-e^-2r)/2)  = "
           << fmt(std::sqrt(duan_threshold_sigma_sq(spec->r))) << "\n";
      text << "  local construction sqrt(sinh(2r)/4) = "
           << fmt(std::sqrt(local_matching_sigma_sq(spec->r))) << "\n";
    }
  }
  emit(cfg, text.str(), out);
  return kExitOk;
}

// ------------------------------------------------------ unlock / superactivate

ModePair parse_pair(const std::string& text) {
  std::size_t i = 0;
  std::size_t j = 0;
  char comma = 0;
  std::istringstream in(text);
  if (!(in >> i >> comma >> j) || comma != ',' || !(in >> std::ws).eof() || i == 0 || j == 0) {
    throw UsageError("--pair expects two 1-based modes \"i,j\", got \"" + text + "\"");
  }
  return {i - 1, j - 1};
}

std::string report_text(const ProtocolReport& rep) {
  std::ostringstream s;
  s << "survivors:";
  for (const auto& m : rep.survivor_labels) s << " " << m;
  s << "\nwitness_sum_x:  " << fmt(rep.witness_sum_x) << "\nwitness_diff_p: "
    << fmt(rep.witness_diff_p) << "\nduan (sign " << (rep.duan_sign > 0 ? "+" : "-")
    << "):  " << fmt(rep.duan) << "\nduan (sign " << (rep.duan_sign > 0 ? "-" : "+")
    << "):  " << fmt(rep.duan_other_sign)
    << "\nduan_min:       " << fmt(std::min(rep.duan, rep.duan_other_sign))
    << "\nentangled:      " << (rep.entangled ? "yes" : "no") << "\n";
  return s.str();
}

int emit_report(const RunConfig& cfg, const ProtocolReport& rep, std::ostream& out) {
  if (cfg.format == "text") {
    emit(cfg, report_text(rep), out);
  } else {
    Json doc = report_to_json(rep);
    doc["duan_min"] = std::min(rep.duan, rep.duan_other_sign);
    emit(cfg, doc.dump(2) + "\n", out);
  }
  return kExitOk;
}

int cmd_unlock(const RunConfig& cfg, std::ostream& out) {
  const BoundStateSpec spec = resolve_spec(cfg);
  if (spec.n_pairs != 2) throw UsageError("unlock acts on the four-mode state (--pairs 2)");
  const ModePair pair = parse_pair(cfg.pair);
  if (pair.first >= 4 || pair.second >= 4 || pair.first == pair.second) {
    throw UsageError("--pair must name two distinct modes among 1..4");
  }
  return emit_report(cfg, unlock(spec, pair), out);
}

int cmd_superactivate(const RunConfig& cfg, std::ostream& out) {
  const BoundStateSpec spec = resolve_spec(cfg);
  if (spec.n_pairs != 2) throw UsageError("superactivate acts on the four-mode state");
  return emit_report(cfg, superactivate(spec), out);
}

// ---------------------------------------------------------------- sweep

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const BoundStateSpec base = resolve_spec(cfg);
  std::vector<double> r_grid;
  std::vector<double> sigma_grid;
  try {
    r_grid = parse_grid(cfg.grid_r);
    sigma_grid = parse_grid(cfg.grid_sigma);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (r_grid.empty() || sigma_grid.empty()) {
    err << "sweep: empty grid\n";
    return kExitFailure;
  }
  Bipartition bp = Bipartition::parse("14-23", 4);
  try {
    bp = Bipartition::parse(cfg.bipartition.empty() ? "14-23" : cfg.bipartition,
                            base.n_modes());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::vector<SweepRow> rows;
  try {
    rows = run_sweep(base.n_pairs, r_grid, sigma_grid, bp, std::max(1u, cfg.jobs));
  } catch (const std::logic_error& e) {
    throw UsageError(e.what());
  }
  std::ostringstream text;
  text << kSweepHeader << "\n";
  for (const auto& row : rows) text << format_row(row) << "\n";
  emit(cfg, text.str(), out);
  return kExitOk;
}

// ------------------------------------------------------------- validate

class CheckLog {
 public:
  void record(const std::string& name, bool ok, const std::string& detail) {
    lines_.push_back((ok ? "PASS " : "FAIL ") + name + ": " + detail);
    if (!ok) ++failed_;
  }
  int failed() const { return failed_; }
  std::string render() const {
    std::ostringstream s;
    for (const auto& l : lines_) s << l << "\n";
    s << "validate: " << lines_.size() << " checks, " << failed_ << " failed\n";
    return s.str();
  }

 private:
  std::vector<std::string> lines_;
  int failed_ = 0;
};

void check_sampling(CheckLog& log, const GaussianState& state, std::size_t count,
                    std::uint64_t seed) {
  const SampleMoments sm = sample_oracle(state, count, seed);
  const double n = static_cast<double>(count);
  const Matrix& v = state.cov();
  double worst_mean = 0.0;
  double worst_cov = 0.0;
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    const double se_mean = std::sqrt(v(i, i) / n);
    worst_mean = std::max(worst_mean, std::abs(sm.mean(i) - state.mean()(i)) / se_mean);
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
      const double se = std::sqrt((v(i, i) * v(j, j) + v(i, j) * v(i, j)) / (n - 1.0));
      worst_cov = std::max(worst_cov, std::abs(sm.cov(i, j) - v(i, j)) / se);
    }
  }
  log.record("sampling-mean", worst_mean <= 5.0,
             "max |z| = " + fmt(worst_mean) + " over " + std::to_string(count) + " samples");
  log.record("sampling-cov", worst_cov <= 5.0,
             "max |z| = " + fmt(worst_cov) + " over " + std::to_string(count) + " samples");
}

void check_state(CheckLog& log, const GaussianState& state) {
  const double nu = min_symplectic_eigenvalue(state.cov());
  log.record("physicality", nu >= 0.5 - kPhysicalityTol, "nu_min = " + fmt(nu));
}

void check_spec(CheckLog& log, const BoundStateSpec& spec, const GaussianState& state) {
  const auto n = spec.n_modes();
  const double expected = static_cast<double>(spec.n_pairs) * std::exp(-2.0 * spec.r);
  double worst = 0.0;
  for (const auto& h : bound_state_nullifiers(n)) {
    worst = std::max(worst, std::abs(nullifier_variance(state, h) - expected));
  }
  log.record("nullifier-variance", worst <= 1e-10,
             "max deviation from " + fmt(expected) + " = " + fmt(worst));
  const auto gens = bound_state_generators(n);
  const double phase = symplectic_phase(gens[0], gens[1]);
  log.record("commutation", phase == 0.0, "global phase = " + fmt(phase));
  if (spec.n_pairs != 2) return;

  const double two = 2.0 * std::exp(-2.0 * spec.r);
  double worst_unlock = 0.0;
  double worst_consistency = 0.0;
  for (ModePair pair : std::vector<ModePair>{{0, 3}, {1, 2}, {0, 1}, {2, 3}}) {
    const ProtocolReport rep = unlock(spec, pair);
    worst_unlock = std::max({worst_unlock, std::abs(rep.witness_sum_x - two),
                             std::abs(rep.witness_diff_p - two)});
    worst_consistency =
        std::max(worst_consistency, std::abs(rep.duan - duan_value(rep.conditioned_state, 0, 1,
                                                                   rep.duan_sign)));
  }
  log.record("unlock-witnesses", worst_unlock <= 1e-10,
             "max deviation from " + fmt(two) + " = " + fmt(worst_unlock));
  const ProtocolReport sup = superactivate(spec);
  const double four = 2.0 * two;
  const double worst_sup =
      std::max(std::abs(sup.witness_sum_x - four), std::abs(sup.witness_diff_p - four));
  log.record("superactivation-witnesses", worst_sup <= 1e-10,
             "max deviation from " + fmt(four) + " = " + fmt(worst_sup));
  worst_consistency = std::max(
      worst_consistency, std::abs(sup.duan - duan_value(sup.conditioned_state, 0, 1, 1)));
  log.record("witness-consistency", worst_consistency <= 1e-12,
             "max |report - recomputed| = " + fmt(worst_consistency));

  double worst_circuit = 0.0;
  for (const char* label : {"14-23", "13-24"}) {
    const ConstructionVariant v = equivalent_construction(spec, Partition::parse(label, 4));
    worst_circuit =
        std::max(worst_circuit, (v.circuit->state.cov() - state.cov()).cwiseAbs().maxCoeff());
  }
  log.record("construction-equivalence", worst_circuit <= 1e-10,
             "max |cov difference| = " + fmt(worst_circuit));
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  CheckLog log;
  if (!cfg.state_path.empty()) {
    RawMoments raw;
    try {
      raw = raw_moments_from_json(read_json_file(cfg.state_path));
    } catch (const std::invalid_argument& e) {
      throw UsageError("malformed state file " + cfg.state_path + ": " + e.what());
    }
    const auto breaches = moment_breaches(raw.mean, raw.cov);
    for (const auto& b : breaches) {
      const auto colon = b.find(':');
      log.record(b.substr(0, colon), false, b.substr(colon + 2));
    }
    if (breaches.empty()) {
      const GaussianState state =
          GaussianState::from_moments(std::move(raw.mean), std::move(raw.cov));
      log.record("symmetry", true, "covariance matrix is symmetric");
      check_state(log, state);
      check_sampling(log, state, cfg.samples, cfg.seed);
    }
  } else {
    const BoundStateSpec spec = resolve_spec(cfg);
    const GaussianState state = build_state(spec);
    check_state(log, state);
    check_spec(log, spec, state);
    check_sampling(log, state, cfg.samples, cfg.seed);
  }
  emit(cfg, log.render(), out);
  return log.failed() == 0 ? kExitOk : kExitFailure;
}

}  // namespace

// ---------------------------------------------------------------- sweep core

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> values;
  auto parse_number = [&](const std::string& token) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad grid value \"" + token + "\"");
    }
    if (used != token.size() || !std::isfinite(v)) {
      throw std::invalid_argument("bad grid value \"" + token + "\"");
    }
    return v;
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream in(text);
    for (std::string part; std::getline(in, part, ':');) parts.push_back(part);
    if (parts.size() != 3) {
      throw std::invalid_argument("grid range must read a:b:step, got \"" + text + "\"");
    }
    const double a = parse_number(parts[0]);
    const double b = parse_number(parts[1]);
    const double step = parse_number(parts[2]);
    if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
    if (b < a) return values;
    const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
    for (std::size_t k = 0; k < count; ++k) values.push_back(a + static_cast<double>(k) * step);
    return values;
  }
  std::stringstream in(text);
  for (std::string token; std::getline(in, token, ',');) {
    if (!token.empty()) values.push_back(parse_number(token));
  }
  return values;
}

SweepRow evaluate_point(const BoundStateSpec& spec, const Bipartition& bp) {
  const GaussianState state = spec.n_pairs == 2 ? smolin_cv_four(spec) : smolin_cv_2n(spec);
  SweepRow row;
  row.r = spec.r;
  row.sigma = spec.sigma_x;
  row.bipartition = bp.label();
  const SeparabilityVerdict ppt = ppt_verdict(state, bp);
  const SeparabilityVerdict duan = duan_verdict(state, bp);
  std::vector<SeparabilityVerdict> all{ppt, duan};
  if (is_pair_cut(bp)) all.push_back(construction_verdict(spec, bp));
  row.nu_min = ppt.witness_value;
  row.log_neg = log_negativity(state, bp);
  row.duan = duan.witness_value;
  row.verdict = combined_verdict(all);
  row.duan_threshold_sigma_sq = duan_threshold_sigma_sq(spec.r);
  return row;
}

std::vector<SweepRow> run_sweep(std::size_t n_pairs, const std::vector<double>& r_grid,
                                const std::vector<double>& sigma_grid, const Bipartition& bp,
                                unsigned jobs) {
  const std::size_t total = r_grid.size() * sigma_grid.size();
  std::vector<SweepRow> rows(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      try {
        const BoundStateSpec spec{n_pairs, r_grid[k / sigma_grid.size()],
                                  sigma_grid[k % sigma_grid.size()],
                                  sigma_grid[k % sigma_grid.size()]};
        spec.validate();
        rows[k] = evaluate_point(spec, bp);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = total;
      }
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(total)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::string format_row(const SweepRow& row) {
  std::ostringstream s;
  s << fmt(row.r) << ',' << fmt(row.sigma) << ',' << row.bipartition << ',' << fmt(row.nu_min)
    << ',' << fmt(row.log_neg) << ',' << fmt(row.duan) << ',' << to_string(row.verdict) << ','
    << fmt(row.duan_threshold_sigma_sq);
  return s.str();
}

// ------------------------------------------------------------ entry point

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Finite-squeezing bound-entangled Gaussian states: build, check, protocols"};
  app.require_subcommand(1);

  struct Handles {
    CLI::Option* pairs;
    CLI::Option* r;
    CLI::Option* sigma;
    CLI::Option* sigma_x;
    CLI::Option* sigma_p;
  };
  std::vector<std::pair<CLI::App*, Handles>> subs;
  auto add = [&](const std::string& name, const std::string& help,
                 const std::string& default_format) {
    CLI::App* sub = app.add_subcommand(name, help);
    Handles h{};
    h.pairs = sub->add_option("--pairs", cfg.pairs, "number of EPR pairs (default 2)")
                  ->check(CLI::PositiveNumber);
    h.r = sub->add_option("--r", cfg.r, "squeezing parameter (default 1)");
    h.sigma = sub->add_option("--sigma", cfg.sigma, "GRNG deviation for x and p (default 1)");
    h.sigma_x = sub->add_option("--sigma-x", cfg.sigma_x, "GRNG deviation for positions");
    h.sigma_p = sub->add_option("--sigma-p", cfg.sigma_p, "GRNG deviation for momenta");
    sub->add_option("--config", cfg.config_path, "JSON config {n_pairs, r, sigma_x, sigma_p}");
    sub->add_option("--out", cfg.out_path, "write output to PATH instead of stdout");
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->callback([&cfg, default_format, name] {
      cfg.command = name;
      if (cfg.format.empty()) cfg.format = default_format;
    });
    subs.emplace_back(sub, h);
    return sub;
  };

  add("build", "build the state and print its moments as JSON", "json");
  add("nullifiers", "nullifier variances and commutation tables", "json")
      ->add_option("--bipartition", cfg.bipartition, "cut such as 12-34, 14-23, 13-24");
  CLI::App* sep = add("sep-check", "separability tests across bipartitions", "text");
  sep->add_option("--bipartition", cfg.bipartition, "cut such as 12-34, 14-23, 13-24");
  sep->add_option("--state", cfg.state_path, "state JSON to check instead of building one");
  add("unlock", "Bell measurement on two modes of the four-mode state", "json")
      ->add_option("--pair", cfg.pair, "measured modes i,j (1-based, default 1,4)");
  add("superactivate", "two-copy superactivation protocol", "json");
  CLI::App* sweep = add("sweep", "CSV sweep over an (r, sigma) grid", "csv");
  sweep->add_option("--bipartition", cfg.bipartition, "cut (default 14-23)");
  sweep->add_option("--grid-r", cfg.grid_r, "a:b:step or comma list (default 0.5,1,2)");
  sweep->add_option("--grid-sigma", cfg.grid_sigma, "a:b:step or comma list (default 0:2:0.05)");
  sweep->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
  CLI::App* val = add("validate", "sampling oracle and invariant checks", "text");
  val->add_option("--seed", cfg.seed, "sampler seed (default 7)");
  val->add_option("--samples", cfg.samples, "number of samples (default 100000)")
      ->check(CLI::PositiveNumber);
  val->add_option("--state", cfg.state_path, "state JSON to validate instead of building one");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  for (const auto& [sub, h] : subs) {
    if (!sub->parsed()) continue;
    cfg.has_pairs = h.pairs->count() > 0;
    cfg.has_r = h.r->count() > 0;
    cfg.has_sigma = h.sigma->count() > 0;
    cfg.has_sigma_x = h.sigma_x->count() > 0;
    cfg.has_sigma_p = h.sigma_p->count() > 0;
  }

  try {
    if (cfg.command == "build") return cmd_build(cfg, out);
    if (cfg.command == "nullifiers") return cmd_nullifiers(cfg, out);
    if (cfg.command == "sep-check") return cmd_sep_check(cfg, out);
    if (cfg.command == "unlock") return cmd_unlock(cfg, out);
    if (cfg.command == "superactivate") return cmd_superactivate(cfg, out);
    if (cfg.command == "sweep") return cmd_sweep(cfg, out, err);
    if (cfg.command == "validate") return cmd_validate(cfg, out);
    err << "unknown command\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace cvbound::cli
