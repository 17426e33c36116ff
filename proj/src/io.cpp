// Copyright 2026 The qmask Authors
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

#include "qmask/io.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qmask::io {

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw std::invalid_argument("expected a complex number as [re, im], got " + j.dump());
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw std::invalid_argument("expected a matrix as an array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw std::invalid_argument("matrix rows have different lengths");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
    }
  }
  return m;
}

namespace {

DimProfile dims_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("\"dims\" must be an array");
  std::vector<std::size_t> f;
  for (const auto& d : j) {
    if (!d.is_number_integer() || d.get<long long>() < 1) {
      throw std::invalid_argument("\"dims\" entries must be positive integers");
    }
    f.push_back(d.get<std::size_t>());
  }
  return DimProfile(std::move(f));
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw std::invalid_argument(std::string("missing key \"") + key + "\"");
  }
  return j.at(key);
}

json vector_to_json(const std::vector<double>& v) { return json(v); }

}  // namespace

json state_to_json(const PureState& psi) {
  json amps = json::array();
  for (Eigen::Index i = 0; i < psi.amps().size(); ++i) amps.push_back(complex_to_json(psi.amps()(i)));
  return json{{"dims", psi.dims().factors()}, {"amps", std::move(amps)}};
}

PureState state_from_json(const json& j) {
  DimProfile dims = dims_from_json(require(j, "dims"));
  const json& amps = require(j, "amps");
  if (!amps.is_array()) throw std::invalid_argument("\"amps\" must be an array");
  Vec v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = complex_from_json(amps[i]);
  }
  return PureState(std::move(v), std::move(dims));
}

std::vector<PureState> states_from_json(const json& j) {
  const json* list = &j;
  if (j.is_object()) {
    if (!j.contains("states")) return {state_from_json(j)};
    list = &j.at("states");
  }
  if (!list->is_array() || list->empty()) {
    throw std::invalid_argument("expected a nonempty list of states");
  }
  std::vector<PureState> out;
  for (const auto& s : *list) out.push_back(state_from_json(s));
  return out;
}

json density_to_json(const DensityMatrix& rho) {
  return json{{"dims", rho.dims().factors()}, {"mat", matrix_to_json(rho.mat())}};
}

DensityMatrix density_from_json(const json& j) {
  return DensityMatrix(matrix_from_json(require(j, "mat")), dims_from_json(require(j, "dims")));
}

json masker_to_json(const Masker& v) {
  return json{{"dA", v.dA()}, {"dB", v.dB()}, {"iso", matrix_to_json(v.iso())}};
}

Masker masker_from_json(const json& j) {
  const json& da = require(j, "dA");
  const json& db = require(j, "dB");
  if (!da.is_number_integer() || !db.is_number_integer() || da.get<long long>() < 1 ||
      db.get<long long>() < 1) {
    throw std::invalid_argument("\"dA\" and \"dB\" must be positive integers");
  }
  return Masker(matrix_from_json(require(j, "iso")), da.get<std::size_t>(), db.get<std::size_t>());
}

const char* mode_name(MaskMode mode) { return mode == MaskMode::set ? "set" : "span"; }

MaskMode mode_from_name(const std::string& name) {
  if (name == "set") return MaskMode::set;
  if (name == "span") return MaskMode::span;
  throw std::invalid_argument("mode must be \"set\" or \"span\", got \"" + name + "\"");
}

json report_to_json(const MaskingReport& report) {
  json dev = json::array();
  for (const auto& d : report.per_state_deviation) {
    dev.push_back({{"index", d.index}, {"dev_a", d.dev_a}, {"dev_b", d.dev_b}});
  }
  json cross = json::array();
  for (const auto& c : report.cross_norms) {
    cross.push_back({{"i", c.i}, {"j", c.j}, {"norm_a", c.norm_a}, {"norm_b", c.norm_b}});
  }
  return json{{"reference_marginal_a", density_to_json(report.reference_marginal_a)},
              {"reference_marginal_b", density_to_json(report.reference_marginal_b)},
              {"per_state_deviation", std::move(dev)},
              {"cross_norms", std::move(cross)},
              {"entropies", vector_to_json(report.entropies)},
              {"defect", report.defect},
              {"mode", mode_name(report.mode)},
              {"tol", report.tol},
              {"entropy_floor", report.entropy_floor},
              {"verdict", report.verdict}};
}

json config_to_json(const OptimizerConfig& cfg) {
  return json{{"dB", cfg.dB},
              {"restarts", cfg.restarts},
              {"max_iters", cfg.max_iters},
              {"step_init", cfg.step_init},
              {"grad_tol", cfg.grad_tol},
              {"seed", cfg.seed},
              {"mode", mode_name(cfg.mode)}};
}

OptimizerConfig config_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  OptimizerConfig cfg;
  auto count = [](const json& v, const std::string& key) -> std::size_t {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      throw std::invalid_argument("config \"" + key + "\" must be a nonnegative integer");
    }
    return v.get<std::size_t>();
  };
  auto real = [](const json& v, const std::string& key) -> double {
    if (!v.is_number()) throw std::invalid_argument("config \"" + key + "\" must be a number");
    return v.get<double>();
  };
  for (const auto& [key, v] : j.items()) {
    if (key == "dB") cfg.dB = count(v, key);
    else if (key == "restarts") cfg.restarts = count(v, key);
    else if (key == "max_iters") cfg.max_iters = count(v, key);
    else if (key == "step_init") cfg.step_init = real(v, key);
    else if (key == "grad_tol") cfg.grad_tol = real(v, key);
    else if (key == "seed") cfg.seed = count(v, key);
    else if (key == "mode") cfg.mode = mode_from_name(v.get<std::string>());
    else throw std::invalid_argument("unknown config key \"" + key + "\"");
  }
  cfg.validate();
  return cfg;
}

json result_to_json(const OptimizationResult& result) {
  json traces = json::array();
  for (const auto& t : result.objective_traces) traces.push_back(vector_to_json(t));
  json conv = json::array();
  for (bool c : result.restart_converged) conv.push_back(c);
  return json{{"best_masker", masker_to_json(result.best_masker)},
              {"best_defect", result.best_defect},
              {"best_restart", result.best_restart},
              {"per_restart_defects", vector_to_json(result.per_restart_defects)},
              {"iterations_used", result.iterations_used},
              {"restart_converged", std::move(conv)},
              {"objective_traces", std::move(traces)},
              {"converged", result.converged}};
}

json transcript_to_json(const CommitmentTranscript& t) {
  return json{{"committed_state", state_to_json(t.committed_state)},
              {"joint", state_to_json(t.joint)},
              {"sent_marginal", density_to_json(t.sent_marginal)},
              {"unveiled_state", state_to_json(t.unveiled_state)}};
}

json probe_to_json(const ProbeReport& report) {
  json masked = json::array();
  for (const auto& s : report.masked) {
    masked.push_back({{"index", s.index},
                      {"dev_a", s.dev_a},
                      {"dev_b", s.dev_b},
                      {"entropy", s.entropy},
                      {"profile", vector_to_json(s.profile)}});
  }
  return json{{"samples", report.samples},
              {"seed", report.seed},
              {"tol", report.tol},
              {"entropy_floor", report.entropy_floor},
              {"reference_marginal_a", density_to_json(report.reference_marginal_a)},
              {"reference_marginal_b", density_to_json(report.reference_marginal_b)},
              {"masked_count", report.masked.size()},
              {"masked", std::move(masked)},
              {"min_deviation", report.min_deviation}};
}

std::string probe_to_csv(const ProbeReport& report) {
  std::ostringstream out;
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "index,dev_a,dev_b,entropy";
  const std::size_t d = static_cast<std::size_t>(report.reference_marginal_a.dim());
  for (std::size_t k = 0; k < d; ++k) out << ",profile_" << k;
  out << "\n";
  for (const auto& s : report.masked) {
    out << s.index << ',' << s.dev_a << ',' << s.dev_b << ',' << s.entropy;
    for (double p : s.profile) out << ',' << p;
    out << "\n";
  }
  return out.str();
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("cannot parse " + path.string() + ": " + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace qmask::io
