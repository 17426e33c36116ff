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

// masking: command-line front end.
//
//   masking mask    (--builtin NAME | --masker FILE) --states FILE [--mode span|set]
//   masking witness --states FILE [--config FILE]
//   masking commit  (--builtin NAME | --masker FILE) --states FILE [--cheat PHI]
//   masking probe   (--builtin NAME | --masker FILE) [--samples N] [--csv FILE]
//
// Common flags: --seed, --out, --tol, --entropy-floor. JSON goes to --out, or
// to stdout without it; a short human summary goes to stdout when --out is
// given and to stderr otherwise.
//
// Exit codes: 0 success (mask: verdict true), 2 mask verdict false,
// 1 usage or input error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qmask/io.hpp"
#include "qmask/masklib.hpp"
#include "qmask/protocols.hpp"
#include "qmask/witness.hpp"

namespace {

using qmask::io::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitVerdictFalse = 2;

struct Options {
  std::string builtin;
  std::string masker_file;
  std::string states_file;
  std::string config_file;
  std::string out_file;
  std::string csv_file;
  std::string mode = "span";
  std::optional<std::uint64_t> seed;
  std::optional<double> cheat;
  double tol = qmask::kDefaultTol;
  std::optional<double> probe_tol;
  double entropy_floor = qmask::kDefaultEntropyFloor;
  std::size_t samples = 1000;
};

std::size_t parse_dim(const std::string& name, const std::string& text) {
  std::size_t pos = 0;
  unsigned long d = 0;
  try {
    d = std::stoul(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || text.empty()) {
    throw std::invalid_argument("builtin \"" + name + "\": bad dimension \"" + text + "\"");
  }
  return d;
}

qmask::Masker builtin_masker(const std::string& name) {
  if (name == "classical-bit") return qmask::classical_bit_masker();
  const auto colon = name.find(':');
  if (colon != std::string::npos) {
    const std::string kind = name.substr(0, colon);
    const std::size_t d = parse_dim(name, name.substr(colon + 1));
    if (kind == "sharp") return qmask::diagonal_masker(d);
    if (kind == "multiparty") return qmask::multiparty_masker(d);
  }
  throw std::invalid_argument("unknown builtin \"" + name +
                              "\" (expected sharp:<d>, classical-bit or multiparty:<d>)");
}

qmask::Masker load_masker(const Options& o) {
  if (!o.builtin.empty() && !o.masker_file.empty()) {
    throw std::invalid_argument("give either --builtin or --masker, not both");
  }
  if (!o.builtin.empty()) return builtin_masker(o.builtin);
  if (!o.masker_file.empty()) return qmask::io::masker_from_json(qmask::io::read_json_file(o.masker_file));
  throw std::invalid_argument("a masker is required (--builtin or --masker)");
}

std::vector<qmask::PureState> load_states(const Options& o) {
  if (o.states_file.empty()) throw std::invalid_argument("--states is required");
  return qmask::io::states_from_json(qmask::io::read_json_file(o.states_file));
}

json masker_source(const Options& o) {
  return o.builtin.empty() ? json{{"file", o.masker_file}} : json{{"builtin", o.builtin}};
}

// Writes the JSON document and returns the stream meant for the summary.
std::ostream& emit(const Options& o, const json& doc) {
  const std::string text = qmask::io::dump(doc);
  if (o.out_file.empty()) {
    std::cout << text;
    return std::cerr;
  }
  qmask::io::write_text_file(o.out_file, text);
  return std::cout;
}

int cmd_mask(const Options& o) {
  const qmask::Masker v = load_masker(o);
  const auto states = load_states(o);
  const auto report =
      qmask::masking_defect(v, states, qmask::io::mode_from_name(o.mode), o.tol, o.entropy_floor);
  json images = json::array();
  for (const auto& s : states) images.push_back(qmask::io::state_to_json(qmask::apply_masker(v, s)));
  const json doc{{"command", "mask"},
                 {"seed", o.seed.value_or(0)},
                 {"inputs", {{"masker", masker_source(o)}, {"states", o.states_file}}},
                 {"masker", qmask::io::masker_to_json(v)},
                 {"images", std::move(images)},
                 {"report", qmask::io::report_to_json(report)}};
  std::ostream& log = emit(o, doc);
  log << "defect " << report.defect << " (" << o.mode << " mode, tol " << o.tol << "), verdict "
      << (report.verdict ? "masked" : "not masked") << "\n";
  return report.verdict ? kExitOk : kExitVerdictFalse;
}

int cmd_witness(const Options& o) {
  const auto states = load_states(o);
  qmask::OptimizerConfig cfg;
  if (!o.config_file.empty()) cfg = qmask::io::config_from_json(qmask::io::read_json_file(o.config_file));
  if (o.seed) cfg.seed = *o.seed;
  cfg.validate();
  const auto w = qmask::witness_no_masking(states, cfg);
  const json doc{{"command", "witness"},
                 {"seed", cfg.seed},
                 {"inputs", {{"states", o.states_file}, {"config", o.config_file}}},
                 {"config", qmask::io::config_to_json(cfg)},
                 {"floor_estimate", w.floor_estimate},
                 {"result", qmask::io::result_to_json(w.evidence)}};
  std::ostream& log = emit(o, doc);
  log << "floor estimate " << w.floor_estimate << " over " << cfg.restarts << " restarts (best "
      << w.evidence.best_restart << ")\n";
  log << "restart  defect        iterations  converged\n";
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    char line[96];
    std::snprintf(line, sizeof line, "%7zu  %-12.6g  %10zu  %s\n", r,
                  w.evidence.per_restart_defects[r], w.evidence.iterations_used[r],
                  w.evidence.restart_converged[r] ? "yes" : "no");
    log << line;
  }
  return kExitOk;
}

int cmd_commit(const Options& o) {
  const qmask::Masker v = load_masker(o);
  const auto states = load_states(o);
  if (states.size() != 1) throw std::invalid_argument("commit: --states must hold exactly one state");
  auto transcript = qmask::commit(states.front(), v);
  json doc{{"command", "commit"},
           {"seed", o.seed.value_or(0)},
           {"inputs", {{"masker", masker_source(o)}, {"states", o.states_file}}}};
  double fidelity = std::abs(transcript.joint.amps().dot(
      qmask::apply_masker(v, transcript.unveiled_state).amps()));
  if (o.cheat) {
    auto outcome = qmask::cheat_commitment(transcript, v, *o.cheat);
    transcript.unveiled_state = outcome.target_state;
    fidelity = outcome.fidelity;
    doc["cheat"] = {{"phi", *o.cheat},
                    {"target_joint", qmask::io::state_to_json(outcome.target_joint)},
                    {"unitary", qmask::io::matrix_to_json(outcome.unitary.mat())},
                    {"cheated_joint", qmask::io::state_to_json(outcome.cheated_joint)},
                    {"fidelity", outcome.fidelity}};
  }
  doc["transcript"] = qmask::io::transcript_to_json(transcript);
  doc["unveil_fidelity"] = fidelity;
  std::ostream& log = emit(o, doc);
  log << (o.cheat ? "cheated" : "honest") << " unveiling, fidelity " << fidelity << "\n";
  return kExitOk;
}

int cmd_probe(const Options& o) {
  const qmask::Masker v = load_masker(o);
  const std::uint64_t seed = o.seed.value_or(0);
  const auto report = qmask::probe_maskable_family(
      v, o.samples, seed, o.probe_tol.value_or(qmask::kDefaultProbeTol), o.entropy_floor,
      qmask::kernels::Exec::serial);
  if (!o.csv_file.empty()) qmask::io::write_text_file(o.csv_file, qmask::io::probe_to_csv(report));
  const json doc{{"command", "probe"},
                 {"seed", seed},
                 {"inputs", {{"masker", masker_source(o)}}},
                 {"report", qmask::io::probe_to_json(report)}};
  std::ostream& log = emit(o, doc);
  log << report.masked.size() << " of " << report.samples << " samples masked within "
      << report.tol << " (min deviation " << report.min_deviation << ")\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Masking of quantum information: verification, witnesses and protocol demos"};
  app.require_subcommand(1);
  Options o;

  auto add_masker = [&](CLI::App* sub) {
    sub->add_option("--builtin", o.builtin, "sharp:<d>, classical-bit or multiparty:<d>");
    sub->add_option("--masker", o.masker_file, "masker JSON file");
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "RNG seed, recorded in the output");
    sub->add_option("--out", o.out_file, "write JSON here instead of stdout");
  };

  CLI::App* mask = app.add_subcommand("mask", "apply a masker and check the masking conditions");
  add_masker(mask);
  add_common(mask);
  mask->add_option("--states", o.states_file, "states JSON file")->required();
  mask->add_option("--mode", o.mode, "span or set")->check(CLI::IsMember({"span", "set"}));
  mask->add_option("--tol", o.tol, "defect tolerance");
  mask->add_option("--entropy-floor", o.entropy_floor, "minimum image entanglement in bits");

  CLI::App* witness = app.add_subcommand("witness", "minimize the masking defect over isometries");
  add_common(witness);
  witness->add_option("--states", o.states_file, "states JSON file")->required();
  witness->add_option("--config", o.config_file, "optimizer config JSON file");

  CLI::App* commit = app.add_subcommand("commit", "commit to a state and optionally cheat");
  add_masker(commit);
  add_common(commit);
  commit->add_option("--states", o.states_file, "JSON file holding the committed state")->required();
  commit->add_option("--cheat", o.cheat, "switch to the state with relative phase PHI");

  CLI::App* probe = app.add_subcommand("probe", "sample random inputs and report masked ones");
  add_masker(probe);
  add_common(probe);
  probe->add_option("--samples", o.samples, "number of random inputs");
  probe->add_option("--tol", o.probe_tol, "marginal deviation tolerance");
  probe->add_option("--entropy-floor", o.entropy_floor, "minimum image entanglement in bits");
  probe->add_option("--csv", o.csv_file, "also write masked-sample profiles as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*mask) return cmd_mask(o);
    if (*witness) return cmd_witness(o);
    if (*commit) return cmd_commit(o);
    if (*probe) return cmd_probe(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
