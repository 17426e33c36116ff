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

// JSON interchange. Complex numbers are [re, im] pairs everywhere.
//
//   state:   {"dims":[d1,...,dn],"amps":[[re,im],...]}
//   density: {"dims":[...],"mat":[[[re,im],...],...]}          rows in order
//   masker:  {"dA":int,"dB":int,"iso":[[[re,im],...],...]}     (dA*dB) rows of dA entries;
//                                                             column k is the image of |k>
//   states:  a JSON array of states, {"states":[...]}, or a single state

#ifndef QMASK_IO_HPP
#define QMASK_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmask/masklib.hpp"
#include "qmask/protocols.hpp"
#include "qmask/qcore.hpp"
#include "qmask/witness.hpp"

namespace qmask::io {

using json = nlohmann::json;

json complex_to_json(cplx z);
cplx complex_from_json(const json& j);
json matrix_to_json(const Mat& m);
Mat matrix_from_json(const json& j);

json state_to_json(const PureState& psi);
PureState state_from_json(const json& j);
std::vector<PureState> states_from_json(const json& j);

json density_to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const json& j);

json masker_to_json(const Masker& v);
Masker masker_from_json(const json& j);

const char* mode_name(MaskMode mode);
MaskMode mode_from_name(const std::string& name);

json report_to_json(const MaskingReport& report);

json config_to_json(const OptimizerConfig& cfg);
/// Missing keys keep their defaults; unknown keys are rejected.
OptimizerConfig config_from_json(const json& j);

json result_to_json(const OptimizationResult& result);
json transcript_to_json(const CommitmentTranscript& t);
json probe_to_json(const ProbeReport& report);
/// One line per masked sample: index,dev_a,dev_b,entropy,profile_0,...
std::string probe_to_csv(const ProbeReport& report);

json read_json_file(const std::filesystem::path& path);
/// Two-space indented dump with a trailing newline.
std::string dump(const json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace qmask::io

#endif  // QMASK_IO_HPP
