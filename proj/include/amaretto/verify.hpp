// Copyright 2026 The Amaretto Emulator Authors
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

#pragma once

// Compile → emulate → reference → great-circle comparison for one circuit or
// a batch of files.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "amaretto/emulator.hpp"
#include "amaretto/gcd.hpp"
#include "amaretto/isa.hpp"
#include "amaretto/oracle.hpp"
#include "amaretto/trig_unit.hpp"

namespace amaretto::harness {

struct VerifyConfig {
  isa::MachineConfig machine;
  int lut_addr_bits = 8;
  int taylor_order = 2;
  emu::TimingModel timing;
  double threshold = kDefaultGcdThreshold;
  oracle::AngleMode mode = oracle::AngleMode::EndToEnd;

  trig::TrigConfig trig_config() const;
};

std::string mode_name(oracle::AngleMode mode);
/// "endtoend" or "datapath"; throws UsageError otherwise.
oracle::AngleMode parse_mode(std::string_view name);

/// Emulates `program` (optionally with a substituted gate table) and compares
/// against the reference with the standard table.
GcdReport verify_program(const isa::Program& program, const std::string& circuit_id, const VerifyConfig& cfg,
                         const trig::TrigUnit& tu, const emu::GateTable& emulator_table = emu::standard_gate_table());

GcdReport verify(std::string_view qasm, const std::string& circuit_id, const VerifyConfig& cfg = {});

/// Verifies each file on a pool of `jobs` workers; results keep input order.
std::vector<GcdReport> verify_files(const std::vector<std::filesystem::path>& files, const VerifyConfig& cfg,
                                    unsigned jobs = 0);

/// *.qasm files under dir, sorted by name.
std::vector<std::filesystem::path> list_qasm_files(const std::filesystem::path& dir);

std::string format_report(const GcdReport& report);
/// {"threshold":…, "mode":…, "passed":…, "failed":…, "circuits":[…]}
std::string reports_to_json(const std::vector<GcdReport>& reports, bool include_distances = false);

}  // namespace amaretto::harness
