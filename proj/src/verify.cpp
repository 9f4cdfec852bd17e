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

#include "amaretto/verify.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "amaretto/compiler.hpp"
#include "amaretto/error.hpp"
#include "json.hpp"

namespace amaretto::harness {

trig::TrigConfig VerifyConfig::trig_config() const {
  trig::TrigConfig t;
  t.lut_addr_bits = lut_addr_bits;
  t.taylor_order = taylor_order;
  t.output = machine.amplitude_format();
  return t;
}

std::string mode_name(oracle::AngleMode mode) {
  return mode == oracle::AngleMode::EndToEnd ? "endtoend" : "datapath";
}

oracle::AngleMode parse_mode(std::string_view name) {
  if (name == "endtoend") return oracle::AngleMode::EndToEnd;
  if (name == "datapath") return oracle::AngleMode::Datapath;
  throw UsageError("unknown verification mode '" + std::string(name) + "'");
}

GcdReport verify_program(const isa::Program& program, const std::string& circuit_id, const VerifyConfig& cfg,
                         const trig::TrigUnit& tu, const emu::GateTable& emulator_table) {
  const emu::Emulator emulator(tu, emulator_table, cfg.timing);
  const emu::EmulationReport run = emulator.run(program);
  const auto mode = program.has_source_map() ? cfg.mode : oracle::AngleMode::Datapath;
  const oracle::RefStateVector reference = oracle::ref_run(program, mode);

  GcdReport report = gcd_distance(reference, run.state, cfg.threshold);
  report.circuit_id = circuit_id;
  report.mode = mode_name(mode);
  report.gate_count = run.gates_executed;
  report.cycles = run.timing.cycles;
  report.seconds = run.timing.seconds;
  for (const auto& ev : run.saturation_log) report.saturations += ev.count;
  return report;
}

GcdReport verify(std::string_view qasm, const std::string& circuit_id, const VerifyConfig& cfg) {
  const isa::Program program = compiler::compile_qasm(qasm, cfg.machine);
  const trig::TrigUnit tu(cfg.trig_config());
  return verify_program(program, circuit_id, cfg, tu);
}

std::vector<std::filesystem::path> list_qasm_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".qasm") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::vector<GcdReport> verify_files(const std::vector<std::filesystem::path>& files, const VerifyConfig& cfg,
                                    unsigned jobs) {
  const trig::TrigUnit tu(cfg.trig_config());
  std::vector<GcdReport> reports(files.size());
  std::vector<std::string> errors(files.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t k = next++; k < files.size(); k = next++) {
      const auto id = files[k].stem().string();
      try {
        std::ifstream in(files[k], std::ios::binary);
        if (!in) throw Error("cannot open " + files[k].string());
        std::stringstream buf;
        buf << in.rdbuf();
        const isa::Program program = compiler::compile_qasm(buf.str(), cfg.machine);
        reports[k] = verify_program(program, id, cfg, tu);
      } catch (const std::exception& e) {
        reports[k].circuit_id = id;
        reports[k].mode = mode_name(cfg.mode);
        reports[k].threshold = cfg.threshold;
        reports[k].pass = false;
        errors[k] = e.what();
      }
    }
  };

  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(1, files.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t k = 0; k < files.size(); ++k) {
    if (!errors[k].empty()) reports[k].circuit_id += " (error: " + errors[k] + ")";
  }
  return reports;
}

std::string format_report(const GcdReport& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS " : "FAIL ") << std::left << std::setw(16) << r.circuit_id << std::right
     << " nq=" << std::setw(2) << r.qubits << " gates=" << std::setw(4) << r.gate_count
     << " max_gcd=" << std::scientific << std::setprecision(3) << r.max_distance << " (<" << std::defaultfloat
     << r.threshold << ", " << r.mode << ")"
     << " cycles=" << r.cycles;
  if (r.saturations > 0) os << " saturations=" << r.saturations;
  return os.str();
}

std::string reports_to_json(const std::vector<GcdReport>& reports, bool include_distances) {
  nlohmann::json circuits = nlohmann::json::array();
  std::size_t passed = 0;
  for (const auto& r : reports) {
    passed += r.pass ? 1 : 0;
    nlohmann::json j = {
        {"circuit_id", r.circuit_id}, {"mode", r.mode},         {"qubits", r.qubits},
        {"gate_count", r.gate_count}, {"cycles", r.cycles},     {"seconds", r.seconds},
        {"saturations", r.saturations}, {"max_gcd", r.max_distance}, {"worst_index", r.worst_index},
        {"threshold", r.threshold},   {"pass", r.pass},
    };
    if (include_distances) j["distances"] = r.distances;
    circuits.push_back(std::move(j));
  }
  nlohmann::json doc = {
      {"passed", passed},
      {"failed", reports.size() - passed},
      {"circuits", std::move(circuits)},
  };
  return doc.dump(2);
}

}  // namespace amaretto::harness
