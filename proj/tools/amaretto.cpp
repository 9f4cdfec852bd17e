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

// amaretto: command-line front end for the compiler, emulator and harness.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "amaretto/compiler.hpp"
#include "amaretto/corpus.hpp"
#include "amaretto/emulator.hpp"
#include "amaretto/error.hpp"
#include "amaretto/program_io.hpp"
#include "amaretto/trig_unit.hpp"
#include "amaretto/verify.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace amaretto;

namespace {

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

isa::MachineConfig machine_config(int frac_bits, int max_qubits) {
  auto cfg = isa::MachineConfig::for_max_qubits(max_qubits, frac_bits);
  cfg.validate();
  return cfg;
}

// .ambin is loaded as is; anything else is compiled as OpenQASM.
isa::Program load_program(const fs::path& path, const isa::MachineConfig& cfg) {
  if (path.extension() == ".ambin") return isa::load_ambin(path);
  return compiler::compile_qasm(read_text(path), cfg);
}

void print_warnings(const isa::Program& program) {
  for (const auto& w : program.warnings) std::cerr << "warning: " << w << '\n';
}

void dump_state(const emu::EmulationReport& report, const fs::path& path) {
  const auto rows = emu::read_state(report);
  const double scale = std::ldexp(1.0, -report.state.format().frac_bits);
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  if (path.extension() == ".json") {
    nlohmann::json amps = nlohmann::json::array();
    for (const auto& r : rows) {
      amps.push_back({{"index", r.index},
                      {"re_raw", r.re_raw},
                      {"im_raw", r.im_raw},
                      {"re_real", r.re_raw * scale},
                      {"im_real", r.im_raw * scale}});
    }
    nlohmann::json doc = {{"qubits", report.state.qubits()},
                          {"format", report.state.format().to_string()},
                          {"cycles", report.timing.cycles},
                          {"seconds", report.timing.seconds},
                          {"amplitudes", std::move(amps)}};
    out << doc.dump(2) << '\n';
    return;
  }
  out << "index,re_raw,im_raw,re_real,im_real\n";
  out << std::setprecision(17);
  for (const auto& r : rows) {
    out << r.index << ',' << r.re_raw << ',' << r.im_raw << ',' << r.re_raw * scale << ',' << r.im_raw * scale
        << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AMARETTO quantum emulator: OpenQASM compiler, fixed-point emulator and verification harness"};
  app.require_subcommand(1);

  int frac_bits = 18;
  int max_qubits = 16;

  // compile
  auto* compile = app.add_subcommand("compile", "Compile OpenQASM 2.0 to an .ambin program");
  std::string compile_in, compile_out, listing_out;
  compile->add_option("input", compile_in, "OpenQASM source")->required()->check(CLI::ExistingFile);
  compile->add_option("-o,--output", compile_out, "Output .ambin")->required();
  compile->add_option("--listing", listing_out, "Also write a text listing");
  compile->add_option("--frac-bits", frac_bits, "Fractional bits of amplitudes and angles")->capture_default_str();
  compile->add_option("--max-qubits", max_qubits, "Largest addressable qubit count")->capture_default_str();

  // run
  auto* run = app.add_subcommand("run", "Execute an .ambin or .qasm file on the emulator");
  std::string run_in, dump_out;
  bool show_timing = false;
  run->add_option("input", run_in, "Program (.ambin) or OpenQASM source")->required()->check(CLI::ExistingFile);
  run->add_option("--dump", dump_out, "Write the final state (.csv or .json)");
  run->add_flag("--timing", show_timing, "Print the cycle estimate");
  run->add_option("--frac-bits", frac_bits, "Fractional bits when compiling .qasm")->capture_default_str();
  run->add_option("--max-qubits", max_qubits, "Qubit limit when compiling .qasm")->capture_default_str();

  // trig-check
  auto* trig_check = app.add_subcommand("trig-check", "Exhaustive error sweep of the trig unit");
  int lut_bits = 8, order = 2;
  bool csv = false;
  double bound = std::ldexp(1.0, -16);
  trig_check->add_option("--lut-bits", lut_bits, "LUT address bits")->capture_default_str();
  trig_check->add_option("--order", order, "Taylor order")->capture_default_str();
  trig_check->add_option("--frac-bits", frac_bits, "Fractional bits")->capture_default_str();
  trig_check->add_option("--bound", bound, "Error bound for the exit status")->capture_default_str();
  trig_check->add_flag("--csv", csv, "Emit CSV instead of text");

  // verify
  auto* verify = app.add_subcommand("verify", "Compare emulator and reference by great-circle distance");
  std::string verify_in, json_out, mode = "endtoend";
  double threshold = harness::kDefaultGcdThreshold;
  unsigned jobs = 0;
  verify->add_option("input", verify_in, "OpenQASM file or directory of them")->required()->check(CLI::ExistingPath);
  verify->add_option("--json", json_out, "Write a JSON report");
  verify->add_option("--threshold", threshold, "Maximum allowed distance")->capture_default_str();
  verify->add_option("--mode", mode, "Reference angles: endtoend or datapath")
      ->check(CLI::IsMember({"endtoend", "datapath"}))
      ->capture_default_str();
  verify->add_option("-j,--jobs", jobs, "Worker threads (0 = hardware)");
  verify->add_option("--frac-bits", frac_bits, "Fractional bits")->capture_default_str();

  // corpus gen
  auto* corpus = app.add_subcommand("corpus", "Benchmark corpus tools");
  corpus->require_subcommand(1);
  auto* corpus_gen = corpus->add_subcommand("gen", "Generate the deterministic circuit corpus");
  std::uint64_t seed = 0;
  std::string corpus_out;
  harness::CorpusSpec spec;
  corpus_gen->add_option("--seed", seed, "RNG seed")->capture_default_str();
  corpus_gen->add_option("--out", corpus_out, "Output directory")->required();
  corpus_gen->add_option("--max-qubits", spec.max_qubits, "Largest circuit width")->capture_default_str();

  // bench
  auto* bench = app.add_subcommand("bench", "Closed-form cycle and time estimate");
  std::string bench_in;
  double clock_mhz = 100.0;
  int n_pipe = 5;
  bench->add_option("input", bench_in, "Program (.ambin) or OpenQASM source")->required()->check(CLI::ExistingFile);
  bench->add_option("--clock-mhz", clock_mhz, "Clock frequency")->capture_default_str()->check(CLI::PositiveNumber);
  bench->add_option("--pipeline", n_pipe, "Pipeline depth")->capture_default_str()->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*compile) {
      const auto cfg = machine_config(frac_bits, max_qubits);
      const auto program = compiler::compile_qasm(read_text(compile_in), cfg);
      print_warnings(program);
      isa::save_ambin(program, compile_out);
      if (!listing_out.empty()) {
        std::ofstream out(listing_out);
        if (!out) throw Error("cannot write " + listing_out);
        isa::write_listing(program, out);
      }
      std::cout << "compiled " << program.instructions.size() << " instructions for " << program.qubit_count
                << " qubits -> " << compile_out << '\n';
      return 0;
    }

    if (*run) {
      const auto program = load_program(run_in, machine_config(frac_bits, max_qubits));
      print_warnings(program);
      trig::TrigConfig tc;
      tc.output = program.config.amplitude_format();
      const trig::TrigUnit tu(tc);
      const emu::Emulator emulator(tu);
      const auto report = emulator.run(program);
      if (!dump_out.empty()) dump_state(report, dump_out);
      std::cout << "qubits " << report.state.qubits() << ", gates " << report.gates_executed << '\n';
      if (show_timing) {
        std::cout << "cycles " << report.timing.cycles << ", time " << report.timing.seconds << " s\n";
      }
      std::uint64_t saturations = 0;
      for (const auto& ev : report.saturation_log) saturations += ev.count;
      if (saturations > 0) std::cerr << "warning: " << saturations << " saturation events\n";
      if (dump_out.empty()) {
        for (const auto& r : emu::read_state(report)) {
          if (r.re_raw == 0 && r.im_raw == 0) continue;
          std::cout << r.index << ' ' << r.re_raw << ' ' << r.im_raw << '\n';
        }
      }
      return 0;
    }

    if (*trig_check) {
      trig::TrigConfig tc;
      tc.lut_addr_bits = lut_bits;
      tc.taylor_order = order;
      tc.output = {2, frac_bits};
      const trig::TrigUnit tu(tc);
      const auto stats = trig::sweep_errors(tu);
      const bool ok = stats.max_sin_error <= bound && stats.max_cos_error <= bound;
      if (csv) {
        std::cout << "lut_bits,order,frac_bits,samples,max_sin_error,max_cos_error,worst_sin_input,"
                     "worst_cos_input,min_norm,max_norm,pass\n"
                  << std::setprecision(10) << lut_bits << ',' << order << ',' << frac_bits << ',' << stats.samples
                  << ',' << stats.max_sin_error << ',' << stats.max_cos_error << ',' << stats.worst_sin_input << ','
                  << stats.worst_cos_input << ',' << stats.min_norm << ',' << stats.max_norm << ','
                  << (ok ? "true" : "false") << '\n';
      } else {
        std::cout << std::setprecision(6) << "lut_bits " << lut_bits << ", order " << order << ", frac_bits "
                  << frac_bits << ", " << stats.samples << " angles\n"
                  << "max |sin error| " << stats.max_sin_error << " (2^" << std::log2(stats.max_sin_error)
                  << ") at raw " << stats.worst_sin_input << '\n'
                  << "max |cos error| " << stats.max_cos_error << " (2^" << std::log2(stats.max_cos_error)
                  << ") at raw " << stats.worst_cos_input << '\n'
                  << "sin^2+cos^2 in [" << std::setprecision(12) << stats.min_norm << ", " << stats.max_norm
                  << "]\n"
                  << (ok ? "PASS" : "FAIL") << " bound " << std::setprecision(6) << bound << '\n';
      }
      return ok ? 0 : 1;
    }

    if (*verify) {
      harness::VerifyConfig cfg;
      cfg.machine = machine_config(frac_bits, max_qubits);
      cfg.threshold = threshold;
      cfg.mode = harness::parse_mode(mode);
      const fs::path in(verify_in);
      const auto files = fs::is_directory(in) ? harness::list_qasm_files(in) : std::vector<fs::path>{in};
      if (files.empty()) throw UsageError("no .qasm files in " + in.string());
      const auto reports = harness::verify_files(files, cfg, jobs);
      std::size_t failed = 0;
      for (const auto& r : reports) {
        std::cout << harness::format_report(r) << '\n';
        failed += r.pass ? 0 : 1;
      }
      std::cout << reports.size() - failed << '/' << reports.size() << " circuits passed\n";
      if (!json_out.empty()) {
        std::ofstream out(json_out);
        if (!out) throw Error("cannot write " + json_out);
        out << harness::reports_to_json(reports, true) << '\n';
      }
      return failed == 0 ? 0 : 1;
    }

    if (*corpus_gen) {
      const auto entries = harness::generate_corpus(seed, spec);
      harness::write_corpus(entries, corpus_out);
      std::cout << "wrote " << entries.size() << " circuits to " << corpus_out << '\n';
      return 0;
    }

    if (*bench) {
      const auto program = load_program(bench_in, machine_config(frac_bits, max_qubits));
      emu::TimingModel model;
      model.n_pipe = n_pipe;
      model.clock_period_s = 1.0 / (clock_mhz * 1e6);
      const auto estimate = emu::cycle_count(program, model);
      std::size_t controlled = 0, gates = 0;
      for (const auto& ins : program.instructions) {
        if (!isa::is_gate(ins.opcode)) continue;
        ++gates;
        controlled += ins.controlled() ? 1 : 0;
      }
      std::cout << "qubits " << program.qubit_count << " (nq_min " << model.nq_min() << ")\n"
                << "gates " << gates << ", controlled " << controlled << ", alpha "
                << (gates ? static_cast<double>(controlled) / gates : 0.0) << '\n'
                << "cycles " << estimate.cycles << '\n'
                << "time " << estimate.seconds << " s at " << clock_mhz << " MHz\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
