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

#include "amaretto/emulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "amaretto/error.hpp"

namespace amaretto::emu {

namespace {

using isa::Opcode;

constexpr Source zero{};
constexpr Source plus(Operand op) { return {op, false}; }
constexpr Source minus(Operand op) { return {op, true}; }
constexpr OutputTerm term(Source sin_src, Source cos_src) { return {sin_src, cos_src}; }

constexpr GateTableEntry swap_entry() {
  return {term(plus(Operand::ReJ), zero), term(plus(Operand::ImJ), zero), term(plus(Operand::ReI), zero),
          term(plus(Operand::ImI), zero)};
}

constexpr GateTableEntry phase_entry() {
  GateTableEntry e{{}, {}, term(minus(Operand::ImJ), plus(Operand::ReJ)), term(plus(Operand::ReJ), plus(Operand::ImJ))};
  e.hold_i = true;
  return e;
}

GateTable build_standard_table() {
  GateTable t{};
  t[static_cast<std::size_t>(Opcode::X)] = swap_entry();
  t[static_cast<std::size_t>(Opcode::Y)] = {term(plus(Operand::ImJ), zero), term(minus(Operand::ReJ), zero),
                                            term(minus(Operand::ImI), zero), term(plus(Operand::ReI), zero)};
  GateTableEntry z{{}, {}, term(minus(Operand::ReJ), zero), term(minus(Operand::ImJ), zero)};
  z.hold_i = true;
  t[static_cast<std::size_t>(Opcode::Z)] = z;
  t[static_cast<std::size_t>(Opcode::H)] = {
      term(plus(Operand::ReI), plus(Operand::ReJ)), term(plus(Operand::ImI), plus(Operand::ImJ)),
      term(plus(Operand::ReI), minus(Operand::ReJ)), term(plus(Operand::ImI), minus(Operand::ImJ))};
  for (Opcode op : {Opcode::S, Opcode::Sdg, Opcode::T, Opcode::Tdg, Opcode::P}) {
    t[static_cast<std::size_t>(op)] = phase_entry();
  }
  t[static_cast<std::size_t>(Opcode::RX)] = {
      term(plus(Operand::ImJ), plus(Operand::ReI)), term(minus(Operand::ReJ), plus(Operand::ImI)),
      term(plus(Operand::ImI), plus(Operand::ReJ)), term(minus(Operand::ReI), plus(Operand::ImJ))};
  t[static_cast<std::size_t>(Opcode::RY)] = {
      term(minus(Operand::ReJ), plus(Operand::ReI)), term(minus(Operand::ImJ), plus(Operand::ImI)),
      term(plus(Operand::ReI), plus(Operand::ReJ)), term(plus(Operand::ImI), plus(Operand::ImJ))};
  t[static_cast<std::size_t>(Opcode::RZ)] = {
      term(plus(Operand::ImI), plus(Operand::ReI)), term(minus(Operand::ReI), plus(Operand::ImI)),
      term(minus(Operand::ImJ), plus(Operand::ReJ)), term(plus(Operand::ReJ), plus(Operand::ImJ))};
  return t;
}

}  // namespace

const GateTable& standard_gate_table() {
  static const GateTable table = build_standard_table();
  return table;
}

// ---------------------------------------------------------------------------

ButterflyPairs::ButterflyPairs(unsigned nq, unsigned target, std::optional<unsigned> control) {
  if (nq < 1 || nq > 62) throw UsageError("qubit count out of range");
  if (target >= nq) throw UsageError("target qubit " + std::to_string(target) + " out of range");
  if (control) {
    if (*control >= nq) throw UsageError("control qubit " + std::to_string(*control) + " out of range");
    if (*control == target) throw UsageError("control and target coincide");
    if (nq < 2) throw UsageError("controlled gate needs two qubits");
  }
  target_bit_ = std::uint64_t{1} << target;
  inserted_.push_back({target, 0});
  if (control) inserted_.push_back({*control, 1});
  std::sort(inserted_.begin(), inserted_.end(),
            [](const InsertedBit& a, const InsertedBit& b) { return a.position < b.position; });
  count_ = std::uint64_t{1} << (nq - inserted_.size());
}

// ---------------------------------------------------------------------------

FxStateVector::FxStateVector(unsigned nq, fxp::FxFormat fmt)
    : nq_(nq), fmt_(fmt), re_(std::size_t{1} << nq, 0), im_(std::size_t{1} << nq, 0) {
  fmt_.validate();
  if (nq < 1 || nq > 30) throw UsageError("qubit count " + std::to_string(nq) + " out of range");
  if (!fmt_.fits(fmt_.one())) throw UsageError("format " + fmt_.to_string() + " cannot represent 1.0");
  re_[0] = static_cast<std::int32_t>(fmt_.one());
}

std::complex<double> FxStateVector::amplitude(std::uint64_t k) const {
  return {std::ldexp(static_cast<double>(re_.at(k)), -fmt_.frac_bits),
          std::ldexp(static_cast<double>(im_.at(k)), -fmt_.frac_bits)};
}

double FxStateVector::norm_squared() const noexcept {
  long double acc = 0;
  for (std::size_t k = 0; k < re_.size(); ++k) {
    acc += static_cast<long double>(re_[k]) * re_[k] + static_cast<long double>(im_[k]) * im_[k];
  }
  return static_cast<double>(std::ldexp(acc, -2 * fmt_.frac_bits));
}

// ---------------------------------------------------------------------------

unsigned TimingModel::nq_min() const noexcept {
  const auto pipe = static_cast<unsigned>(std::max(1, n_pipe));
  return static_cast<unsigned>(std::bit_width(pipe - 1)) + 2;  // bit_width(n-1) == ceil(log2 n)
}

std::uint64_t gate_cycles(unsigned nq, bool controlled, const TimingModel& model) noexcept {
  const unsigned effective = std::max(nq, model.nq_min());
  const std::uint64_t pairs = std::uint64_t{1} << (effective - 1);
  return controlled ? pairs / 2 : pairs;
}

TimingEstimate cycle_count(unsigned nq, std::uint64_t uncontrolled_gates, std::uint64_t controlled_gates,
                           const TimingModel& model) {
  if (nq < 1) throw UsageError("cycle_count needs at least one qubit");
  TimingEstimate t;
  t.cycles = uncontrolled_gates * gate_cycles(nq, false, model) + controlled_gates * gate_cycles(nq, true, model) +
             static_cast<std::uint64_t>(std::max(0, model.n_pipe - 1));
  t.seconds = static_cast<double>(t.cycles) * model.clock_period_s;
  return t;
}

TimingEstimate cycle_count(unsigned nq, const std::vector<bool>& controlled, const TimingModel& model) {
  const auto n_controlled = static_cast<std::uint64_t>(std::count(controlled.begin(), controlled.end(), true));
  return cycle_count(nq, controlled.size() - n_controlled, n_controlled, model);
}

TimingEstimate cycle_count(const isa::Program& program, const TimingModel& model) {
  std::uint64_t plain = 0, ctrl = 0;
  for (const auto& ins : program.instructions) {
    if (!isa::is_gate(ins.opcode)) continue;
    (ins.controlled() ? ctrl : plain) += 1;
  }
  return cycle_count(program.qubit_count, plain, ctrl, model);
}

// ---------------------------------------------------------------------------

std::uint64_t apply_gate(FxStateVector& state, const isa::Instruction& ins, const trig::TrigUnit& tu,
                         const GateTable& table, fxp::FxFlags& flags, const TimingModel& model) {
  if (!isa::is_gate(ins.opcode)) throw UsageError("apply_gate needs a g-type instruction");
  const fxp::FxFormat& fmt = state.format();
  if (tu.config().output != fmt) throw UsageError("trig unit format differs from the state format");

  const std::optional<unsigned> control =
      ins.controlled() ? std::optional<unsigned>(ins.control) : std::nullopt;
  const ButterflyPairs pairs(state.qubits(), ins.target, control);

  std::int32_t sin_raw = 0, cos_raw = 0;
  tu.sincos_raw(ins.immediate, sin_raw, cos_raw);

  const GateTableEntry& entry = table[static_cast<std::size_t>(ins.opcode)];
  auto re = state.re();
  auto im = state.im();

  std::int32_t in[5] = {};
  auto select = [&](const Source& src) -> std::int32_t {
    const std::int32_t v = in[static_cast<std::size_t>(src.operand)];
    return src.negate ? fxp::saturate(-std::int64_t{v}, fmt, flags) : v;
  };
  auto evaluate = [&](const OutputTerm& t) -> std::int32_t {
    const std::int32_t by_sin = fxp::mul_rne_raw(select(t.sin_src), sin_raw, fmt, flags);
    const std::int32_t by_cos = fxp::mul_rne_raw(select(t.cos_src), cos_raw, fmt, flags);
    return fxp::add_raw(by_sin, by_cos, fmt, flags);
  };

  for (const IndexPair p : pairs) {
    in[1] = re[p.i];
    in[2] = im[p.i];
    in[3] = re[p.j];
    in[4] = im[p.j];
    if (!entry.hold_i) {
      re[p.i] = evaluate(entry.re_i);
      im[p.i] = evaluate(entry.im_i);
    }
    if (!entry.hold_j) {
      re[p.j] = evaluate(entry.re_j);
      im[p.j] = evaluate(entry.im_j);
    }
  }
  return gate_cycles(state.qubits(), ins.controlled(), model);
}

// ---------------------------------------------------------------------------

Emulator::Emulator(const trig::TrigUnit& tu, GateTable table, TimingModel timing)
    : tu_(&tu), table_(table), timing_(timing) {}

EmulationReport Emulator::run(const isa::Program& program) const {
  program.validate();
  if (tu_->config().output != program.config.amplitude_format()) {
    throw UsageError("trig unit output " + tu_->config().output.to_string() + " differs from program format " +
                     program.config.amplitude_format().to_string());
  }

  EmulationReport report;
  std::optional<FxStateVector> state;
  std::uint64_t cycles = 0;
  for (std::size_t k = 0; k < program.instructions.size(); ++k) {
    const auto& ins = program.instructions[k];
    switch (isa::type_of(ins.opcode)) {
      case isa::InstrType::S:
        state.emplace(static_cast<unsigned>(ins.immediate), program.config.amplitude_format());
        break;
      case isa::InstrType::G: {
        fxp::FxFlags flags;
        cycles += apply_gate(*state, ins, *tu_, table_, flags, timing_);
        ++report.gates_executed;
        if (flags.saturated()) report.saturation_log.push_back({k, flags.saturations});
        break;
      }
      case isa::InstrType::R:
        report.state = *state;
        break;
    }
  }
  report.timing.cycles = cycles + static_cast<std::uint64_t>(std::max(0, timing_.n_pipe - 1));
  report.timing.seconds = static_cast<double>(report.timing.cycles) * timing_.clock_period_s;
  return report;
}

std::vector<StateRow> read_state(const EmulationReport& report) {
  const auto& s = report.state;
  std::vector<StateRow> rows(s.size());
  for (std::uint64_t k = 0; k < s.size(); ++k) rows[k] = {k, s.re()[k], s.im()[k]};
  return rows;
}

}  // namespace amaretto::emu
