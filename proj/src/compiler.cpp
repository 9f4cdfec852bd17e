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

#include "amaretto/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <unordered_map>

#include "amaretto/error.hpp"

namespace amaretto::compiler {

namespace {

using isa::Opcode;

enum class AngleSource {
  Fixed,     // gate-dependent constant
  FullTurn,  // θ_eff = λ (phase gates)
  HalfTurn,  // θ_eff = θ/2 (rotations)
};

struct NativeGate {
  Opcode opcode;
  AngleSource angle;
  bool controlled;
};

const std::map<std::string, NativeGate, std::less<>>& native_gates() {
  static const std::map<std::string, NativeGate, std::less<>> table = {
      {"x", {Opcode::X, AngleSource::Fixed, false}},
      {"y", {Opcode::Y, AngleSource::Fixed, false}},
      {"z", {Opcode::Z, AngleSource::Fixed, false}},
      {"h", {Opcode::H, AngleSource::Fixed, false}},
      {"s", {Opcode::S, AngleSource::Fixed, false}},
      {"sdg", {Opcode::Sdg, AngleSource::Fixed, false}},
      {"t", {Opcode::T, AngleSource::Fixed, false}},
      {"tdg", {Opcode::Tdg, AngleSource::Fixed, false}},
      {"p", {Opcode::P, AngleSource::FullTurn, false}},
      {"u1", {Opcode::P, AngleSource::FullTurn, false}},
      {"rx", {Opcode::RX, AngleSource::HalfTurn, false}},
      {"ry", {Opcode::RY, AngleSource::HalfTurn, false}},
      {"rz", {Opcode::RZ, AngleSource::HalfTurn, false}},
      {"cx", {Opcode::X, AngleSource::Fixed, true}},
      {"cy", {Opcode::Y, AngleSource::Fixed, true}},
      {"cz", {Opcode::Z, AngleSource::Fixed, true}},
      {"ch", {Opcode::H, AngleSource::Fixed, true}},
      {"cp", {Opcode::P, AngleSource::FullTurn, true}},
      {"cu1", {Opcode::P, AngleSource::FullTurn, true}},
      {"crx", {Opcode::RX, AngleSource::HalfTurn, true}},
      {"cry", {Opcode::RY, AngleSource::HalfTurn, true}},
      {"crz", {Opcode::RZ, AngleSource::HalfTurn, true}},
  };
  return table;
}

class Lowerer {
 public:
  Lowerer(const qasm::CircuitAst& ast, LoweredCircuit& out) : ast_(ast), out_(out) {}

  void run() {
    measured_.assign(static_cast<std::size_t>(ast_.qubit_count()), false);
    std::size_t measurements = 0;
    for (const auto& stmt : ast_.statements) {
      if (const auto* call = std::get_if<qasm::GateCall>(&stmt)) {
        lower_call(*call);
      } else if (const auto* m = std::get_if<qasm::Measure>(&stmt)) {
        for (int q : ast_.resolve(m->qubit)) {
          measured_[static_cast<std::size_t>(q)] = true;
          ++measurements;
        }
      } else if (const auto* r = std::get_if<qasm::Reset>(&stmt)) {
        throw CompileError(r->pos.line, "reset is not supported (the instruction set has no classical operations)");
      } else if (const auto* c = std::get_if<qasm::Conditional>(&stmt)) {
        throw CompileError(c->pos.line, "classically controlled operation on '" + c->creg + "' is not supported");
      }
      // barriers carry no semantics for a sequential machine
    }
    if (measurements > 0) {
      out_.warnings.push_back("dropped " + std::to_string(measurements) +
                              " terminal measurement(s); READ_STATE returns amplitudes, not samples");
    }
  }

 private:
  void lower_call(const qasm::GateCall& call) {
    std::vector<double> params;
    params.reserve(call.params.size());
    for (const auto& e : call.params) params.push_back(e.evaluate());

    std::vector<std::vector<int>> resolved;
    std::size_t width = 1;
    for (const auto& ref : call.args) {
      resolved.push_back(ast_.resolve(ref));
      if (!ref.index) width = resolved.back().size();
    }
    for (std::size_t k = 0; k < width; ++k) {
      std::vector<std::uint32_t> qubits;
      for (std::size_t a = 0; a < call.args.size(); ++a) {
        const int q = call.args[a].index ? resolved[a].front() : resolved[a][k];
        if (measured_[static_cast<std::size_t>(q)]) {
          throw CompileError(call.pos.line, "gate '" + call.name + "' acts on qubit " + std::to_string(q) +
                                                " after it was measured (mid-circuit measurement is not supported)");
        }
        qubits.push_back(static_cast<std::uint32_t>(q));
      }
      expand(call.name, params, qubits, call.pos.line);
    }
  }

  void push(Opcode op, std::uint32_t target, std::uint32_t control, double half_turns, int line) {
    out_.gates.push_back({op, target, control, fold_half_turns(half_turns), line});
  }

  void expand(const std::string& name, const std::vector<double>& params, const std::vector<std::uint32_t>& qubits,
              int line) {
    if (name == qasm::kBuiltinU) {
      const double theta = params[0], phi = params[1], lambda = params[2];
      const double half = 0.5 / std::numbers::pi;
      push(Opcode::RZ, qubits[0], qubits[0], lambda * half, line);
      push(Opcode::RY, qubits[0], qubits[0], theta * half, line);
      push(Opcode::RZ, qubits[0], qubits[0], phi * half, line);
      return;
    }
    if (name == qasm::kBuiltinCX) {
      push(Opcode::X, qubits[1], qubits[0], isa::fixed_angle(Opcode::X), line);
      return;
    }

    const qasm::GateDecl& decl = ast_.gates.at(name);
    if (decl.opaque) throw CompileError(line, "opaque gate '" + name + "' has no definition to lower");

    if (decl.from_library) {
      const auto& natives = native_gates();
      if (auto it = natives.find(name); it != natives.end()) {
        const NativeGate& g = it->second;
        double half_turns = isa::fixed_angle(g.opcode);
        if (g.angle == AngleSource::FullTurn) half_turns = params[0] / std::numbers::pi;
        if (g.angle == AngleSource::HalfTurn) half_turns = params[0] / (2.0 * std::numbers::pi);
        const std::uint32_t target = g.controlled ? qubits[1] : qubits[0];
        push(g.opcode, target, qubits[0], half_turns, line);
        return;
      }
    }

    std::unordered_map<std::string, double> env;
    for (std::size_t k = 0; k < decl.params.size(); ++k) env[decl.params[k]] = params[k];
    for (const auto& inner : decl.body) {
      std::vector<double> inner_params;
      inner_params.reserve(inner.params.size());
      for (const auto& e : inner.params) inner_params.push_back(e.evaluate(env));
      std::vector<std::uint32_t> inner_qubits;
      for (const auto& ref : inner.args) {
        const auto pos = std::find(decl.qargs.begin(), decl.qargs.end(), ref.reg) - decl.qargs.begin();
        inner_qubits.push_back(qubits[static_cast<std::size_t>(pos)]);
      }
      expand(inner.name, inner_params, inner_qubits, line);
    }
  }

  const qasm::CircuitAst& ast_;
  LoweredCircuit& out_;
  std::vector<bool> measured_;
};

}  // namespace

double fold_half_turns(double half_turns) noexcept {
  double r = half_turns - 2.0 * std::floor((half_turns + 1.0) * 0.5);
  if (r >= 1.0) r -= 2.0;
  if (r < -1.0) r += 2.0;
  return r;
}

std::int32_t quantize_half_turns(double half_turns, int frac_bits) {
  if (!std::isfinite(half_turns)) throw UsageError("angle is not finite");
  const fxp::FxFormat wide{2, frac_bits};
  const std::int64_t one = wide.one();
  std::int64_t raw = fxp::encode(fold_half_turns(half_turns), wide).raw();
  if (raw >= one) raw -= 2 * one;
  return static_cast<std::int32_t>(raw);
}

std::int32_t quantize_angle(double theta_radians, int frac_bits) {
  return quantize_half_turns(theta_radians / std::numbers::pi, frac_bits);
}

LoweredCircuit lower_gates(const qasm::CircuitAst& ast, int max_qubits) {
  const int nq = ast.qubit_count();
  if (nq == 0) throw CompileError(0, "circuit declares no qubits");
  if (nq > max_qubits) {
    throw CompileError(0, "circuit uses " + std::to_string(nq) + " qubits but the machine supports at most " +
                              std::to_string(max_qubits));
  }
  LoweredCircuit out;
  out.qubit_count = static_cast<std::uint32_t>(nq);
  Lowerer(ast, out).run();
  return out;
}

isa::Program lower(const qasm::CircuitAst& ast, const isa::MachineConfig& cfg) {
  cfg.validate();
  const LoweredCircuit lowered = lower_gates(ast, cfg.max_qubits());

  isa::Program program;
  program.config = cfg;
  program.qubit_count = lowered.qubit_count;
  program.warnings = lowered.warnings;
  program.instructions.reserve(lowered.gates.size() + 2);
  program.source_map.reserve(lowered.gates.size() + 2);

  program.instructions.push_back(isa::Instruction::set_nq(lowered.qubit_count));
  program.source_map.push_back({});
  for (const auto& g : lowered.gates) {
    program.instructions.push_back({g.opcode, g.target, g.control, quantize_half_turns(g.angle, cfg.frac_bits)});
    program.source_map.push_back({g.line, ast.line_text(g.line), g.angle});
  }
  program.instructions.push_back(isa::Instruction::read_state());
  program.source_map.push_back({});
  program.validate();
  return program;
}

isa::Program compile_qasm(std::string_view source, const isa::MachineConfig& cfg) {
  return lower(qasm::parse_qasm(source), cfg);
}

}  // namespace amaretto::compiler
