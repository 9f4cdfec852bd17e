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

// Lowers a parsed OpenQASM circuit onto the instruction set.
//
// Gates with a native opcode (the Pauli, Clifford, T, phase and rotation gates
// of qelib1 and their singly-controlled forms) map one-to-one. Every other
// gate is inlined through its definition down to U and CX, and
// U(θ,φ,λ) becomes RZ(λ), RY(θ), RZ(φ) in application order, dropping the
// global phase. CX is X with the control field set.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "amaretto/isa.hpp"
#include "amaretto/qasm.hpp"

namespace amaretto::compiler {

struct LoweredGate {
  isa::Opcode opcode = isa::Opcode::X;
  std::uint32_t target = 0;
  std::uint32_t control = 0;  // equal to target when uncontrolled
  /// θ_eff/π folded into [-1, 1), before quantization.
  double angle = 0.0;
  int line = 0;

  bool controlled() const noexcept { return control != target; }
};

struct LoweredCircuit {
  std::uint32_t qubit_count = 0;
  std::vector<LoweredGate> gates;
  std::vector<std::string> warnings;
};

/// Folds a half-turn count (angle/π) into [-1, 1).
double fold_half_turns(double half_turns) noexcept;

/// θ (radians) → folded θ/π → RNE to frac_bits fraction bits. A value that
/// rounds up to +1.0 wraps to -1.0, which has the same sine and cosine.
std::int32_t quantize_angle(double theta_radians, int frac_bits);
/// Same, starting from an already folded half-turn value.
std::int32_t quantize_half_turns(double half_turns, int frac_bits);

/// Throws CompileError for mid-circuit measurement, reset, classical control,
/// opaque gates, or more qubits than max_qubits.
LoweredCircuit lower_gates(const qasm::CircuitAst& ast, int max_qubits);

/// SET_NQ, one instruction per lowered gate, READ_STATE; with a source map
/// carrying each gate's QASM line and unquantized angle.
isa::Program lower(const qasm::CircuitAst& ast, const isa::MachineConfig& cfg);

/// parse_qasm followed by lower.
isa::Program compile_qasm(std::string_view source, const isa::MachineConfig& cfg = {});

}  // namespace amaretto::compiler
