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

// The instruction set: s-type (qubit count), g-type (gate) and r-type (read
// state) instructions packed into one machine word as
//
//   [ opcode:5 | target:Q | control:Q | immediate:1+F ]
//
// with the opcode in the most significant bits of the configured word width.
// The default configuration (Q = 4, F = 18) gives exactly 32 bits.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "amaretto/fxp.hpp"

namespace amaretto::isa {

enum class Opcode : std::uint8_t {
  SetNq = 0x00,
  ReadState = 0x01,
  X = 0x02,
  Y,
  Z,
  H,
  S,
  Sdg,
  T,
  Tdg,
  P,
  RX,
  RY,
  RZ,
};

inline constexpr int kOpcodeCount = 14;
inline constexpr int kOpcodeBits = 5;

enum class InstrType { S, G, R };

constexpr InstrType type_of(Opcode op) noexcept {
  switch (op) {
    case Opcode::SetNq: return InstrType::S;
    case Opcode::ReadState: return InstrType::R;
    default: return InstrType::G;
  }
}

constexpr bool is_gate(Opcode op) noexcept { return type_of(op) == InstrType::G; }
constexpr bool is_valid_opcode(unsigned code) noexcept { return code < kOpcodeCount; }

/// Gates whose immediate is a free parameter rather than a fixed constant.
constexpr bool is_parametric(Opcode op) noexcept {
  return op == Opcode::P || op == Opcode::RX || op == Opcode::RY || op == Opcode::RZ;
}

/// Effective angle θ_eff/π that a fixed gate carries in its immediate
/// (X, Y, Z: 1/2; H: 1/4; S: 1/2; SDG: -1/2; T: 1/4; TDG: -1/4). Zero for
/// parametric gates and non-gates.
constexpr double fixed_angle(Opcode op) noexcept {
  switch (op) {
    case Opcode::X:
    case Opcode::Y:
    case Opcode::Z:
    case Opcode::S: return 0.5;
    case Opcode::Sdg: return -0.5;
    case Opcode::H:
    case Opcode::T: return 0.25;
    case Opcode::Tdg: return -0.25;
    default: return 0.0;
  }
}

std::string_view mnemonic(Opcode op) noexcept;
std::optional<Opcode> opcode_from_mnemonic(std::string_view name) noexcept;

/// All g-type opcodes in numbering order.
const std::vector<Opcode>& gate_opcodes();

/// Field widths of the machine and the numeric formats derived from them.
struct MachineConfig {
  int int_bits = 2;
  int frac_bits = 18;
  int qubit_field_bits = 4;

  constexpr int max_qubits() const noexcept { return 1 << qubit_field_bits; }
  constexpr int immediate_bits() const noexcept { return 1 + frac_bits; }
  constexpr int word_bits() const noexcept {
    return kOpcodeBits + 2 * qubit_field_bits + immediate_bits();
  }
  constexpr fxp::FxFormat amplitude_format() const noexcept { return {int_bits, frac_bits}; }
  /// Angles are stored as θ/π in [-1, 1).
  constexpr fxp::FxFormat immediate_format() const noexcept { return {1, frac_bits}; }

  /// Throws UsageError unless int_bits >= 2 (+1.0 must be representable),
  /// qubit_field_bits >= 1 and the word fits 32 bits.
  void validate() const;

  /// Smallest qubit field able to address max_qubits.
  static MachineConfig for_max_qubits(int max_qubits, int frac_bits = 18, int int_bits = 2);

  friend constexpr bool operator==(const MachineConfig&, const MachineConfig&) = default;
};

struct Instruction {
  Opcode opcode = Opcode::ReadState;
  std::uint32_t target = 0;
  std::uint32_t control = 0;
  /// g-type: two's-complement θ/π with frac_bits fraction bits.
  /// s-type: the qubit count as a plain integer.
  std::int32_t immediate = 0;

  /// A g-type gate is controlled when its control field differs from its target.
  constexpr bool controlled() const noexcept { return is_gate(opcode) && control != target; }

  static constexpr Instruction set_nq(std::uint32_t qubits) noexcept {
    return {Opcode::SetNq, 0, 0, static_cast<std::int32_t>(qubits)};
  }
  static constexpr Instruction read_state() noexcept { return {Opcode::ReadState, 0, 0, 0}; }
  static constexpr Instruction gate(Opcode op, std::uint32_t target, std::int32_t immediate) noexcept {
    return {op, target, target, immediate};
  }
  static constexpr Instruction controlled_gate(Opcode op, std::uint32_t control, std::uint32_t target,
                                               std::int32_t immediate) noexcept {
    return {op, target, control, immediate};
  }

  friend constexpr bool operator==(const Instruction&, const Instruction&) = default;
};

/// Throws EncodeError naming the offending field.
std::uint32_t encode_instruction(const Instruction& ins, const MachineConfig& cfg);

/// Throws DecodeError on an unknown opcode, bits above the word width or
/// malformed s/r-type fields.
Instruction decode_instruction(std::uint32_t word, const MachineConfig& cfg);

/// Where an instruction came from.
struct SourceRef {
  int line = 0;
  std::string text;
  /// Folded θ_eff/π before quantization; only meaningful for g-type.
  double angle = 0.0;
};

struct Program {
  MachineConfig config;
  std::uint32_t qubit_count = 0;
  std::vector<Instruction> instructions;
  /// Either empty (e.g. loaded from a binary) or parallel to instructions.
  std::vector<SourceRef> source_map;
  std::vector<std::string> warnings;

  bool has_source_map() const noexcept { return source_map.size() == instructions.size(); }
  std::size_t gate_count() const noexcept;

  /// SET_NQ first and only once, READ_STATE last and only once, every g-type
  /// operand in range. Throws ProgramError.
  void validate() const;
};

}  // namespace amaretto::isa
