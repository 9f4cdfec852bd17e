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

#include "amaretto/isa.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "amaretto/error.hpp"

namespace amaretto::isa {

namespace {

constexpr std::array<std::string_view, kOpcodeCount> kMnemonics = {
    "SET_NQ", "READ_STATE", "X", "Y", "Z", "H", "S", "SDG", "T", "TDG", "P", "RX", "RY", "RZ",
};

constexpr std::uint32_t mask(int bits) noexcept {
  return bits >= 32 ? 0xFFFFFFFFu : (std::uint32_t{1} << bits) - 1;
}

struct Layout {
  int imm_shift = 0;
  int control_shift;
  int target_shift;
  int opcode_shift;

  explicit Layout(const MachineConfig& cfg)
      : control_shift(cfg.immediate_bits()),
        target_shift(control_shift + cfg.qubit_field_bits),
        opcode_shift(target_shift + cfg.qubit_field_bits) {}
};

}  // namespace

std::string_view mnemonic(Opcode op) noexcept {
  const auto idx = static_cast<unsigned>(op);
  return idx < kMnemonics.size() ? kMnemonics[idx] : std::string_view("?");
}

std::optional<Opcode> opcode_from_mnemonic(std::string_view name) noexcept {
  for (unsigned i = 0; i < kMnemonics.size(); ++i) {
    if (kMnemonics[i] == name) return static_cast<Opcode>(i);
  }
  return std::nullopt;
}

const std::vector<Opcode>& gate_opcodes() {
  static const std::vector<Opcode> ops = [] {
    std::vector<Opcode> out;
    for (unsigned i = 0; i < kOpcodeCount; ++i) {
      if (is_gate(static_cast<Opcode>(i))) out.push_back(static_cast<Opcode>(i));
    }
    return out;
  }();
  return ops;
}

void MachineConfig::validate() const {
  if (int_bits < 2) throw UsageError("int_bits must be at least 2 so that 1.0 is representable");
  amplitude_format().validate();
  if (qubit_field_bits < 1) throw UsageError("qubit field must be at least one bit wide");
  if (word_bits() > 32) {
    throw UsageError("instruction width " + std::to_string(word_bits()) +
                     " bits exceeds the 32-bit machine word");
  }
}

MachineConfig MachineConfig::for_max_qubits(int max_qubits, int frac_bits, int int_bits) {
  if (max_qubits < 1) throw UsageError("max_qubits must be positive");
  MachineConfig cfg;
  cfg.int_bits = int_bits;
  cfg.frac_bits = frac_bits;
  cfg.qubit_field_bits = std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(max_qubits - 1))));
  cfg.validate();
  return cfg;
}

std::uint32_t encode_instruction(const Instruction& ins, const MachineConfig& cfg) {
  cfg.validate();
  const auto code = static_cast<unsigned>(ins.opcode);
  if (!is_valid_opcode(code)) throw EncodeError("opcode", "unknown opcode " + std::to_string(code));

  const auto qmask = mask(cfg.qubit_field_bits);
  const int imm_bits = cfg.immediate_bits();
  std::uint32_t imm_field = 0;

  switch (type_of(ins.opcode)) {
    case InstrType::S:
      if (ins.target != 0 || ins.control != 0) {
        throw EncodeError("target", "s-type target and control fields must be zero");
      }
      if (ins.immediate < 1 || ins.immediate > cfg.max_qubits()) {
        throw EncodeError("immediate", "qubit count " + std::to_string(ins.immediate) +
                                           " outside [1, " + std::to_string(cfg.max_qubits()) + "]");
      }
      imm_field = static_cast<std::uint32_t>(ins.immediate);
      break;
    case InstrType::R:
      if (ins.target != 0 || ins.control != 0 || ins.immediate != 0) {
        throw EncodeError("immediate", "r-type carries only an opcode");
      }
      break;
    case InstrType::G: {
      if (ins.target > qmask) throw EncodeError("target", "qubit " + std::to_string(ins.target) + " does not fit");
      if (ins.control > qmask) throw EncodeError("control", "qubit " + std::to_string(ins.control) + " does not fit");
      const std::int64_t lo = -(std::int64_t{1} << (imm_bits - 1));
      const std::int64_t hi = (std::int64_t{1} << (imm_bits - 1)) - 1;
      if (ins.immediate < lo || ins.immediate > hi) {
        throw EncodeError("immediate", "angle raw " + std::to_string(ins.immediate) + " does not fit " +
                                           std::to_string(imm_bits) + " bits");
      }
      imm_field = static_cast<std::uint32_t>(ins.immediate) & mask(imm_bits);
      break;
    }
  }

  const Layout layout(cfg);
  return (std::uint32_t{code} << layout.opcode_shift) | (ins.target << layout.target_shift) |
         (ins.control << layout.control_shift) | imm_field;
}

Instruction decode_instruction(std::uint32_t word, const MachineConfig& cfg) {
  cfg.validate();
  if ((word & ~mask(cfg.word_bits())) != 0) throw DecodeError("bits set above the instruction width");

  const Layout layout(cfg);
  const unsigned code = (word >> layout.opcode_shift) & mask(kOpcodeBits);
  if (!is_valid_opcode(code)) throw DecodeError("unknown opcode " + std::to_string(code));

  Instruction ins;
  ins.opcode = static_cast<Opcode>(code);
  ins.target = (word >> layout.target_shift) & mask(cfg.qubit_field_bits);
  ins.control = (word >> layout.control_shift) & mask(cfg.qubit_field_bits);
  const int imm_bits = cfg.immediate_bits();
  const std::uint32_t imm_field = word & mask(imm_bits);

  switch (type_of(ins.opcode)) {
    case InstrType::S:
      if (ins.target != 0 || ins.control != 0) throw DecodeError("SET_NQ with nonzero qubit fields");
      if (imm_field < 1 || imm_field > static_cast<std::uint32_t>(cfg.max_qubits())) {
        throw DecodeError("SET_NQ qubit count " + std::to_string(imm_field) + " out of range");
      }
      ins.immediate = static_cast<std::int32_t>(imm_field);
      break;
    case InstrType::R:
      if (ins.target != 0 || ins.control != 0 || imm_field != 0) {
        throw DecodeError("READ_STATE with nonzero operand fields");
      }
      break;
    case InstrType::G: {
      const std::uint32_t sign = std::uint32_t{1} << (imm_bits - 1);
      ins.immediate = static_cast<std::int32_t>(static_cast<std::int64_t>(imm_field ^ sign) -
                                                static_cast<std::int64_t>(sign));
      break;
    }
  }
  return ins;
}

std::size_t Program::gate_count() const noexcept {
  std::size_t n = 0;
  for (const auto& ins : instructions) n += is_gate(ins.opcode) ? 1 : 0;
  return n;
}

void Program::validate() const {
  if (instructions.empty() || instructions.front().opcode != Opcode::SetNq) {
    throw ProgramError("program must start with SET_NQ");
  }
  if (instructions.back().opcode != Opcode::ReadState || instructions.size() < 2) {
    throw ProgramError("program must end with READ_STATE");
  }
  const auto nq = static_cast<std::uint32_t>(instructions.front().immediate);
  if (nq != qubit_count) {
    throw ProgramError("SET_NQ immediate " + std::to_string(nq) + " disagrees with qubit count " +
                       std::to_string(qubit_count));
  }
  if (nq < 1 || nq > static_cast<std::uint32_t>(config.max_qubits())) {
    throw ProgramError("qubit count " + std::to_string(nq) + " outside [1, " +
                       std::to_string(config.max_qubits()) + "]");
  }
  for (std::size_t k = 1; k + 1 < instructions.size(); ++k) {
    const auto& ins = instructions[k];
    if (!is_gate(ins.opcode)) {
      throw ProgramError("instruction " + std::to_string(k) + ": " + std::string(mnemonic(ins.opcode)) +
                         " may only appear at the program boundary");
    }
    if (ins.target >= nq || ins.control >= nq) {
      throw ProgramError("instruction " + std::to_string(k) + ": qubit operand out of range");
    }
  }
  if (!source_map.empty() && !has_source_map()) throw ProgramError("source map length mismatch");
}

}  // namespace amaretto::isa
