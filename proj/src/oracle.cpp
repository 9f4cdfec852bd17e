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

#include "amaretto/oracle.hpp"

#include <cmath>

#include "amaretto/error.hpp"

namespace amaretto::oracle {

double instruction_angle(const isa::Program& program, std::size_t k, AngleMode mode) {
  if (mode == AngleMode::EndToEnd) {
    if (!program.has_source_map()) throw UsageError("end-to-end reference needs a program with a source map");
    return program.source_map[k].angle;
  }
  return std::ldexp(static_cast<double>(program.instructions[k].immediate), -program.config.frac_bits);
}

RefStateVector ref_run(const isa::Program& program, AngleMode mode, const emu::GateTable& table) {
  program.validate();
  RefStateVector state = basis_state<double>(program.qubit_count);
  for (std::size_t k = 1; k + 1 < program.instructions.size(); ++k) {
    const auto& ins = program.instructions[k];
    ref_apply<double>(state, ins.opcode, ins.target, ins.control, instruction_angle(program, k, mode), table);
  }
  return state;
}

Operator ref_unitary(const isa::Program& program, AngleMode mode, const emu::GateTable& table) {
  program.validate();
  const Eigen::Index dim = Eigen::Index{1} << program.qubit_count;
  Operator u(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    RefStateVector v = basis_state<double>(program.qubit_count, static_cast<std::uint64_t>(col));
    for (std::size_t k = 1; k + 1 < program.instructions.size(); ++k) {
      const auto& ins = program.instructions[k];
      ref_apply<double>(v, ins.opcode, ins.target, ins.control, instruction_angle(program, k, mode), table);
    }
    u.col(col) = v;
  }
  return u;
}

RefStateVector tensor_run(const isa::Program& program, AngleMode mode) {
  program.validate();
  if (program.qubit_count > 10) throw UsageError("tensor-product reference limited to 10 qubits");
  RefStateVector state = basis_state<double>(program.qubit_count);
  for (std::size_t k = 1; k + 1 < program.instructions.size(); ++k) {
    const auto& ins = program.instructions[k];
    const Matrix2 u = textbook_gate<double>(ins.opcode, instruction_angle(program, k, mode));
    const auto control = ins.controlled() ? std::optional<unsigned>(ins.control) : std::nullopt;
    state = layer_operator<double>(program.qubit_count, u, ins.target, control) * state;
  }
  return state;
}

}  // namespace amaretto::oracle
