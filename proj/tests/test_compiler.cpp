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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "amaretto/error.hpp"
#include "amaretto/oracle.hpp"
#include "amaretto/program_io.hpp"
#include "textbook.hpp"

using namespace amaretto;
using namespace amaretto::compiler;
using isa::Instruction;
using isa::Opcode;

namespace {

constexpr double kPi = std::numbers::pi;
const std::string kHeader = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";

isa::Program compile(const std::string& body) { return compile_qasm(kHeader + body); }

std::vector<Instruction> gates_of(const isa::Program& p) {
  return {p.instructions.begin() + 1, p.instructions.end() - 1};
}

std::string call(const std::string& name, const std::vector<double>& params, const std::vector<unsigned>& qubits) {
  std::ostringstream os;
  os.precision(17);
  os << name;
  if (!params.empty()) {
    os << '(';
    for (std::size_t k = 0; k < params.size(); ++k) os << (k ? "," : "") << params[k];
    os << ')';
  }
  for (std::size_t k = 0; k < qubits.size(); ++k) os << (k ? ", " : " ") << "q[" << qubits[k] << ']';
  os << ";\n";
  return os.str();
}

}  // namespace

TEST(Quantize, Examples) {
  EXPECT_EQ(quantize_angle(kPi / 4, 18), 65536);
  EXPECT_EQ(quantize_angle(2 * kPi, 18), 0);
  EXPECT_EQ(quantize_angle(kPi, 18), -262144);
  EXPECT_EQ(quantize_angle(-kPi, 18), -262144);
  EXPECT_EQ(quantize_angle(3 * kPi / 2, 18), -131072);
  EXPECT_EQ(quantize_angle(-kPi / 2, 18), -131072);
  // just below +1.0 rounds up to +1.0, which wraps
  EXPECT_EQ(quantize_half_turns(1.0 - std::ldexp(1.0, -20), 18), -262144);
  EXPECT_EQ(quantize_half_turns(1.0 - std::ldexp(1.0, -18), 18), 262143);
}

TEST(Quantize, FoldRange) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-100, 100);
  for (int k = 0; k < 10000; ++k) {
    const double x = d(rng);
    const double f = fold_half_turns(x);
    ASSERT_GE(f, -1.0);
    ASSERT_LT(f, 1.0);
    const double turns = (x - f) / 2;
    ASSERT_NEAR(turns, std::round(turns), 1e-9);
  }
}

TEST(Lower, Hadamard) {
  const auto p = compile("qreg q[1];\nh q[0];\n");
  ASSERT_EQ(p.instructions.size(), 3u);
  EXPECT_EQ(p.instructions[0], Instruction::set_nq(1));
  EXPECT_EQ(p.instructions[1], Instruction::gate(Opcode::H, 0, 65536));
  EXPECT_EQ(p.instructions[2], Instruction::read_state());
  EXPECT_EQ(p.qubit_count, 1u);
}

TEST(Lower, CnotIsControlledX) {
  const auto g = gates_of(compile("qreg q[2];\ncx q[0],q[1];\n"));
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0], Instruction::controlled_gate(Opcode::X, 0, 1, 131072));
}

TEST(Lower, FixedImmediates) {
  const auto g = gates_of(compile("qreg q[1];\nx q;\ny q;\nz q;\nh q;\ns q;\nsdg q;\nt q;\ntdg q;\n"));
  const std::vector<std::pair<Opcode, std::int32_t>> expect = {
      {Opcode::X, 131072}, {Opcode::Y, 131072}, {Opcode::Z, 131072},  {Opcode::H, 65536},
      {Opcode::S, 131072}, {Opcode::Sdg, -131072}, {Opcode::T, 65536}, {Opcode::Tdg, -65536}};
  ASSERT_EQ(g.size(), expect.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    EXPECT_EQ(g[k].opcode, expect[k].first);
    EXPECT_EQ(g[k].immediate, expect[k].second);
  }
}

TEST(Lower, RotationsStoreHalfAngles) {
  const auto g = gates_of(compile("qreg q[1];\nrx(pi/2) q;\nry(-pi) q;\nrz(3*pi) q;\np(pi/2) q;\nu1(pi) q;\n"));
  ASSERT_EQ(g.size(), 5u);
  EXPECT_EQ(g[0].immediate, 65536);     // θ/2π = 1/4
  EXPECT_EQ(g[1].immediate, -131072);   // -1/2
  EXPECT_EQ(g[2].immediate, -131072);   // 3/2 folds to -1/2
  EXPECT_EQ(g[3].immediate, 131072);    // λ/π
  EXPECT_EQ(g[4].opcode, Opcode::P);
  EXPECT_EQ(g[4].immediate, -262144);
}

TEST(Lower, UIsZyzInOrder) {
  const auto p = compile_qasm("OPENQASM 2.0;\nqreg q[1];\nU(0.5, 0.25, 0.125) q[0];\n");
  const auto g = gates_of(p);
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(g[0].opcode, Opcode::RZ);
  EXPECT_EQ(g[1].opcode, Opcode::RY);
  EXPECT_EQ(g[2].opcode, Opcode::RZ);
  EXPECT_DOUBLE_EQ(p.source_map[1].angle, 0.125 / (2 * kPi));  // λ first
  EXPECT_DOUBLE_EQ(p.source_map[2].angle, 0.5 / (2 * kPi));
  EXPECT_DOUBLE_EQ(p.source_map[3].angle, 0.25 / (2 * kPi));
}

TEST(Lower, UserGatesAreInlinedToPrimitives) {
  // a user-defined gate is expanded even when its name shadows nothing native
  const auto p = compile("gate bell a, b { h a; cx a, b; }\nqreg q[3];\nbell q[2], q[0];\n");
  const auto g = gates_of(p);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0], Instruction::gate(Opcode::H, 2, 65536));
  EXPECT_EQ(g[1], Instruction::controlled_gate(Opcode::X, 2, 0, 131072));
  EXPECT_EQ(p.source_map[1].line, 5);  // the call site, not the body
}

TEST(Lower, ToffoliUsesCliffordT) {
  const auto p = compile("qreg q[3];\nccx q[0],q[1],q[2];\n");
  for (const auto& ins : gates_of(p)) {
    EXPECT_TRUE(ins.opcode == Opcode::H || ins.opcode == Opcode::T || ins.opcode == Opcode::Tdg ||
                (ins.opcode == Opcode::X && ins.controlled()))
        << isa::mnemonic(ins.opcode);
  }
  EXPECT_EQ(p.gate_count(), 15u);
  textbook::Mat toffoli = textbook::Mat::Identity(8, 8);
  toffoli(3, 3) = toffoli(7, 7) = 0;
  toffoli(3, 7) = toffoli(7, 3) = 1;
  const auto u = oracle::ref_unitary(p, oracle::AngleMode::EndToEnd);
  EXPECT_LE(textbook::phase_distance(u, toffoli), 1e-9);
}

TEST(Lower, BroadcastAndBarrier) {
  const auto p = compile("qreg a[2];\nqreg b[2];\nh a;\nbarrier a, b;\ncx a, b;\n");
  const auto g = gates_of(p);
  ASSERT_EQ(g.size(), 4u);
  EXPECT_EQ(g[2], Instruction::controlled_gate(Opcode::X, 0, 2, 131072));
  EXPECT_EQ(g[3], Instruction::controlled_gate(Opcode::X, 1, 3, 131072));
}

TEST(Lower, TerminalMeasureIsDroppedWithWarning) {
  const auto p = compile("qreg q[2];\ncreg c[2];\nh q[0];\nmeasure q[0] -> c[0];\nx q[1];\nmeasure q[1] -> c[1];\n");
  EXPECT_EQ(p.gate_count(), 2u);
  ASSERT_FALSE(p.warnings.empty());
  EXPECT_NE(p.warnings[0].find("measure"), std::string::npos);
}

TEST(Lower, ClassicalControlAndMidCircuitMeasureAreErrors) {
  auto line_of = [](const std::string& body) {
    try {
      compile_qasm(kHeader + body);
    } catch (const CompileError& e) {
      return e.line();
    }
    return -1;
  };
  EXPECT_EQ(line_of("qreg q[1];\ncreg c[1];\nmeasure q -> c;\nh q[0];\n"), 6);
  EXPECT_EQ(line_of("qreg q[1];\nreset q[0];\n"), 4);
  EXPECT_EQ(line_of("qreg q[1];\ncreg c[1];\nif (c==0) x q[0];\n"), 5);
  EXPECT_EQ(line_of("opaque magic a;\nqreg q[1];\nmagic q[0];\n"), 5);
  EXPECT_THROW(compile("qreg q[17];\n"), CompileError);
  EXPECT_THROW(compile("creg c[1];\n"), CompileError);
  EXPECT_NO_THROW(compile_qasm(kHeader + "qreg q[20];\n", isa::MachineConfig::for_max_qubits(32, 16)));
}

TEST(Lower, Deterministic) {
  const std::string src = kHeader + "qreg q[3];\nccx q[0],q[1],q[2];\nu3(0.1,0.2,0.3) q[1];\ncrz(1.7) q[2],q[0];\n";
  const auto a = compile_qasm(src), b = compile_qasm(src);
  EXPECT_EQ(a.instructions, b.instructions);
  EXPECT_EQ(isa::to_ambin(a), isa::to_ambin(b));
}

TEST(Lower, CliffordTInstructionCount) {
  std::mt19937 rng(9);
  const char* ops1[] = {"h", "s", "sdg", "t", "tdg", "x", "y", "z"};
  for (int trial = 0; trial < 20; ++trial) {
    std::string body = "qreg q[4];\n";
    const int n = 1 + trial * 7;
    for (int k = 0; k < n; ++k) {
      const unsigned a = rng() % 4, b = (a + 1 + rng() % 3) % 4;
      body += rng() % 4 == 0 ? call("cx", {}, {a, b}) : call(ops1[rng() % 8], {}, {a});
    }
    EXPECT_EQ(compile(body).instructions.size(), static_cast<std::size_t>(n) + 2);
  }
}

// Each library gate is placed on a scrambled qubit order of a 3-qubit register
// so argument-to-qubit mistakes cannot cancel out.
TEST(Equivalence, EveryLibraryGateMatchesItsTextbookMatrix) {
  const std::vector<double> angles = {0.7312, -1.9045, 2.6183, 0.3377};
  const std::vector<unsigned> placement = {2, 0, 1};
  for (const auto& gate : textbook::small_library_gates()) {
    const std::vector<double> params(angles.begin(), angles.begin() + gate.params);
    const std::vector<unsigned> qubits(placement.begin(), placement.begin() + gate.qubits);
    const auto p = compile("qreg q[3];\n" + call(gate.name, params, qubits));
    const auto u = oracle::ref_unitary(p, oracle::AngleMode::EndToEnd);
    const auto expect = textbook::embed(textbook::textbook_matrix(gate.name, params), qubits, 3);
    EXPECT_LE(textbook::phase_distance(u, expect), 1e-9) << gate.name;
  }
}
