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

// Double-precision reference over the same instruction semantics as the
// fixed-point core, plus an independent brute-force simulator that builds each
// instruction's full 2^n × 2^n operator as a tensor product of textbook gate
// matrices.

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>

#include "amaretto/emulator.hpp"
#include "amaretto/isa.hpp"

namespace amaretto::oracle {

template <typename Scalar>
using StateVectorT = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar>
using OperatorT = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Matrix2T = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

using RefStateVector = StateVectorT<double>;
using Operator = OperatorT<double>;
using Matrix2 = Matrix2T<double>;

/// Which angle a reference run feeds the gate: the quantized immediate
/// (isolates datapath rounding) or the unquantized source angle (end to end).
enum class AngleMode { Datapath, EndToEnd };

template <typename Scalar = double>
StateVectorT<Scalar> basis_state(unsigned nq, std::uint64_t index = 0) {
  StateVectorT<Scalar> v = StateVectorT<Scalar>::Zero(Eigen::Index{1} << nq);
  v(static_cast<Eigen::Index>(index)) = Scalar(1);
  return v;
}

/// Exact-arithmetic twin of emu::apply_gate: same pair selection, same table,
/// real sin/cos of π·half_turns.
template <typename Scalar>
void ref_apply(StateVectorT<Scalar>& state, isa::Opcode op, unsigned target, unsigned control, Scalar half_turns,
               const emu::GateTable& table = emu::standard_gate_table()) {
  using std::cos;
  using std::sin;
  const unsigned nq = static_cast<unsigned>(std::countr_zero(static_cast<std::uint64_t>(state.size())));
  const std::optional<unsigned> ctrl = control != target ? std::optional<unsigned>(control) : std::nullopt;
  const emu::ButterflyPairs pairs(nq, target, ctrl);
  const Scalar angle = std::numbers::pi_v<Scalar> * half_turns;
  const Scalar s = sin(angle);
  const Scalar c = cos(angle);
  const emu::GateTableEntry& e = table[static_cast<std::size_t>(op)];

  Scalar in[5] = {};
  auto select = [&](const emu::Source& src) {
    const Scalar v = in[static_cast<std::size_t>(src.operand)];
    return src.negate ? -v : v;
  };
  auto eval = [&](const emu::OutputTerm& t) { return select(t.sin_src) * s + select(t.cos_src) * c; };

  for (const emu::IndexPair p : pairs) {
    auto& ci = state(static_cast<Eigen::Index>(p.i));
    auto& cj = state(static_cast<Eigen::Index>(p.j));
    in[1] = ci.real();
    in[2] = ci.imag();
    in[3] = cj.real();
    in[4] = cj.imag();
    if (!e.hold_i) ci = {eval(e.re_i), eval(e.im_i)};
    if (!e.hold_j) cj = {eval(e.re_j), eval(e.im_j)};
  }
}

/// θ_eff/π an instruction feeds the trig unit under the given mode.
double instruction_angle(const isa::Program& program, std::size_t k, AngleMode mode);

/// Runs a whole program on the reference state vector.
RefStateVector ref_run(const isa::Program& program, AngleMode mode,
                       const emu::GateTable& table = emu::standard_gate_table());

/// Operator realised by a program on 2^nq amplitudes (column k is the image of |k⟩).
Operator ref_unitary(const isa::Program& program, AngleMode mode,
                     const emu::GateTable& table = emu::standard_gate_table());

/// Action of one table entry on an isolated pair (c_i, c_j), as a 2×2 matrix.
template <typename Scalar>
Matrix2T<Scalar> realized_matrix(isa::Opcode op, Scalar half_turns,
                                 const emu::GateTable& table = emu::standard_gate_table()) {
  Matrix2T<Scalar> m;
  for (unsigned col = 0; col < 2; ++col) {
    StateVectorT<Scalar> v = basis_state<Scalar>(1, col);
    ref_apply<Scalar>(v, op, 0, 0, half_turns, table);
    m.col(col) = v;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Brute-force tensor-product reference

/// Textbook matrix of an opcode. half_turns is θ_eff/π: the rotation angle is
/// 2π·half_turns for RX/RY/RZ and π·half_turns for P; fixed gates ignore it.
template <typename Scalar = double>
Matrix2T<Scalar> textbook_gate(isa::Opcode op, Scalar half_turns = 0) {
  using C = std::complex<Scalar>;
  using std::cos;
  using std::sin;
  using std::sqrt;
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const C i(0, 1);
  const Scalar c = cos(pi * half_turns);
  const Scalar s = sin(pi * half_turns);
  Matrix2T<Scalar> m;
  switch (op) {
    case isa::Opcode::X: m << 0, 1, 1, 0; break;
    case isa::Opcode::Y: m << 0, -i, i, 0; break;
    case isa::Opcode::Z: m << 1, 0, 0, -1; break;
    case isa::Opcode::H: m << 1, 1, 1, -1; m /= sqrt(Scalar(2)); break;
    case isa::Opcode::S: m << 1, 0, 0, i; break;
    case isa::Opcode::Sdg: m << 1, 0, 0, -i; break;
    case isa::Opcode::T: m << 1, 0, 0, std::polar(Scalar(1), pi / 4); break;
    case isa::Opcode::Tdg: m << 1, 0, 0, std::polar(Scalar(1), -pi / 4); break;
    case isa::Opcode::P: m << 1, 0, 0, C(c, s); break;
    case isa::Opcode::RX: m << c, -i * s, -i * s, c; break;
    case isa::Opcode::RY: m << c, -s, s, c; break;
    case isa::Opcode::RZ: m << C(c, -s), 0, 0, C(c, s); break;
    default: m.setIdentity(); break;
  }
  return m;
}

template <typename Scalar>
OperatorT<Scalar> kron(const OperatorT<Scalar>& a, const OperatorT<Scalar>& b) {
  OperatorT<Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

/// Full operator of a single- or singly-controlled gate on nq qubits, ordered
/// q_{n-1} ⊗ … ⊗ q_0; controlled gates are |0⟩⟨0|_c ⊗ I + |1⟩⟨1|_c ⊗ U.
template <typename Scalar>
OperatorT<Scalar> layer_operator(unsigned nq, const Matrix2T<Scalar>& u, unsigned target,
                                 std::optional<unsigned> control = std::nullopt) {
  using Op = OperatorT<Scalar>;
  const Op id = Op::Identity(2, 2);
  Op p0 = Op::Zero(2, 2), p1 = Op::Zero(2, 2);
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  auto product = [&](bool control_set) {
    Op acc = Op::Identity(1, 1);
    for (int q = static_cast<int>(nq) - 1; q >= 0; --q) {
      const auto uq = static_cast<unsigned>(q);
      Op factor = id;
      if (control && uq == *control) factor = control_set ? p1 : p0;
      if (uq == target && (!control || control_set)) factor = u;
      acc = kron<Scalar>(acc, factor);
    }
    return acc;
  };
  if (!control) return product(true);
  return product(false) + product(true);
}

/// Evolves |0…0⟩ through one full-operator product per instruction, using
/// textbook gate matrices.
RefStateVector tensor_run(const isa::Program& program, AngleMode mode);

/// Largest entrywise |a - e^{iφ} b| after choosing φ from the largest entry of b.
template <typename Derived1, typename Derived2>
double max_deviation_up_to_phase(const Eigen::MatrixBase<Derived1>& a, const Eigen::MatrixBase<Derived2>& b) {
  Eigen::Index r = 0, c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  std::complex<double> phase = 1.0;
  if (std::abs(b(r, c)) > 0 && std::abs(a(r, c)) > 0) {
    phase = a(r, c) / b(r, c);
    phase /= std::abs(phase);
  }
  return (a - phase * b).cwiseAbs().maxCoeff();
}

}  // namespace amaretto::oracle
