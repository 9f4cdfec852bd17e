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

// Fixed-point emulator core: state storage, butterfly pair selection, the
// per-opcode gate datapath and the closed-form pipeline timing model.

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "amaretto/fxp.hpp"
#include "amaretto/isa.hpp"
#include "amaretto/trig_unit.hpp"

namespace amaretto::emu {

// ---------------------------------------------------------------------------
// Gate table
//
// Every gate updates a butterfly pair (c_i, c_j) as
//
//   Re c_i' = s_1·sin θ + k_1·cos θ      Im c_i' = s_2·sin θ + k_2·cos θ
//   Re c_j' = s_3·sin θ + k_3·cos θ      Im c_j' = s_4·sin θ + k_4·cos θ
//
// where each s_n, k_n selects zero or a signed real/imaginary input word, and
// θ is the instruction immediate. A hold flag passes an amplitude through
// unchanged, which the two-term form cannot express when sin θ and cos θ are
// both nonzero (phase gates).

enum class Operand : std::uint8_t { Zero, ReI, ImI, ReJ, ImJ };

struct Source {
  Operand operand = Operand::Zero;
  bool negate = false;

  friend constexpr bool operator==(const Source&, const Source&) = default;
};

struct OutputTerm {
  Source sin_src;
  Source cos_src;

  friend constexpr bool operator==(const OutputTerm&, const OutputTerm&) = default;
};

struct GateTableEntry {
  OutputTerm re_i;
  OutputTerm im_i;
  OutputTerm re_j;
  OutputTerm im_j;
  bool hold_i = false;
  bool hold_j = false;

  friend constexpr bool operator==(const GateTableEntry&, const GateTableEntry&) = default;
};

using GateTable = std::array<GateTableEntry, isa::kOpcodeCount>;

/// The normative table; entries for SET_NQ and READ_STATE are unused.
const GateTable& standard_gate_table();

// ---------------------------------------------------------------------------
// Butterfly pair selection

struct IndexPair {
  std::uint64_t i = 0;
  std::uint64_t j = 0;

  friend constexpr bool operator==(const IndexPair&, const IndexPair&) = default;
};

/// Pairs (i, i + 2^target) with bit `target` of i clear, ascending in i. With a
/// control, only pairs whose control bit is set.
class ButterflyPairs {
 public:
  /// Throws UsageError when target/control are out of range or coincide.
  ButterflyPairs(unsigned nq, unsigned target, std::optional<unsigned> control = std::nullopt);

  std::uint64_t size() const noexcept { return count_; }

  IndexPair operator[](std::uint64_t k) const noexcept {
    std::uint64_t i = k;
    for (const auto& bit : inserted_) {
      const std::uint64_t low = i & ((std::uint64_t{1} << bit.position) - 1);
      i = ((i >> bit.position) << (bit.position + 1)) | (std::uint64_t{bit.value} << bit.position) | low;
    }
    return {i, i | target_bit_};
  }

  class iterator {
   public:
    using value_type = IndexPair;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(const ButterflyPairs* owner, std::uint64_t k) : owner_(owner), k_(k) {}
    IndexPair operator*() const noexcept { return (*owner_)[k_]; }
    iterator& operator++() noexcept {
      ++k_;
      return *this;
    }
    iterator operator++(int) noexcept {
      auto copy = *this;
      ++k_;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) noexcept { return a.k_ == b.k_; }

   private:
    const ButterflyPairs* owner_ = nullptr;
    std::uint64_t k_ = 0;
  };

  iterator begin() const noexcept { return {this, 0}; }
  iterator end() const noexcept { return {this, count_}; }

 private:
  struct InsertedBit {
    unsigned position;
    unsigned value;
  };

  std::vector<InsertedBit> inserted_;  // ascending positions
  std::uint64_t target_bit_ = 0;
  std::uint64_t count_ = 0;
};

inline ButterflyPairs butterfly_pairs(unsigned nq, unsigned target, std::optional<unsigned> control = std::nullopt) {
  return ButterflyPairs(nq, target, control);
}

// ---------------------------------------------------------------------------
// State storage

/// 2^nq amplitudes stored as separate real and imaginary raw words.
class FxStateVector {
 public:
  /// Initialised to |0…0⟩.
  FxStateVector(unsigned nq, fxp::FxFormat fmt = fxp::kDefaultFormat);

  unsigned qubits() const noexcept { return nq_; }
  std::uint64_t size() const noexcept { return re_.size(); }
  const fxp::FxFormat& format() const noexcept { return fmt_; }

  std::span<std::int32_t> re() noexcept { return re_; }
  std::span<std::int32_t> im() noexcept { return im_; }
  std::span<const std::int32_t> re() const noexcept { return re_; }
  std::span<const std::int32_t> im() const noexcept { return im_; }

  fxp::Fx re_at(std::uint64_t k) const { return fxp::Fx::from_raw(re_.at(k), fmt_); }
  fxp::Fx im_at(std::uint64_t k) const { return fxp::Fx::from_raw(im_.at(k), fmt_); }
  std::complex<double> amplitude(std::uint64_t k) const;

  /// Number of stored words (real plus imaginary) and their width.
  std::uint64_t storage_words() const noexcept { return re_.size() + im_.size(); }
  int word_bits() const noexcept { return fmt_.width(); }

  double norm_squared() const noexcept;

 private:
  unsigned nq_;
  fxp::FxFormat fmt_;
  std::vector<std::int32_t> re_;
  std::vector<std::int32_t> im_;
};

// ---------------------------------------------------------------------------
// Timing

struct TimingModel {
  int n_pipe = 5;
  double clock_period_s = 10e-9;  // 100 MHz

  /// Smallest qubit count that keeps the pipeline full: ceil(log2(n_pipe)) + 2.
  unsigned nq_min() const noexcept;
};

struct TimingEstimate {
  std::uint64_t cycles = 0;
  double seconds = 0.0;
};

/// One pair per cycle over 2^max(nq, nq_min) amplitudes; a controlled gate
/// touches half as many pairs.
std::uint64_t gate_cycles(unsigned nq, bool controlled, const TimingModel& model) noexcept;

/// Per-gate cycles plus a single (n_pipe - 1) pipeline fill.
TimingEstimate cycle_count(unsigned nq, std::uint64_t uncontrolled_gates, std::uint64_t controlled_gates,
                           const TimingModel& model = {});
TimingEstimate cycle_count(unsigned nq, const std::vector<bool>& controlled, const TimingModel& model = {});
TimingEstimate cycle_count(const isa::Program& program, const TimingModel& model = {});

// ---------------------------------------------------------------------------
// Execution

/// Applies one g-type instruction in place; one sincos per instruction.
/// Saturations accumulate in `flags`. Returns the gate's cycle cost.
std::uint64_t apply_gate(FxStateVector& state, const isa::Instruction& ins, const trig::TrigUnit& tu,
                         const GateTable& table, fxp::FxFlags& flags, const TimingModel& model = {});

struct SaturationEvent {
  std::size_t instruction = 0;
  std::uint64_t count = 0;
};

struct EmulationReport {
  FxStateVector state{1};
  TimingEstimate timing;
  std::size_t gates_executed = 0;
  std::vector<SaturationEvent> saturation_log;
  /// Filled in by verification.
  std::optional<double> max_gcd;
  std::optional<bool> gcd_pass;
};

class Emulator {
 public:
  explicit Emulator(const trig::TrigUnit& tu, GateTable table = standard_gate_table(), TimingModel timing = {});

  /// Executes SET_NQ, the gates in order, and READ_STATE. Throws ProgramError
  /// on an invalid instruction stream and UsageError when the trig unit's
  /// format differs from the program's amplitude format.
  EmulationReport run(const isa::Program& program) const;

  const GateTable& table() const noexcept { return table_; }
  const TimingModel& timing() const noexcept { return timing_; }

 private:
  const trig::TrigUnit* tu_;
  GateTable table_;
  TimingModel timing_;
};

struct StateRow {
  std::uint64_t index = 0;
  std::int32_t re_raw = 0;
  std::int32_t im_raw = 0;
};

/// Ascending basis-state order, 2^nq rows.
std::vector<StateRow> read_state(const EmulationReport& report);

}  // namespace amaretto::emu
