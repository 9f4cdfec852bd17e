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

// Fixed-point sine/cosine generator: quadrant reduction on the top two angle
// bits, a quarter-wave sine table indexed by the next lut_addr_bits bits, and a
// Taylor expansion around the table node over the remaining residual bits.
// Cosine reuses the same path with the argument advanced by a quarter turn, so
// sin(-a) = -sin(a), cos(-a) = cos(a) and the quadrant reflections hold
// exactly.

#include <cstdint>
#include <span>
#include <vector>

#include "amaretto/fxp.hpp"

namespace amaretto::trig {

struct TrigConfig {
  int lut_addr_bits = 8;
  int taylor_order = 2;
  /// Output format; its frac_bits also fixes the angle format (1 + frac_bits bits, θ/π).
  fxp::FxFormat output = fxp::kDefaultFormat;
  /// Extra fraction bits carried through the Taylor sum before the final rounding.
  int guard_bits = 10;

  int frac_bits() const noexcept { return output.frac_bits; }
  /// Throws UsageError on an unusable combination.
  void validate() const;
};

struct SinCos {
  fxp::Fx sin;
  fxp::Fx cos;
};

class TrigUnit {
 public:
  explicit TrigUnit(TrigConfig cfg = {});

  /// angle_raw is θ/π as a two's-complement word with frac_bits fraction bits,
  /// in [-2^frac_bits, 2^frac_bits). Returns approximations of sin θ and cos θ.
  SinCos sincos(std::int32_t angle_raw) const;

  /// Raw-word variant used by the emulator inner loop.
  void sincos_raw(std::int32_t angle_raw, std::int32_t& sin_raw, std::int32_t& cos_raw) const;

  const TrigConfig& config() const noexcept { return cfg_; }
  /// Quarter-wave table: 2^lut_addr_bits intervals, so 2^lut_addr_bits + 1 nodes
  /// from sin(0) to sin(π/2), each rounded to frac_bits.
  std::span<const std::int32_t> table() const noexcept { return table_; }

 private:
  /// sin(π·x·2^-frac_bits) for x in [0, 2^(frac_bits-1)].
  std::int32_t quarter_sine(std::int64_t x) const;
  std::int32_t sine_of(std::uint32_t turn_index) const;

  TrigConfig cfg_;
  std::vector<std::int32_t> table_;
  std::int64_t pi_internal_ = 0;
};

struct TrigErrorStats {
  std::size_t samples = 0;
  double max_sin_error = 0.0;
  double max_cos_error = 0.0;
  std::int32_t worst_sin_input = 0;
  std::int32_t worst_cos_input = 0;
  double min_norm = 0.0;  // min over inputs of sin² + cos²
  double max_norm = 0.0;
};

/// Exhaustive comparison of every representable angle against long double
/// sin/cos.
TrigErrorStats sweep_errors(const TrigUnit& tu);

}  // namespace amaretto::trig
