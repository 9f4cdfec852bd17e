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

#include "amaretto/trig_unit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "amaretto/error.hpp"

namespace amaretto::trig {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

std::int64_t mul_shift_rne(std::int64_t a, std::int64_t b, int shift) noexcept {
  const __int128 p = static_cast<__int128>(a) * b;
  if (shift == 0) return static_cast<std::int64_t>(p);
  const __int128 q = p >> shift;
  const __int128 rem = p - (q << shift);
  const __int128 half = static_cast<__int128>(1) << (shift - 1);
  if (rem > half || (rem == half && (q & 1) != 0)) return static_cast<std::int64_t>(q + 1);
  return static_cast<std::int64_t>(q);
}

std::int64_t div_rne(std::int64_t value, std::int64_t divisor) noexcept {
  std::int64_t q = value / divisor;
  std::int64_t rem = value % divisor;
  if (rem < 0) {
    rem += divisor;
    --q;
  }
  if (2 * rem > divisor || (2 * rem == divisor && (q & 1) != 0)) ++q;
  return q;
}

}  // namespace

void TrigConfig::validate() const {
  output.validate();
  if (output.int_bits < 2) throw UsageError("trig output needs int_bits >= 2 to represent 1.0");
  if (lut_addr_bits < 1 || lut_addr_bits > 20) throw UsageError("lut_addr_bits must be in [1, 20]");
  if (frac_bits() < lut_addr_bits + 1) throw UsageError("frac_bits must exceed lut_addr_bits");
  if (taylor_order < 0 || taylor_order > 8) throw UsageError("taylor_order must be in [0, 8]");
  if (guard_bits < 0 || frac_bits() + guard_bits > 40) throw UsageError("guard_bits out of range");
}

TrigUnit::TrigUnit(TrigConfig cfg) : cfg_(cfg) {
  cfg_.validate();
  const int f = cfg_.frac_bits();
  const std::size_t intervals = std::size_t{1} << cfg_.lut_addr_bits;
  table_.resize(intervals + 1);
  for (std::size_t k = 0; k <= intervals; ++k) {
    const long double x = kPi * static_cast<long double>(k) / static_cast<long double>(2 * intervals);
    table_[k] = static_cast<std::int32_t>(fxp::encode(static_cast<double>(std::sin(x)), cfg_.output).raw());
  }
  table_.front() = 0;
  table_.back() = static_cast<std::int32_t>(cfg_.output.one());
  pi_internal_ = std::llround(std::ldexp(kPi, f + cfg_.guard_bits));
}

std::int32_t TrigUnit::quarter_sine(std::int64_t x) const {
  const int f = cfg_.frac_bits();
  const int g = cfg_.guard_bits;
  const int internal = f + g;
  const int residual_bits = f - 1 - cfg_.lut_addr_bits;
  const std::int64_t intervals = std::int64_t{1} << cfg_.lut_addr_bits;

  const std::int64_t node = x >> residual_bits;
  const std::int64_t delta = x - (node << residual_bits);
  const std::int64_t sin_node = std::int64_t{table_[static_cast<std::size_t>(node)]} << g;
  if (delta == 0) return table_[static_cast<std::size_t>(node)];
  const std::int64_t cos_node = std::int64_t{table_[static_cast<std::size_t>(intervals - node)]} << g;

  // h = π·δ in radians at `internal` fraction bits.
  const std::int64_t h = mul_shift_rne(pi_internal_, delta, f);
  const std::int64_t derivative[4] = {sin_node, cos_node, -sin_node, -cos_node};
  std::int64_t sum = sin_node;
  std::int64_t power = std::int64_t{1} << internal;  // h^n / n!
  for (int n = 1; n <= cfg_.taylor_order; ++n) {
    power = div_rne(mul_shift_rne(power, h, internal), n);
    sum += mul_shift_rne(power, derivative[n % 4], internal);
  }
  const std::int64_t out = fxp::round_shift_rne(sum, g);
  return static_cast<std::int32_t>(std::clamp<std::int64_t>(out, 0, cfg_.output.one()));
}

std::int32_t TrigUnit::sine_of(std::uint32_t turn_index) const {
  const int f = cfg_.frac_bits();
  const std::uint32_t quarter = std::uint32_t{1} << (f - 1);
  const std::uint32_t quadrant = (turn_index >> (f - 1)) & 3u;
  const std::uint32_t residue = turn_index & (quarter - 1);
  switch (quadrant) {
    case 0: return quarter_sine(residue);
    case 1: return quarter_sine(quarter - residue);
    case 2: return -quarter_sine(residue);
    default: return -quarter_sine(quarter - residue);
  }
}

void TrigUnit::sincos_raw(std::int32_t angle_raw, std::int32_t& sin_raw, std::int32_t& cos_raw) const {
  const int f = cfg_.frac_bits();
  const std::uint32_t turn_mask = (std::uint32_t{1} << (f + 1)) - 1;
  const auto u = static_cast<std::uint32_t>(angle_raw) & turn_mask;
  sin_raw = sine_of(u);
  cos_raw = sine_of((u + (std::uint32_t{1} << (f - 1))) & turn_mask);
}

SinCos TrigUnit::sincos(std::int32_t angle_raw) const {
  const fxp::FxFormat angle_fmt{1, cfg_.frac_bits()};
  if (!angle_fmt.fits(angle_raw)) {
    throw UsageError("angle raw " + std::to_string(angle_raw) + " does not fit " + angle_fmt.to_string());
  }
  std::int32_t s = 0, c = 0;
  sincos_raw(angle_raw, s, c);
  return {fxp::Fx::from_raw(s, cfg_.output), fxp::Fx::from_raw(c, cfg_.output)};
}

TrigErrorStats sweep_errors(const TrigUnit& tu) {
  const int f = tu.config().frac_bits();
  const std::int64_t lo = -(std::int64_t{1} << f);
  const std::int64_t hi = std::int64_t{1} << f;
  TrigErrorStats stats;
  stats.min_norm = 2.0;
  for (std::int64_t raw = lo; raw < hi; ++raw) {
    std::int32_t s = 0, c = 0;
    tu.sincos_raw(static_cast<std::int32_t>(raw), s, c);
    const long double angle = kPi * std::ldexp(static_cast<long double>(raw), -f);
    const long double sv = std::ldexp(static_cast<long double>(s), -f);
    const long double cv = std::ldexp(static_cast<long double>(c), -f);
    const auto es = static_cast<double>(std::fabs(sv - std::sin(angle)));
    const auto ec = static_cast<double>(std::fabs(cv - std::cos(angle)));
    if (es > stats.max_sin_error) {
      stats.max_sin_error = es;
      stats.worst_sin_input = static_cast<std::int32_t>(raw);
    }
    if (ec > stats.max_cos_error) {
      stats.max_cos_error = ec;
      stats.worst_cos_input = static_cast<std::int32_t>(raw);
    }
    const auto norm = static_cast<double>(sv * sv + cv * cv);
    stats.min_norm = std::min(stats.min_norm, norm);
    stats.max_norm = std::max(stats.max_norm, norm);
    ++stats.samples;
  }
  return stats;
}

}  // namespace amaretto::trig
