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

#include "amaretto/fxp.hpp"

#include <cmath>

#include "amaretto/error.hpp"

namespace amaretto::fxp {

void FxFormat::validate() const {
  if (int_bits < 1 || frac_bits < 0 || width() > 32) {
    throw UsageError("invalid fixed-point format " + to_string() + " (need int_bits >= 1, width <= 32)");
  }
}

std::string FxFormat::to_string() const {
  return "Q" + std::to_string(int_bits) + "." + std::to_string(frac_bits);
}

Fx make_unchecked(std::int64_t raw, FxFormat fmt) noexcept {
  return Fx(static_cast<std::int32_t>(raw), fmt);
}

Fx Fx::from_raw(std::int64_t raw, FxFormat fmt) {
  fmt.validate();
  if (!fmt.fits(raw)) {
    throw UsageError("raw value " + std::to_string(raw) + " does not fit " + fmt.to_string());
  }
  return make_unchecked(raw, fmt);
}

double Fx::to_double() const noexcept { return std::ldexp(static_cast<double>(raw_), -fmt_.frac_bits); }

std::int64_t round_shift_rne(std::int64_t value, int shift) noexcept {
  if (shift <= 0) return value;
  const std::int64_t floor_q = value >> shift;  // arithmetic shift: floor division
  const std::int64_t rem = value - (floor_q << shift);
  const std::int64_t half = std::int64_t{1} << (shift - 1);
  if (rem > half || (rem == half && (floor_q & 1) != 0)) return floor_q + 1;
  return floor_q;
}

std::int32_t saturate(std::int64_t raw, const FxFormat& fmt, FxFlags& flags) noexcept {
  if (raw > fmt.raw_max()) {
    ++flags.saturations;
    return static_cast<std::int32_t>(fmt.raw_max());
  }
  if (raw < fmt.raw_min()) {
    ++flags.saturations;
    return static_cast<std::int32_t>(fmt.raw_min());
  }
  return static_cast<std::int32_t>(raw);
}

namespace {

void require_same_format(const Fx& a, const Fx& b) {
  if (a.format() != b.format()) {
    throw UsageError("fixed-point format mismatch: " + a.format().to_string() + " vs " +
                     b.format().to_string());
  }
}

}  // namespace

Fx encode(double x, const FxFormat& fmt, FxFlags& flags) {
  fmt.validate();
  if (std::isnan(x)) {
    ++flags.saturations;
    return make_unchecked(0, fmt);
  }
  const double scaled = std::ldexp(x, fmt.frac_bits);
  // Anything beyond the range by more than one LSB saturates without the
  // int64 conversion below overflowing.
  if (scaled >= static_cast<double>(fmt.raw_max()) + 1.0) {
    ++flags.saturations;
    return make_unchecked(fmt.raw_max(), fmt);
  }
  if (scaled <= static_cast<double>(fmt.raw_min()) - 1.0) {
    ++flags.saturations;
    return make_unchecked(fmt.raw_min(), fmt);
  }
  const double lower = std::floor(scaled);
  const double residue = scaled - lower;  // exact: both operands share an exponent range
  auto raw = static_cast<std::int64_t>(lower);
  if (residue > 0.5 || (residue == 0.5 && (raw & 1) != 0)) ++raw;
  return make_unchecked(saturate(raw, fmt, flags), fmt);
}

Fx encode(double x, const FxFormat& fmt) {
  FxFlags ignored;
  return encode(x, fmt, ignored);
}

double decode(const Fx& a) noexcept { return a.to_double(); }

Fx mul_rne(const Fx& a, const Fx& b, FxFlags& flags) {
  require_same_format(a, b);
  return make_unchecked(mul_rne_raw(a.raw(), b.raw(), a.format(), flags), a.format());
}

Fx mul_rne(const Fx& a, const Fx& b) {
  FxFlags ignored;
  return mul_rne(a, b, ignored);
}

Fx add(const Fx& a, const Fx& b, FxFlags& flags) {
  require_same_format(a, b);
  return make_unchecked(add_raw(a.raw(), b.raw(), a.format(), flags), a.format());
}

Fx add(const Fx& a, const Fx& b) {
  FxFlags ignored;
  return add(a, b, ignored);
}

Fx sub(const Fx& a, const Fx& b, FxFlags& flags) {
  require_same_format(a, b);
  return make_unchecked(saturate(std::int64_t{a.raw()} - b.raw(), a.format(), flags), a.format());
}

Fx sub(const Fx& a, const Fx& b) {
  FxFlags ignored;
  return sub(a, b, ignored);
}

Fx neg(const Fx& a, FxFlags& flags) {
  return make_unchecked(saturate(-std::int64_t{a.raw()}, a.format(), flags), a.format());
}

Fx neg(const Fx& a) {
  FxFlags ignored;
  return neg(a, ignored);
}

}  // namespace amaretto::fxp
