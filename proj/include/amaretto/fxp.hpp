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

// Two's-complement fixed-point words with round-to-nearest-even products and
// saturating overflow. Every amplitude component and angle in the emulator is
// one of these.

#include <cstdint>
#include <string>

namespace amaretto::fxp {

/// Integer/fraction split of a fixed-point word. Total width is at most 32 bits.
struct FxFormat {
  int int_bits = 2;
  int frac_bits = 18;

  constexpr int width() const noexcept { return int_bits + frac_bits; }
  constexpr std::int64_t raw_min() const noexcept { return -(std::int64_t{1} << (width() - 1)); }
  constexpr std::int64_t raw_max() const noexcept { return (std::int64_t{1} << (width() - 1)) - 1; }
  /// Raw value of +1.0; may lie outside the range when int_bits == 1.
  constexpr std::int64_t one() const noexcept { return std::int64_t{1} << frac_bits; }
  constexpr bool fits(std::int64_t raw) const noexcept { return raw >= raw_min() && raw <= raw_max(); }

  /// Throws UsageError unless 1 <= int_bits, 0 <= frac_bits and width() <= 32.
  void validate() const;
  std::string to_string() const;

  friend constexpr bool operator==(const FxFormat&, const FxFormat&) = default;
};

inline constexpr FxFormat kDefaultFormat{2, 18};

/// Sticky saturation counter shared by a sequence of operations.
struct FxFlags {
  std::uint64_t saturations = 0;

  bool saturated() const noexcept { return saturations != 0; }
  void clear() noexcept { saturations = 0; }
};

class Fx {
 public:
  constexpr Fx() = default;

  /// Throws UsageError when raw does not fit the format.
  static Fx from_raw(std::int64_t raw, FxFormat fmt);

  constexpr std::int32_t raw() const noexcept { return raw_; }
  constexpr const FxFormat& format() const noexcept { return fmt_; }
  double to_double() const noexcept;

  friend constexpr bool operator==(const Fx&, const Fx&) = default;

 private:
  constexpr Fx(std::int32_t raw, FxFormat fmt) : raw_(raw), fmt_(fmt) {}
  friend Fx make_unchecked(std::int64_t raw, FxFormat fmt) noexcept;

  std::int32_t raw_ = 0;
  FxFormat fmt_ = kDefaultFormat;
};

// Raw-level primitives. The Fx operations below are thin wrappers over these,
// and the emulator inner loop calls them directly on stored words.

/// value / 2^shift rounded to nearest, ties to even. shift may be zero.
std::int64_t round_shift_rne(std::int64_t value, int shift) noexcept;

/// Clamps to the representable range, counting a saturation when it clamps.
std::int32_t saturate(std::int64_t raw, const FxFormat& fmt, FxFlags& flags) noexcept;

/// Full-width product followed by a single RNE rounding and saturation.
inline std::int32_t mul_rne_raw(std::int32_t a, std::int32_t b, const FxFormat& fmt,
                                FxFlags& flags) noexcept {
  return saturate(round_shift_rne(std::int64_t{a} * b, fmt.frac_bits), fmt, flags);
}

inline std::int32_t add_raw(std::int32_t a, std::int32_t b, const FxFormat& fmt,
                            FxFlags& flags) noexcept {
  return saturate(std::int64_t{a} + b, fmt, flags);
}

/// Nearest representable value to x, ties to even; out-of-range values (and NaN,
/// which maps to zero) raise the saturation count.
Fx encode(double x, const FxFormat& fmt, FxFlags& flags);
Fx encode(double x, const FxFormat& fmt);
double decode(const Fx& a) noexcept;

// Binary operations require both operands to share a format (UsageError otherwise).
Fx mul_rne(const Fx& a, const Fx& b, FxFlags& flags);
Fx mul_rne(const Fx& a, const Fx& b);
Fx add(const Fx& a, const Fx& b, FxFlags& flags);
Fx add(const Fx& a, const Fx& b);
Fx sub(const Fx& a, const Fx& b, FxFlags& flags);
Fx sub(const Fx& a, const Fx& b);
Fx neg(const Fx& a, FxFlags& flags);
Fx neg(const Fx& a);

}  // namespace amaretto::fxp
