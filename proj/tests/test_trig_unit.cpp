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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "amaretto/error.hpp"

using namespace amaretto;
using namespace amaretto::trig;

namespace {

constexpr std::int32_t kOne = 262144;  // 1.0 in Q2.18 and the angle span of θ/π = 1

const TrigUnit& default_tu() {
  static const TrigUnit tu;
  return tu;
}

std::pair<std::int32_t, std::int32_t> sc(std::int32_t a, const TrigUnit& tu = default_tu()) {
  std::int32_t s = 0, c = 0;
  tu.sincos_raw(a, s, c);
  return {s, c};
}

}  // namespace

TEST(TrigUnit, Examples) {
  const auto zero = default_tu().sincos(0);
  EXPECT_EQ(zero.sin.raw(), 0);
  EXPECT_EQ(zero.cos.raw(), kOne);

  // round(√2/2 · 2^18) = round(185363.8...) = 185364
  const auto eighth = default_tu().sincos(65536);
  EXPECT_EQ(eighth.sin.raw(), 185364);
  EXPECT_EQ(eighth.cos.raw(), 185364);

  const auto minus_one = default_tu().sincos(-kOne);
  EXPECT_LE(std::abs(minus_one.sin.raw()), 4);
  EXPECT_EQ(minus_one.cos.raw(), -kOne);
}

TEST(TrigUnit, FixedGateAnglesAreExact) {
  EXPECT_EQ(sc(kOne / 2), std::make_pair(kOne, 0));
  EXPECT_EQ(sc(-kOne / 2), std::make_pair(-kOne, 0));
  EXPECT_EQ(sc(-kOne), std::make_pair(0, -kOne));
  EXPECT_EQ(sc(kOne / 4), std::make_pair(185364, 185364));
  EXPECT_EQ(sc(-kOne / 4), std::make_pair(-185364, 185364));
}

TEST(TrigUnit, TableHoldsQuarterWave) {
  const auto table = default_tu().table();
  ASSERT_EQ(table.size(), 257u);
  EXPECT_EQ(table.front(), 0);
  EXPECT_EQ(table.back(), kOne);
  EXPECT_EQ(table[128], 185364);
  for (std::size_t k = 1; k < table.size(); ++k) EXPECT_GT(table[k], table[k - 1]);
  for (std::size_t k = 0; k < table.size(); ++k) {
    const double exact = std::sin(std::numbers::pi * static_cast<double>(k) / 512.0) * kOne;
    EXPECT_LE(std::abs(table[k] - exact), 0.5) << k;
  }
}

TEST(TrigUnit, SymmetriesHoldExactly) {
  for (std::int32_t a = -kOne + 1; a < kOne; ++a) {
    const auto [s, c] = sc(a);
    const auto [sn, cn] = sc(-a);
    ASSERT_EQ(sn, -s) << a;
    ASSERT_EQ(cn, c) << a;
    if (a > 0) ASSERT_EQ(sc(kOne - a).first, s) << a;  // sin(π - θ) = sin θ
    if (a >= -kOne / 2 && a < kOne / 2) ASSERT_EQ(c, sc(a + kOne / 2).first) << a;  // cos θ = sin(θ + π/2)
  }
}

TEST(TrigUnit, ExhaustiveSweepWithinBound) {
  const double bound = std::ldexp(1.0, -16);
  double max_sin = 0, max_cos = 0, min_norm = 2, max_norm = 0;
  for (std::int32_t a = -kOne; a < kOne; ++a) {
    const auto [s, c] = sc(a);
    const double x = std::numbers::pi * a / kOne;
    const double fs = std::ldexp(s, -18), fc = std::ldexp(c, -18);
    max_sin = std::max(max_sin, std::abs(fs - std::sin(x)));
    max_cos = std::max(max_cos, std::abs(fc - std::cos(x)));
    min_norm = std::min(min_norm, fs * fs + fc * fc);
    max_norm = std::max(max_norm, fs * fs + fc * fc);
  }
  EXPECT_LE(max_sin, bound);
  EXPECT_LE(max_cos, bound);
  // half an LSB from the rounded table node plus half from the output rounding
  EXPECT_LE(max_sin, std::ldexp(1.0, -18));
  EXPECT_LE(max_cos, std::ldexp(1.0, -18));
  EXPECT_GE(min_norm, 1 - std::ldexp(1.0, -14));
  EXPECT_LE(max_norm, 1 + std::ldexp(1.0, -14));

  const auto stats = sweep_errors(default_tu());
  EXPECT_EQ(stats.samples, 524288u);
  EXPECT_NEAR(stats.max_sin_error, max_sin, 1e-12);
  EXPECT_NEAR(stats.max_cos_error, max_cos, 1e-12);
  EXPECT_NEAR(stats.min_norm, min_norm, 1e-12);
}

TEST(TrigUnit, TaylorOrderMatters) {
  TrigConfig coarse;
  coarse.taylor_order = 0;
  const auto zeroth = sweep_errors(TrigUnit(coarse));
  EXPECT_GT(zeroth.max_sin_error, std::ldexp(1.0, -16));

  TrigConfig first;
  first.taylor_order = 1;
  const auto first_stats = sweep_errors(TrigUnit(first));
  EXPECT_LT(first_stats.max_sin_error, zeroth.max_sin_error);

  TrigConfig small_lut;
  small_lut.lut_addr_bits = 5;
  small_lut.taylor_order = 3;
  EXPECT_LE(sweep_errors(TrigUnit(small_lut)).max_sin_error, std::ldexp(1.0, -16));
}

TEST(TrigUnit, OtherFormats) {
  TrigConfig cfg;
  cfg.output = {2, 12};
  const TrigUnit tu(cfg);
  EXPECT_EQ(tu.table().back(), 4096);
  const auto stats = sweep_errors(tu);
  EXPECT_EQ(stats.samples, 8192u);
  EXPECT_LE(stats.max_sin_error, std::ldexp(1.0, -12));
  EXPECT_EQ(tu.sincos(1024).sin.raw(), 2896);  // round(√2/2 · 4096)
}

TEST(TrigUnit, RejectsBadInput) {
  EXPECT_THROW(default_tu().sincos(kOne), UsageError);
  EXPECT_THROW(default_tu().sincos(-kOne - 1), UsageError);
  TrigConfig bad;
  bad.lut_addr_bits = 0;
  EXPECT_THROW(TrigUnit{bad}, UsageError);
  bad = {};
  bad.output = {1, 18};
  EXPECT_THROW(TrigUnit{bad}, UsageError);
  bad = {};
  bad.lut_addr_bits = 18;
  EXPECT_THROW(TrigUnit{bad}, UsageError);
}
