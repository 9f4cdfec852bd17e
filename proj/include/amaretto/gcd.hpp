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

// Great-circle distance between two state vectors.
//
// Both vectors are first rotated by a global phase so that the amplitude at a
// common anchor index (the largest-magnitude amplitude of the reference) is
// real and non-negative. Each amplitude c then maps to the unit-sphere point
// with colatitude 2·acos(|c|) and longitude arg(c): |c| = 1 is the north pole,
// c = 0 the south pole whatever its phase. Distances are central angles from
// the haversine formula, in [0, π].

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "amaretto/emulator.hpp"
#include "amaretto/oracle.hpp"

namespace amaretto::harness {

inline constexpr double kDefaultGcdThreshold = 0.05;

/// Central angle between the sphere points of two (already aligned) amplitudes.
double amplitude_distance(std::complex<double> a, std::complex<double> b) noexcept;

struct GcdReport {
  std::string circuit_id;
  std::string mode;
  unsigned qubits = 0;
  std::size_t gate_count = 0;
  std::uint64_t cycles = 0;
  double seconds = 0.0;
  std::uint64_t saturations = 0;
  std::vector<double> distances;
  double max_distance = 0.0;
  std::uint64_t worst_index = 0;
  double threshold = kDefaultGcdThreshold;
  bool pass = true;
};

/// Throws UsageError when the dimensions differ.
GcdReport gcd_distance(const oracle::RefStateVector& ref, const oracle::RefStateVector& test,
                       double threshold = kDefaultGcdThreshold);
GcdReport gcd_distance(const oracle::RefStateVector& ref, const emu::FxStateVector& test,
                       double threshold = kDefaultGcdThreshold);

/// Converts a fixed-point state to complex doubles.
oracle::RefStateVector to_reference(const emu::FxStateVector& state);

}  // namespace amaretto::harness
