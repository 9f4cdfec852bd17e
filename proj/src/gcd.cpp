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

#include "amaretto/gcd.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "amaretto/error.hpp"

namespace amaretto::harness {

namespace {

double haversine(double x) noexcept {
  const double s = std::sin(0.5 * x);
  return s * s;
}

std::complex<double> unit_phase_to_real(std::complex<double> c) noexcept {
  const double m = std::abs(c);
  return m > 0 ? std::conj(c) / m : std::complex<double>(1.0);
}

}  // namespace

double amplitude_distance(std::complex<double> a, std::complex<double> b) noexcept {
  const double ma = std::clamp(std::abs(a), 0.0, 1.0);
  const double mb = std::clamp(std::abs(b), 0.0, 1.0);
  const double colat_a = 2.0 * std::acos(ma);
  const double colat_b = 2.0 * std::acos(mb);
  // sin(2·acos m) = 2m·sqrt(1 - m²): exactly zero at both poles, so the
  // undefined phase of a zero (or unit) amplitude never contributes.
  const double sin_a = 2.0 * ma * std::sqrt(1.0 - ma * ma);
  const double sin_b = 2.0 * mb * std::sqrt(1.0 - mb * mb);
  const double h = haversine(colat_b - colat_a) + sin_a * sin_b * haversine(std::arg(b) - std::arg(a));
  return 2.0 * std::asin(std::sqrt(std::clamp(h, 0.0, 1.0)));
}

GcdReport gcd_distance(const oracle::RefStateVector& ref, const oracle::RefStateVector& test, double threshold) {
  if (ref.size() != test.size()) {
    throw UsageError("state vectors differ in dimension: " + std::to_string(ref.size()) + " vs " +
                     std::to_string(test.size()));
  }
  GcdReport report;
  report.threshold = threshold;
  report.qubits = static_cast<unsigned>(std::countr_zero(static_cast<std::uint64_t>(ref.size())));
  if (ref.size() == 0) return report;

  Eigen::Index anchor = 0;
  ref.cwiseAbs().maxCoeff(&anchor);
  const std::complex<double> rot_ref = unit_phase_to_real(ref(anchor));
  const std::complex<double> rot_test = unit_phase_to_real(test(anchor));

  report.distances.resize(static_cast<std::size_t>(ref.size()));
  for (Eigen::Index k = 0; k < ref.size(); ++k) {
    const double d = amplitude_distance(ref(k) * rot_ref, test(k) * rot_test);
    report.distances[static_cast<std::size_t>(k)] = d;
    if (d > report.max_distance) {
      report.max_distance = d;
      report.worst_index = static_cast<std::uint64_t>(k);
    }
  }
  report.pass = report.max_distance < threshold;
  return report;
}

oracle::RefStateVector to_reference(const emu::FxStateVector& state) {
  oracle::RefStateVector v(static_cast<Eigen::Index>(state.size()));
  for (std::uint64_t k = 0; k < state.size(); ++k) v(static_cast<Eigen::Index>(k)) = state.amplitude(k);
  return v;
}

GcdReport gcd_distance(const oracle::RefStateVector& ref, const emu::FxStateVector& test, double threshold) {
  return gcd_distance(ref, to_reference(test), threshold);
}

}  // namespace amaretto::harness
