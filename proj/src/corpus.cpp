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

#include "amaretto/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "amaretto/error.hpp"

namespace amaretto::harness {

namespace {

// std::mt19937_64 output is fully specified; the standard distributions are
// not, so draws are mapped by hand to keep corpora identical across toolchains.
std::uint64_t draw_index(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

double draw_angle(std::mt19937_64& rng) {
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
  return (2.0 * unit - 1.0) * 2.0 * std::numbers::pi;
}

std::string angle_text(double a) {
  std::ostringstream os;
  os << std::setprecision(17) << a;
  return os.str();
}

std::ostringstream header(unsigned n, const std::string& title) {
  std::ostringstream os;
  os << "// " << title << "\n"
     << "OPENQASM 2.0;\n"
     << "include \"qelib1.inc\";\n"
     << "qreg q[" << n << "];\n"
     << "creg c[" << n << "];\n";
  return os;
}

std::pair<unsigned, unsigned> draw_pair(std::mt19937_64& rng, unsigned n) {
  const auto a = static_cast<unsigned>(draw_index(rng, n));
  auto b = static_cast<unsigned>(draw_index(rng, n - 1));
  if (b >= a) ++b;
  return {a, b};
}

}  // namespace

std::string ghz_qasm(unsigned n) {
  auto os = header(n, "GHZ state on " + std::to_string(n) + " qubits");
  os << "h q[0];\n";
  for (unsigned k = 1; k < n; ++k) os << "cx q[" << k - 1 << "],q[" << k << "];\n";
  os << "barrier q;\n"
     << "measure q -> c;\n";
  return os.str();
}

std::string qft_qasm(unsigned n, std::uint64_t input) {
  auto os = header(n, "QFT on " + std::to_string(n) + " qubits, input |" + std::to_string(input) + ">");
  for (unsigned k = 0; k < n; ++k) {
    if ((input >> k) & 1u) os << "x q[" << k << "];\n";
  }
  for (int j = static_cast<int>(n) - 1; j >= 0; --j) {
    os << "h q[" << j << "];\n";
    for (int k = j - 1; k >= 0; --k) {
      os << "cu1(pi/" << (std::uint64_t{1} << (j - k)) << ") q[" << k << "],q[" << j << "];\n";
    }
  }
  for (unsigned k = 0; k < n / 2; ++k) os << "swap q[" << k << "],q[" << n - 1 - k << "];\n";
  return os.str();
}

std::string w_state_qasm(unsigned n) {
  auto os = header(n, "W state on " + std::to_string(n) + " qubits");
  os << "x q[0];\n";
  for (unsigned k = 0; k + 1 < n; ++k) {
    const double theta = 2.0 * std::acos(std::sqrt(1.0 / static_cast<double>(n - k)));
    os << "cry(" << angle_text(theta) << ") q[" << k << "],q[" << k + 1 << "];\n";
    os << "cx q[" << k + 1 << "],q[" << k << "];\n";
  }
  return os.str();
}

std::string random_clifford_t_qasm(unsigned n, unsigned gates, std::mt19937_64& rng) {
  static const char* one_qubit[] = {"h", "s", "sdg", "t", "tdg", "x", "y", "z"};
  static const char* two_qubit[] = {"cx", "cz", "cy"};
  auto os = header(n, "random Clifford+T circuit, " + std::to_string(gates) + " gates");
  for (unsigned g = 0; g < gates; ++g) {
    if (n >= 2 && draw_index(rng, 3) == 0) {
      const auto [a, b] = draw_pair(rng, n);
      os << two_qubit[draw_index(rng, 3)] << " q[" << a << "],q[" << b << "];\n";
    } else {
      os << one_qubit[draw_index(rng, 8)] << " q[" << draw_index(rng, n) << "];\n";
    }
  }
  return os.str();
}

std::string random_rotation_qasm(unsigned n, unsigned gates, std::mt19937_64& rng) {
  auto os = header(n, "random rotation circuit, " + std::to_string(gates) + " gates");
  for (unsigned g = 0; g < gates; ++g) {
    const auto kind = draw_index(rng, n >= 2 ? 10 : 6);
    if (kind < 6) {
      const auto q = draw_index(rng, n);
      switch (kind) {
        case 0: os << "rx(" << angle_text(draw_angle(rng)) << ") q[" << q << "];\n"; break;
        case 1: os << "ry(" << angle_text(draw_angle(rng)) << ") q[" << q << "];\n"; break;
        case 2: os << "rz(" << angle_text(draw_angle(rng)) << ") q[" << q << "];\n"; break;
        case 3: os << "p(" << angle_text(draw_angle(rng)) << ") q[" << q << "];\n"; break;
        case 4: os << "u2(" << angle_text(draw_angle(rng)) << "," << angle_text(draw_angle(rng)) << ") q[" << q << "];\n"; break;
        default:
          os << "u3(" << angle_text(draw_angle(rng)) << "," << angle_text(draw_angle(rng)) << ","
             << angle_text(draw_angle(rng)) << ") q[" << q << "];\n";
          break;
      }
      continue;
    }
    const auto [a, b] = draw_pair(rng, n);
    switch (kind) {
      case 6: os << "cx q[" << a << "],q[" << b << "];\n"; break;
      case 7: os << "crz(" << angle_text(draw_angle(rng)) << ") q[" << a << "],q[" << b << "];\n"; break;
      case 8: os << "cu1(" << angle_text(draw_angle(rng)) << ") q[" << a << "],q[" << b << "];\n"; break;
      default: os << "rzz(" << angle_text(draw_angle(rng)) << ") q[" << a << "],q[" << b << "];\n"; break;
    }
  }
  return os.str();
}

std::vector<CorpusEntry> generate_corpus(std::uint64_t seed, const CorpusSpec& spec) {
  if (spec.min_qubits < 1 || spec.max_qubits < spec.min_qubits) throw UsageError("invalid corpus qubit range");
  std::mt19937_64 rng(seed);
  std::vector<CorpusEntry> out;
  auto in_range = [&](unsigned n) { return n >= spec.min_qubits && n <= spec.max_qubits; };
  auto name = [](const char* family, unsigned n) {
    std::ostringstream os;
    os << family << '_' << std::setw(2) << std::setfill('0') << n;
    return os.str();
  };
  auto random_gates = [&](unsigned n) { return std::min(spec.max_random_gates, spec.random_gates_per_qubit * n + 4); };

  for (unsigned n = 1; n <= 16; ++n) {
    if (in_range(n)) out.push_back({name("ghz", n), "ghz", n, ghz_qasm(n)});
  }
  for (unsigned n : {1u, 2u, 3u, 4u, 5u, 6u, 7u, 8u, 10u, 12u, 14u, 16u}) {
    const std::uint64_t input = rng() & ((std::uint64_t{1} << n) - 1);
    if (in_range(n)) out.push_back({name("qft", n), "qft", n, qft_qasm(n, input)});
  }
  for (unsigned n : {1u, 2u, 3u, 4u, 5u, 6u, 8u, 10u, 12u, 16u}) {
    if (in_range(n)) out.push_back({name("w_state", n), "w_state", n, w_state_qasm(n)});
  }
  for (unsigned n : {1u, 2u, 3u, 4u, 5u, 6u, 7u, 8u, 9u, 10u, 12u, 14u, 16u}) {
    std::mt19937_64 local(rng());
    if (in_range(n)) out.push_back({name("clifford_t", n), "clifford_t", n, random_clifford_t_qasm(n, random_gates(n), local)});
  }
  for (unsigned n : {1u, 2u, 3u, 4u, 5u, 6u, 7u, 8u, 9u, 10u, 12u, 14u, 16u}) {
    std::mt19937_64 local(rng());
    if (in_range(n)) out.push_back({name("rotation", n), "rotation", n, random_rotation_qasm(n, random_gates(n), local)});
  }
  return out;
}

void write_corpus(const std::vector<CorpusEntry>& corpus, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& e : corpus) {
    const auto path = dir / (e.name + ".qasm");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << e.qasm;
  }
}

}  // namespace amaretto::harness
