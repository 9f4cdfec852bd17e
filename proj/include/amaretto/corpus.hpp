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

// Deterministic OpenQASM 2.0 verification corpus: GHZ, QFT, W-state, random
// Clifford+T and random rotation circuits across a range of register sizes.
// The same seed always yields byte-identical sources.

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace amaretto::harness {

struct CorpusSpec {
  unsigned min_qubits = 1;
  unsigned max_qubits = 16;
  unsigned random_gates_per_qubit = 10;
  unsigned max_random_gates = 200;
};

struct CorpusEntry {
  std::string name;  // also the file stem
  std::string family;
  unsigned qubits = 0;
  std::string qasm;
};

std::string ghz_qasm(unsigned n);
/// QFT applied to the basis state |input⟩.
std::string qft_qasm(unsigned n, std::uint64_t input);
std::string w_state_qasm(unsigned n);
std::string random_clifford_t_qasm(unsigned n, unsigned gates, std::mt19937_64& rng);
std::string random_rotation_qasm(unsigned n, unsigned gates, std::mt19937_64& rng);

std::vector<CorpusEntry> generate_corpus(std::uint64_t seed, const CorpusSpec& spec = {});

/// Writes <dir>/<name>.qasm for every entry, creating dir if needed.
void write_corpus(const std::vector<CorpusEntry>& corpus, const std::filesystem::path& dir);

}  // namespace amaretto::harness
