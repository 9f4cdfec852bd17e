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

// Textbook unitaries of the standard gate library, written out from their
// matrix definitions (not from the library's gate bodies). Local index bit m
// is the state of the gate's m-th argument.

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace amaretto::textbook {

using Mat = Eigen::MatrixXcd;

struct LibraryGate {
  std::string name;
  int params = 0;
  int qubits = 1;
};

/// Every qelib1 gate acting on at most three qubits, plus the builtins U, CX.
const std::vector<LibraryGate>& small_library_gates();

/// Local 2^k × 2^k matrix of a gate for the given parameters.
Mat textbook_matrix(const std::string& name, const std::vector<double>& params);

/// Embeds a local matrix on `qubits` (argument m -> qubit qubits[m]) of an
/// nq-qubit register, identity elsewhere.
Mat embed(const Mat& local, const std::vector<unsigned>& qubits, unsigned nq);

/// Largest |a - e^{iφ} b| over entries, with φ fitted on the largest entry.
double phase_distance(const Mat& a, const Mat& b);

}  // namespace amaretto::textbook
