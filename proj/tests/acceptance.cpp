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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances are pinned below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "amaretto/compiler.hpp"
#include "amaretto/corpus.hpp"
#include "amaretto/emulator.hpp"
#include "amaretto/fxp.hpp"
#include "amaretto/oracle.hpp"
#include "amaretto/trig_unit.hpp"
#include "amaretto/verify.hpp"
#include "textbook.hpp"

using namespace amaretto;
using isa::Instruction;
using isa::Opcode;

namespace {

constexpr double kGcdThreshold = 0.05;
constexpr double kCorpusSeconds = 120.0;
constexpr std::size_t kMinCorpus = 50;
constexpr unsigned kRandomGates16 = 200;
constexpr int kTimingTraces = 1000;
constexpr double kGateTableTol = 1e-12;
constexpr double kCompilerTol = 1e-9;
const double kTrigBound = std::ldexp(1.0, -16);
constexpr double kTrigSeconds = 10.0;
constexpr int kRoundTrips = 1000000;
constexpr unsigned kButterflyMaxQubits = 10;
constexpr double kOracleTol = 1e-12;
constexpr unsigned kOracleMaxQubits = 4;

constexpr double kPi = std::numbers::pi;
constexpr std::int32_t kOne = 262144;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s  %s  (%s)\n", id, pass ? "PASS" : "FAIL", title.c_str(), detail.c_str());
  std::fflush(stdout);
  failures += pass ? 0 : 1;
}

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

textbook::Mat expected_gate(Opcode op, double a) {
  switch (op) {
    case Opcode::P: return textbook::textbook_matrix("p", {kPi * a});
    case Opcode::RX: return textbook::textbook_matrix("rx", {2 * kPi * a});
    case Opcode::RY: return textbook::textbook_matrix("ry", {2 * kPi * a});
    case Opcode::RZ: return textbook::textbook_matrix("rz", {2 * kPi * a});
    default: {
      std::string name(isa::mnemonic(op));
      std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
      return textbook::textbook_matrix(name, {});
    }
  }
}

// 1. Every corpus circuit verifies end to end below the threshold.
void corpus_gcd(const std::vector<harness::CorpusEntry>& corpus) {
  const auto t0 = Clock::now();
  harness::VerifyConfig cfg;
  cfg.threshold = kGcdThreshold;
  const trig::TrigUnit tu(cfg.trig_config());
  double worst = 0;
  std::string worst_id;
  std::size_t passed = 0;
  unsigned lo = 99, hi = 0;
  for (const auto& e : corpus) {
    const auto r = harness::verify_program(compiler::compile_qasm(e.qasm), e.name, cfg, tu);
    passed += r.pass;
    lo = std::min(lo, e.qubits);
    hi = std::max(hi, e.qubits);
    if (r.max_distance >= worst) {
      worst = r.max_distance;
      worst_id = e.name;
    }
  }
  const double secs = seconds_since(t0);
  report(1, "corpus GCD below 0.05 end to end",
         corpus.size() >= kMinCorpus && passed == corpus.size() && lo == 1 && hi == 16 && secs < kCorpusSeconds,
         fmt("%zu/%zu circuits, %u-%u qubits, max GCD %.3e (%s), %.1f s", passed, corpus.size(), lo, hi, worst,
             worst_id.c_str(), secs));
}

// 2. Sixteen-qubit GHZ and 200-gate random circuits; storage 2·2^16 words of 20 bits.
void sixteen_qubits() {
  std::mt19937_64 rng(16);
  const std::string circuits[] = {harness::ghz_qasm(16), harness::random_rotation_qasm(16, kRandomGates16, rng)};
  const trig::TrigUnit tu;
  const emu::Emulator emulator(tu);
  bool ok = true;
  std::ostringstream detail;
  for (const auto& src : circuits) {
    const auto program = compiler::compile_qasm(src);
    const auto run = emulator.run(program);
    const auto gcd = harness::gcd_distance(oracle::ref_run(program, oracle::AngleMode::EndToEnd), run.state);
    const bool storage = run.state.storage_words() == 2u * 65536 && run.state.word_bits() == 20;
    ok &= program.qubit_count == 16 && gcd.pass && storage && run.saturation_log.empty();
    detail << program.gate_count() << " gates max GCD " << std::scientific << std::setprecision(2)
           << gcd.max_distance << ", " << run.state.storage_words() << "x" << run.state.word_bits() << " bit; ";
  }
  report(2, "16-qubit capacity", ok, detail.str());
}

// 3. Cycle counts on random instruction traces equal the closed form.
void timing_formula() {
  std::mt19937_64 rng(3);
  int mismatches = 0;
  for (int draw = 0; draw < kTimingTraces; ++draw) {
    isa::Program p;
    p.qubit_count = 1 + rng() % 16;
    p.instructions.push_back(Instruction::set_nq(p.qubit_count));
    const std::size_t ng = rng() % 400;
    std::size_t nc = 0;
    for (std::size_t k = 0; k < ng; ++k) {
      const auto t = static_cast<std::uint32_t>(rng() % p.qubit_count);
      const Opcode op = isa::gate_opcodes()[rng() % 12];
      if (p.qubit_count > 1 && rng() % 2) {
        const auto c = static_cast<std::uint32_t>((t + 1 + rng() % (p.qubit_count - 1)) % p.qubit_count);
        p.instructions.push_back(Instruction::controlled_gate(op, c, t, 0));
        ++nc;
      } else {
        p.instructions.push_back(Instruction::gate(op, t, 0));
      }
    }
    p.instructions.push_back(Instruction::read_state());
    // (2^{max(Nq,5)-1} · Ng · (2-α)/2 + 4) with α = Nc/Ng, as an integer identity
    const unsigned m = std::max<unsigned>(p.qubit_count, 5);
    const std::uint64_t expect = (std::uint64_t{1} << (m - 1)) * (2 * ng - nc) / 2 + 4;
    mismatches += emu::cycle_count(p).cycles != expect;
  }
  report(3, "timing closed form", mismatches == 0, fmt("%d traces, %d mismatches", kTimingTraces, mismatches));
}

// 4. Realized gate matrices equal textbook gates; controlled variants embed exactly.
void gate_table() {
  double worst = 0, worst_controlled = 0;
  for (const Opcode op : isa::gate_opcodes()) {
    std::vector<double> angles = {isa::fixed_angle(op)};
    if (isa::is_parametric(op)) angles = {-1.0, -0.731, -0.25, 0.0, 0.1, 0.3333, 0.5, 0.9999};
    for (const double a : angles) {
      worst = std::max(worst, textbook::phase_distance(oracle::realized_matrix<double>(op, a), expected_gate(op, a)));
      for (const auto& [c, t] : {std::pair{0u, 1u}, std::pair{1u, 0u}}) {
        oracle::Operator u(4, 4);
        for (Eigen::Index col = 0; col < 4; ++col) {
          oracle::RefStateVector v = oracle::basis_state(2, static_cast<std::uint64_t>(col));
          oracle::ref_apply<double>(v, op, t, c, a);
          u.col(col) = v;
        }
        const auto g = expected_gate(op, a);
        textbook::Mat cu = textbook::Mat::Identity(4, 4);
        cu(1, 1) = g(0, 0);
        cu(1, 3) = g(0, 1);
        cu(3, 1) = g(1, 0);
        cu(3, 3) = g(1, 1);
        worst_controlled = std::max(worst_controlled, (u - textbook::embed(cu, {c, t}, 2)).cwiseAbs().maxCoeff());
      }
    }
  }
  report(4, "gate-table soundness", worst <= kGateTableTol && worst_controlled <= kGateTableTol,
         fmt("max deviation %.2e up to phase, controlled %.2e exact, tol %.0e", worst, worst_controlled,
             kGateTableTol));
}

// 5. Every small library gate lowers to its textbook unitary.
void compiler_equivalence() {
  const std::vector<std::vector<double>> angle_sets = {
      {0.7312, -1.9045, 2.6183, 0.3377}, {kPi, -kPi / 2, 3 * kPi, -0.05}, {-2.2, 0.0, 1e-3, 5.5}};
  const std::vector<std::vector<unsigned>> placements = {{0, 1, 2}, {2, 0, 1}, {1, 2, 0}};
  double worst = 0;
  std::string worst_gate;
  std::size_t checked = 0;
  for (const auto& gate : textbook::small_library_gates()) {
    for (const auto& angles : angle_sets) {
      for (const auto& placement : placements) {
        const std::vector<double> params(angles.begin(), angles.begin() + gate.params);
        const std::vector<unsigned> qubits(placement.begin(), placement.begin() + gate.qubits);
        std::ostringstream src;
        src.precision(17);
        src << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\n" << gate.name;
        if (!params.empty()) {
          src << '(';
          for (std::size_t k = 0; k < params.size(); ++k) src << (k ? "," : "") << params[k];
          src << ')';
        }
        for (std::size_t k = 0; k < qubits.size(); ++k) src << (k ? ", " : " ") << "q[" << qubits[k] << ']';
        src << ";\n";
        const auto u = oracle::ref_unitary(compiler::compile_qasm(src.str()), oracle::AngleMode::EndToEnd);
        const double d =
            textbook::phase_distance(u, textbook::embed(textbook::textbook_matrix(gate.name, params), qubits, 3));
        ++checked;
        if (d >= worst) {
          worst = d;
          worst_gate = gate.name;
        }
      }
    }
  }
  report(5, "compiler equivalence", worst <= kCompilerTol,
         fmt("%zu gates, %zu lowerings, max deviation %.2e (%s), tol %.0e", textbook::small_library_gates().size(),
             checked, worst, worst_gate.c_str(), kCompilerTol));
}

// 6. Exhaustive trig sweep against long double sin/cos.
void trig_sweep() {
  const auto t0 = Clock::now();
  const trig::TrigUnit tu;
  long double worst = 0;
  for (std::int32_t a = -kOne; a < kOne; ++a) {
    std::int32_t s = 0, c = 0;
    tu.sincos_raw(a, s, c);
    const long double x = std::numbers::pi_v<long double> * a / kOne;
    worst = std::max({worst, std::fabs(std::ldexp(static_cast<long double>(s), -18) - std::sin(x)),
                      std::fabs(std::ldexp(static_cast<long double>(c), -18) - std::cos(x))});
  }
  const double secs = seconds_since(t0);
  report(6, "trig unit exhaustive sweep", worst <= kTrigBound && secs < kTrigSeconds,
         fmt("%d angles, max |error| %.3e = 2^%.2f (bound 2^-16), %.2f s", 2 * kOne, static_cast<double>(worst),
             std::log2(static_cast<double>(worst)), secs));
}

// 7. RNE on a 10-bit format, exhaustively; half-LSB round trip on random reals.
void fixed_point() {
  const fxp::FxFormat f10{2, 8};
  std::size_t ties = 0, bad = 0;
  for (std::int64_t a = f10.raw_min(); a <= f10.raw_max(); ++a) {
    for (std::int64_t b = f10.raw_min(); b <= f10.raw_max(); ++b) {
      fxp::FxFlags flags;
      const auto p = fxp::mul_rne(fxp::Fx::from_raw(a, f10), fxp::Fx::from_raw(b, f10), flags);
      // nearest by exact rational comparison, ties to even
      const std::int64_t prod = a * b;
      const std::int64_t floor_q = prod >= 0 ? prod / 256 : -((-prod + 255) / 256);
      const std::int64_t rem = prod - floor_q * 256;
      std::int64_t q = floor_q + (rem > 128 || (rem == 128 && (floor_q & 1)));
      q = std::clamp(q, f10.raw_min(), f10.raw_max());
      bad += p.raw() != q;
      if (rem == 128 && !flags.saturated()) {
        ++ties;
        bad += (p.raw() & 1) != 0;
      }
    }
  }
  // encode at every half-LSB point of the format
  for (std::int64_t k = 2 * f10.raw_min(); k < 2 * f10.raw_max(); ++k) {
    if ((k & 1) == 0) continue;
    const auto e = fxp::encode(std::ldexp(static_cast<double>(k), -9), f10);
    ++ties;
    bad += (e.raw() & 1) != 0 || std::abs(2 * e.raw() - k) != 1;
  }
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-2.0, 2.0 - std::ldexp(1.0, -18));
  double worst = 0;
  for (int k = 0; k < kRoundTrips; ++k) {
    const double x = dist(rng);
    worst = std::max(worst, std::abs(fxp::decode(fxp::encode(x, fxp::kDefaultFormat)) - x));
  }
  report(7, "fixed-point RNE and round trip", bad == 0 && worst <= std::ldexp(1.0, -19),
         fmt("%zu ties checked, %zu errors; %d round trips max error %.3e LSB", ties, bad, kRoundTrips,
             worst * 262144.0));
}

// 8. Pair sets partition (or half-cover) the index space.
void butterflies() {
  std::size_t configs = 0, bad = 0;
  for (unsigned nq = 1; nq <= kButterflyMaxQubits; ++nq) {
    const std::uint64_t dim = std::uint64_t{1} << nq;
    for (unsigned t = 0; t < nq; ++t) {
      for (int c = -1; c < static_cast<int>(nq); ++c) {
        if (c == static_cast<int>(t)) continue;
        ++configs;
        const auto control = c < 0 ? std::nullopt : std::optional<unsigned>(c);
        std::vector<int> hits(dim, 0);
        std::uint64_t count = 0;
        for (const auto [i, j] : emu::butterfly_pairs(nq, t, control)) {
          ++count;
          bad += j != (i | (std::uint64_t{1} << t)) || ((i >> t) & 1);
          if (control) bad += ((i >> *control) & 1) == 0;
          ++hits[i];
          ++hits[j];
        }
        for (std::uint64_t k = 0; k < dim; ++k) {
          const bool selected = !control || ((k >> *control) & 1);
          bad += hits[k] != (selected ? 1 : 0);
        }
        bad += count != (control ? dim / 4 : dim / 2);
      }
    }
  }
  report(8, "butterfly pair selection", bad == 0, fmt("%zu (nq, target, control) cases up to nq=%u, %zu violations",
                                                       configs, kButterflyMaxQubits, bad));
}

// 9. ISA oracle equals tensor-product simulation on small corpus circuits.
void oracle_self_check(const std::vector<harness::CorpusEntry>& corpus) {
  double worst = 0;
  std::size_t checked = 0;
  for (const auto& e : corpus) {
    if (e.qubits > kOracleMaxQubits) continue;
    const auto program = compiler::compile_qasm(e.qasm);
    for (const auto mode : {oracle::AngleMode::EndToEnd, oracle::AngleMode::Datapath}) {
      const auto a = oracle::ref_run(program, mode);
      const auto b = oracle::tensor_run(program, mode);
      worst = std::max(worst, oracle::max_deviation_up_to_phase(a, b));
    }
    ++checked;
  }
  report(9, "oracle vs tensor-product simulation", checked > 0 && worst <= kOracleTol,
         fmt("%zu circuits with nq <= %u, max deviation %.2e, tol %.0e", checked, kOracleMaxQubits, worst,
             kOracleTol));
}

}  // namespace

int main() {
  const auto corpus = harness::generate_corpus(0);
  corpus_gcd(corpus);
  sixteen_qubits();
  timing_formula();
  gate_table();
  compiler_equivalence();
  trig_sweep();
  fixed_point();
  butterflies();
  oracle_self_check(corpus);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
