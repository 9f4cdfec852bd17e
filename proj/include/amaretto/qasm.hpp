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

// OpenQASM 2.0 front end: lexer, recursive-descent parser and semantic checks.
// `include "qelib1.inc";` is served from a built-in copy of the standard
// library; no other include is resolved.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace amaretto::qasm {

struct SourcePos {
  int line = 0;
  int column = 0;
};

/// Parameter expression tree.
struct Expr {
  enum class Kind { Number, Pi, Param, Neg, Add, Sub, Mul, Div, Pow, Call };

  Kind kind = Kind::Number;
  double number = 0.0;
  std::string name;  // parameter or function name
  std::vector<Expr> operands;
  SourcePos pos;

  /// Throws ParseError for an unbound parameter or a domain error (ln/sqrt of a negative).
  double evaluate(const std::unordered_map<std::string, double>& env = {}) const;
};

/// `q[3]` or a whole register `q`; inside gate bodies, a formal argument name.
struct QubitRef {
  std::string reg;
  std::optional<int> index;
  SourcePos pos;
};

struct GateCall {
  std::string name;
  std::vector<Expr> params;
  std::vector<QubitRef> args;
  SourcePos pos;
};

struct Measure {
  QubitRef qubit;
  QubitRef bit;
  SourcePos pos;
};

struct Reset {
  QubitRef qubit;
  SourcePos pos;
};

struct Barrier {
  std::vector<QubitRef> args;
  SourcePos pos;
};

using QuantumOp = std::variant<GateCall, Measure, Reset>;

struct Conditional {
  std::string creg;
  long value = 0;
  QuantumOp op;
  SourcePos pos;
};

using Statement = std::variant<GateCall, Measure, Reset, Barrier, Conditional>;

struct GateDecl {
  std::string name;
  std::vector<std::string> params;
  std::vector<std::string> qargs;
  std::vector<GateCall> body;  // barriers inside bodies are dropped
  bool opaque = false;
  bool from_library = false;  // defined by the built-in qelib1.inc
  SourcePos pos;
};

struct Register {
  std::string name;
  int size = 0;
  int offset = 0;  // global index of element 0
};

struct CircuitAst {
  std::string version;
  std::vector<Register> qregs;
  std::vector<Register> cregs;
  std::map<std::string, GateDecl> gates;
  std::vector<Statement> statements;
  std::vector<std::string> source_lines;

  int qubit_count() const noexcept;
  const Register* find_qreg(std::string_view name) const noexcept;
  const Register* find_creg(std::string_view name) const noexcept;
  /// Global qubit indices addressed by a reference (all elements for a whole register).
  std::vector<int> resolve(const QubitRef& ref) const;
  /// Trimmed text of a 1-based source line, empty if out of range.
  std::string line_text(int line) const;
};

/// The built-in gates every circuit may use without an include.
inline constexpr std::string_view kBuiltinU = "U";
inline constexpr std::string_view kBuiltinCX = "CX";

/// Text of the bundled qelib1.inc.
std::string_view qelib1_source() noexcept;

/// Parses a complete OpenQASM 2.0 program. Throws ParseError carrying the
/// line and column of the first lexical, syntactic or semantic error.
CircuitAst parse_qasm(std::string_view source);

}  // namespace amaretto::qasm
