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

#include "amaretto/qasm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <set>

#include "amaretto/error.hpp"

namespace amaretto::qasm {

namespace {

constexpr std::string_view kQelib1 = R"QASM(// Quantum Experience (QE) Standard Header
// file: qelib1.inc

// --- QE Hardware primitives ---

// 3-parameter 2-pulse single qubit gate
gate u3(theta,phi,lambda) q { U(theta,phi,lambda) q; }
// 2-parameter 1-pulse single qubit gate
gate u2(phi,lambda) q { U(pi/2,phi,lambda) q; }
// 1-parameter 0-pulse single qubit gate
gate u1(lambda) q { U(0,0,lambda) q; }
// controlled-NOT
gate cx c,t { CX c,t; }
// idle gate (identity)
gate id a { U(0,0,0) a; }
// idle gate (identity) with length gamma*sqglen
gate u0(gamma) q { U(0,0,0) q; }

// --- QE Standard Gates ---

// generic single qubit gate
gate u(theta,phi,lambda) q { U(theta,phi,lambda) q; }
// phase gate
gate p(lambda) q { U(0,0,lambda) q; }
// Pauli gate: bit-flip
gate x a { u3(pi,0,pi) a; }
// Pauli gate: bit and phase flip
gate y a { u3(pi,pi/2,pi/2) a; }
// Pauli gate: phase flip
gate z a { u1(pi) a; }
// Clifford gate: Hadamard
gate h a { u2(0,pi) a; }
// Clifford gate: sqrt(Z) phase gate
gate s a { u1(pi/2) a; }
// Clifford gate: conjugate of sqrt(Z)
gate sdg a { u1(-pi/2) a; }
// C3 gate: sqrt(S) phase gate
gate t a { u1(pi/4) a; }
// C3 gate: conjugate of sqrt(S)
gate tdg a { u1(-pi/4) a; }

// --- Standard rotations ---
// Rotation around X-axis
gate rx(theta) a { u3(theta, -pi/2,pi/2) a; }
// rotation around Y-axis
gate ry(theta) a { u3(theta,0,0) a; }
// rotation around Z axis
gate rz(phi) a { u1(phi) a; }

// --- QE Standard User-Defined Gates  ---

// sqrt(X)
gate sx a { sdg a; h a; sdg a; }
// inverse sqrt(X)
gate sxdg a { s a; h a; s a; }
// controlled-Phase
gate cz a,b { h b; cx a,b; h b; }
// controlled-Y
gate cy a,b { sdg b; cx a,b; s b; }
// swap
gate swap a,b { cx a,b; cx b,a; cx a,b; }
// controlled-H
gate ch a,b {
h b; sdg b;
cx a,b;
h b; t b;
cx a,b;
t b; h b; s b; x b; s a;
}
// C3 gate: Toffoli
gate ccx a,b,c
{
  h c;
  cx b,c; tdg c;
  cx a,c; t c;
  cx b,c; tdg c;
  cx a,c; t b; t c; h c;
  cx a,b; t a; tdg b;
  cx a,b;
}
// cswap (Fredkin)
gate cswap a,b,c
{
  cx c,b;
  ccx a,b,c;
  cx c,b;
}
// controlled rx rotation
gate crx(lambda) a,b
{
  u1(pi/2) b;
  cx a,b;
  u3(-lambda/2,0,0) b;
  cx a,b;
  u3(lambda/2,-pi/2,0) b;
}
// controlled ry rotation
gate cry(lambda) a,b
{
  ry(lambda/2) b;
  cx a,b;
  ry(-lambda/2) b;
  cx a,b;
}
// controlled rz rotation
gate crz(lambda) a,b
{
  rz(lambda/2) b;
  cx a,b;
  rz(-lambda/2) b;
  cx a,b;
}
// controlled phase rotation
gate cu1(lambda) a,b
{
  u1(lambda/2) a;
  cx a,b;
  u1(-lambda/2) b;
  cx a,b;
  u1(lambda/2) b;
}
gate cp(lambda) a,b
{
  p(lambda/2) a;
  cx a,b;
  p(-lambda/2) b;
  cx a,b;
  p(lambda/2) b;
}
// controlled-U
gate cu3(theta,phi,lambda) c, t
{
  // implements controlled-U(theta,phi,lambda) with  target t and control c
  u1((lambda+phi)/2) c;
  u1((lambda-phi)/2) t;
  cx c,t;
  u3(-theta/2,0,-(phi+lambda)/2) t;
  cx c,t;
  u3(theta/2,phi,0) t;
}
// controlled-sqrt(X)
gate csx a,b { h b; cu1(pi/2) a,b; h b; }
// controlled-U gate
gate cu(theta,phi,lambda,gamma) c, t
{ p(gamma) c;
  p((lambda+phi)/2) c;
  p((lambda-phi)/2) t;
  cx c,t;
  u(-theta/2,0,-(phi+lambda)/2) t;
  cx c,t;
  u(theta/2,phi,0) t;
}
// two-qubit XX rotation
gate rxx(theta) a,b
{
  u3(pi/2, theta, 0) a;
  h b;
  cx a,b;
  u1(-theta) b;
  cx a,b;
  h b;
  u2(-pi, pi-theta) a;
}
// two-qubit ZZ rotation
gate rzz(theta) a,b
{
  cx a,b;
  u1(theta) b;
  cx a,b;
}
// relative-phase CCX
gate rccx a,b,c
{
  u2(0,pi) c;
  u1(pi/4) c;
  cx b, c;
  u1(-pi/4) c;
  cx a, c;
  u1(pi/4) c;
  cx b, c;
  u1(-pi/4) c;
  u2(0,pi) c;
}
// relative-phase 3-controlled X gate
gate rc3x a,b,c,d
{
  u2(0,pi) d;
  u1(pi/4) d;
  cx c,d;
  u1(-pi/4) d;
  u2(0,pi) d;
  cx a,d;
  u1(pi/4) d;
  cx b,d;
  u1(-pi/4) d;
  cx a,d;
  u1(pi/4) d;
  cx b,d;
  u1(-pi/4) d;
  u2(0,pi) d;
  u1(pi/4) d;
  cx c,d;
  u1(-pi/4) d;
  u2(0,pi) d;
}
// 3-controlled X gate
gate c3x a,b,c,d
{
    h d;
    p(pi/8) a;
    p(pi/8) b;
    p(pi/8) c;
    p(pi/8) d;
    cx a, b;
    p(-pi/8) b;
    cx a, b;
    cx b, c;
    p(-pi/8) c;
    cx a, c;
    p(pi/8) c;
    cx b, c;
    p(-pi/8) c;
    cx a, c;
    cx c, d;
    p(-pi/8) d;
    cx b, d;
    p(pi/8) d;
    cx c, d;
    p(-pi/8) d;
    cx a, d;
    p(pi/8) d;
    cx c, d;
    p(-pi/8) d;
    cx b, d;
    p(pi/8) d;
    cx c, d;
    p(-pi/8) d;
    cx a, d;
    h d;
}
// 3-controlled sqrt(X) gate, this equals the C3X gate where the CU1 rotations are -pi/8 not -pi/4
gate c3sqrtx a,b,c,d
{
    h d; cu1(pi/8) a,d; h d;
    cx a,b;
    h d; cu1(-pi/8) b,d; h d;
    cx a,b;
    h d; cu1(pi/8) b,d; h d;
    cx b,c;
    h d; cu1(-pi/8) c,d; h d;
    cx a,c;
    h d; cu1(pi/8) c,d; h d;
    cx b,c;
    h d; cu1(-pi/8) c,d; h d;
    cx a,c;
    h d; cu1(pi/8) c,d; h d;
}
// 4-controlled X gate
gate c4x a,b,c,d,e
{
    h e; cu1(pi/2) d,e; h e;
    c3x a,b,c,d;
    h e; cu1(-pi/2) d,e; h e;
    c3x a,b,c,d;
    c3sqrtx a,b,c,e;
}
)QASM";

// ---------------------------------------------------------------------------
// Lexer

enum class Tok {
  Ident,
  Real,
  Int,
  String,
  Semi,
  Comma,
  LParen,
  RParen,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  Plus,
  Minus,
  Star,
  Slash,
  Caret,
  Arrow,
  EqEq,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double value = 0.0;
  SourcePos pos;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::String: return "string \"" + t.text + "\"";
    default: return "'" + t.text + "'";
  }
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };

  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token tok;
    tok.pos = {line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      tok.kind = Tok::Ident;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(tok));
      continue;
    }
    if (is_digit(c) || (c == '.' && i + 1 < src.size() && is_digit(src[i + 1]))) {
      std::size_t j = i;
      bool real = false;
      while (j < src.size() && is_digit(src[j])) ++j;
      if (j < src.size() && src[j] == '.') {
        real = true;
        ++j;
        while (j < src.size() && is_digit(src[j])) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && is_digit(src[k])) {
          real = true;
          j = k;
          while (j < src.size() && is_digit(src[j])) ++j;
        }
      }
      tok.kind = real ? Tok::Real : Tok::Int;
      tok.text = std::string(src.substr(i, j - i));
      tok.value = std::stod(tok.text);
      advance(j - i);
      out.push_back(std::move(tok));
      continue;
    }
    if (c == '"') {
      std::size_t j = i + 1;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
      if (j >= src.size() || src[j] != '"') throw ParseError(line, col, "unterminated string literal");
      tok.kind = Tok::String;
      tok.text = std::string(src.substr(i + 1, j - i - 1));
      advance(j - i + 1);
      out.push_back(std::move(tok));
      continue;
    }
    auto single = [&](Tok kind) {
      tok.kind = kind;
      tok.text = std::string(1, c);
      advance(1);
      out.push_back(tok);
    };
    switch (c) {
      case ';': single(Tok::Semi); continue;
      case ',': single(Tok::Comma); continue;
      case '(': single(Tok::LParen); continue;
      case ')': single(Tok::RParen); continue;
      case '[': single(Tok::LBracket); continue;
      case ']': single(Tok::RBracket); continue;
      case '{': single(Tok::LBrace); continue;
      case '}': single(Tok::RBrace); continue;
      case '+': single(Tok::Plus); continue;
      case '*': single(Tok::Star); continue;
      case '/': single(Tok::Slash); continue;
      case '^': single(Tok::Caret); continue;
      default: break;
    }
    if (c == '-') {
      if (i + 1 < src.size() && src[i + 1] == '>') {
        tok.kind = Tok::Arrow;
        tok.text = "->";
        advance(2);
        out.push_back(std::move(tok));
      } else {
        single(Tok::Minus);
      }
      continue;
    }
    if (c == '=' && i + 1 < src.size() && src[i + 1] == '=') {
      tok.kind = Tok::EqEq;
      tok.text = "==";
      advance(2);
      out.push_back(std::move(tok));
      continue;
    }
    throw ParseError(line, col, std::string("unexpected character '") + c + "'");
  }
  Token end;
  end.pos = {line, col};
  out.push_back(end);
  return out;
}

// ---------------------------------------------------------------------------
// Parser

bool is_function(std::string_view name) {
  return name == "sin" || name == "cos" || name == "tan" || name == "exp" || name == "ln" || name == "sqrt";
}

bool is_reserved(std::string_view name) {
  static const std::set<std::string_view> words = {
      "OPENQASM", "include", "qreg", "creg", "gate", "opaque", "barrier",
      "measure",  "reset",   "if",   "pi",   "U",    "CX",
  };
  return words.count(name) != 0 || is_function(name);
}

class Parser {
 public:
  Parser(std::string_view source, CircuitAst& ast, bool library)
      : tokens_(tokenize(source)), ast_(ast), library_(library) {}

  void parse_program() {
    if (!library_) parse_header();
    while (peek().kind != Tok::End) parse_statement();
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }

  const Token& next() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const Token& at, const std::string& message) const {
    throw ParseError(at.pos.line, at.pos.column, message);
  }

  [[noreturn]] void fail(const SourcePos& at, const std::string& message) const {
    throw ParseError(at.line, at.column, message);
  }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(peek(), std::string("expected ") + what + ", found " + describe(peek()));
    return next();
  }

  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    next();
    return true;
  }

  bool at_keyword(std::string_view word) const { return peek().kind == Tok::Ident && peek().text == word; }

  std::string expect_identifier(const char* what) {
    const Token& t = expect(Tok::Ident, what);
    if (is_reserved(t.text)) fail(t, "'" + t.text + "' is a reserved word");
    return t.text;
  }

  void parse_header() {
    if (!at_keyword("OPENQASM")) fail(peek(), "expected 'OPENQASM 2.0;' header");
    next();
    const Token& v = peek();
    if (v.kind != Tok::Real && v.kind != Tok::Int) fail(v, "expected version number");
    next();
    if (v.value < 2.0 || v.value >= 3.0) fail(v, "unsupported OpenQASM version " + v.text);
    ast_.version = v.text;
    expect(Tok::Semi, "';'");
  }

  void parse_statement() {
    const Token& head = peek();
    if (head.kind != Tok::Ident) fail(head, "expected a statement, found " + describe(head));
    const std::string& word = head.text;

    if (word == "gate" || word == "opaque") return parse_gate_decl();
    if (library_) fail(head, "only gate declarations are allowed in a library");
    if (word == "include") return parse_include();
    if (word == "qreg" || word == "creg") return parse_register();
    if (word == "barrier") {
      Barrier b{parse_barrier_args(), head.pos};
      ast_.statements.emplace_back(std::move(b));
      return;
    }
    if (word == "if") return parse_if();
    if (word == "OPENQASM") fail(head, "duplicate OPENQASM header");
    ast_.statements.push_back(std::visit([](auto&& op) -> Statement { return std::move(op); }, parse_qop()));
  }

  void parse_include() {
    const Token& kw = next();
    const Token& file = expect(Tok::String, "file name string");
    expect(Tok::Semi, "';'");
    if (file.text != "qelib1.inc") fail(kw, "cannot include \"" + file.text + "\" (only qelib1.inc is built in)");
    if (ast_.gates.count("u3") != 0 && ast_.gates.at("u3").from_library) return;
    Parser lib(qelib1_source(), ast_, true);
    lib.parse_program();
  }

  void parse_register() {
    const Token& kw = next();
    const Token& name_tok = peek();
    const std::string name = expect_identifier("register name");
    expect(Tok::LBracket, "'['");
    const Token& size_tok = expect(Tok::Int, "register size");
    expect(Tok::RBracket, "']'");
    expect(Tok::Semi, "';'");
    if (ast_.find_qreg(name) != nullptr || ast_.find_creg(name) != nullptr) {
      fail(name_tok, "register '" + name + "' already declared");
    }
    if (size_tok.value < 1 || size_tok.value > 1 << 20) fail(size_tok, "register size must be positive");
    const int size = static_cast<int>(size_tok.value);
    auto& regs = kw.text == "qreg" ? ast_.qregs : ast_.cregs;
    const int offset = regs.empty() ? 0 : regs.back().offset + regs.back().size;
    regs.push_back({name, size, offset});
  }

  void parse_gate_decl() {
    const Token& kw = next();
    GateDecl decl;
    decl.opaque = kw.text == "opaque";
    decl.from_library = library_;
    decl.pos = peek().pos;
    const Token& name_tok = peek();
    decl.name = expect_identifier("gate name");
    if (ast_.gates.count(decl.name) != 0) fail(name_tok, "gate '" + decl.name + "' already defined");

    if (accept(Tok::LParen)) {
      if (!accept(Tok::RParen)) {
        do {
          const Token& p = peek();
          std::string param = expect_identifier("parameter name");
          if (std::find(decl.params.begin(), decl.params.end(), param) != decl.params.end()) {
            fail(p, "duplicate parameter '" + param + "'");
          }
          decl.params.push_back(std::move(param));
        } while (accept(Tok::Comma));
        expect(Tok::RParen, "')'");
      }
    }
    do {
      const Token& q = peek();
      std::string arg = expect_identifier("qubit argument name");
      if (std::find(decl.qargs.begin(), decl.qargs.end(), arg) != decl.qargs.end()) {
        fail(q, "duplicate qubit argument '" + arg + "'");
      }
      decl.qargs.push_back(std::move(arg));
    } while (accept(Tok::Comma));

    if (decl.opaque) {
      expect(Tok::Semi, "';'");
    } else {
      expect(Tok::LBrace, "'{'");
      while (!accept(Tok::RBrace)) {
        if (peek().kind == Tok::End) fail(peek(), "unterminated gate body");
        if (at_keyword("barrier")) {
          for (const auto& ref : parse_barrier_args()) check_body_arg(decl, ref);
          continue;
        }
        GateCall call = parse_gate_call();
        check_body_call(decl, call);
        decl.body.push_back(std::move(call));
      }
    }
    ast_.gates.emplace(decl.name, std::move(decl));
  }

  std::vector<QubitRef> parse_barrier_args() {
    next();  // barrier
    std::vector<QubitRef> args;
    do {
      args.push_back(parse_qubit_ref());
    } while (accept(Tok::Comma));
    expect(Tok::Semi, "';'");
    return args;
  }

  void parse_if() {
    const Token& kw = next();
    expect(Tok::LParen, "'('");
    const Token& reg_tok = peek();
    Conditional cond;
    cond.pos = kw.pos;
    cond.creg = expect_identifier("classical register");
    if (ast_.find_creg(cond.creg) == nullptr) fail(reg_tok, "undeclared classical register '" + cond.creg + "'");
    expect(Tok::EqEq, "'=='");
    cond.value = static_cast<long>(expect(Tok::Int, "integer").value);
    expect(Tok::RParen, "')'");
    cond.op = parse_qop();
    ast_.statements.emplace_back(std::move(cond));
  }

  QuantumOp parse_qop() {
    const Token& head = peek();
    if (at_keyword("measure")) {
      next();
      Measure m;
      m.pos = head.pos;
      m.qubit = parse_qubit_ref();
      expect(Tok::Arrow, "'->'");
      m.bit = parse_qubit_ref();
      expect(Tok::Semi, "';'");
      check_measure(m);
      return m;
    }
    if (at_keyword("reset")) {
      next();
      Reset r;
      r.pos = head.pos;
      r.qubit = parse_qubit_ref();
      expect(Tok::Semi, "';'");
      check_qreg_ref(r.qubit);
      ast_.resolve(r.qubit);
      return r;
    }
    GateCall call = parse_gate_call();
    check_top_call(call);
    return call;
  }

  GateCall parse_gate_call() {
    GateCall call;
    const Token& name_tok = peek();
    call.pos = name_tok.pos;
    if (name_tok.kind != Tok::Ident) fail(name_tok, "expected gate name, found " + describe(name_tok));
    call.name = next().text;
    if (accept(Tok::LParen)) {
      if (!accept(Tok::RParen)) {
        do {
          call.params.push_back(parse_expr());
        } while (accept(Tok::Comma));
        expect(Tok::RParen, "')'");
      }
    }
    do {
      call.args.push_back(parse_qubit_ref());
    } while (accept(Tok::Comma));
    expect(Tok::Semi, "';'");
    return call;
  }

  QubitRef parse_qubit_ref() {
    QubitRef ref;
    ref.pos = peek().pos;
    ref.reg = expect_identifier("qubit or register");
    if (accept(Tok::LBracket)) {
      const Token& idx = expect(Tok::Int, "index");
      ref.index = static_cast<int>(std::min(idx.value, 1e9));
      expect(Tok::RBracket, "']'");
    }
    return ref;
  }

  // expr   := term (('+' | '-') term)*
  // term   := unary (('*' | '/') unary)*
  // unary  := ('-' | '+') unary | power
  // power  := primary ('^' unary)?
  Expr parse_expr() {
    Expr lhs = parse_term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const Token& op = next();
      lhs = binary(op.kind == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub, std::move(lhs), parse_term(), op.pos);
    }
    return lhs;
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      const Token& op = next();
      lhs = binary(op.kind == Tok::Star ? Expr::Kind::Mul : Expr::Kind::Div, std::move(lhs), parse_unary(), op.pos);
    }
    return lhs;
  }

  Expr parse_unary() {
    if (peek().kind == Tok::Minus) {
      const Token& op = next();
      Expr e;
      e.kind = Expr::Kind::Neg;
      e.pos = op.pos;
      e.operands.push_back(parse_unary());
      return e;
    }
    if (accept(Tok::Plus)) return parse_unary();
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (peek().kind == Tok::Caret) {
      const Token& op = next();
      return binary(Expr::Kind::Pow, std::move(base), parse_unary(), op.pos);
    }
    return base;
  }

  Expr parse_primary() {
    const Token& t = peek();
    Expr e;
    e.pos = t.pos;
    switch (t.kind) {
      case Tok::Real:
      case Tok::Int:
        next();
        e.kind = Expr::Kind::Number;
        e.number = t.value;
        return e;
      case Tok::LParen: {
        next();
        Expr inner = parse_expr();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Ident:
        next();
        if (t.text == "pi") {
          e.kind = Expr::Kind::Pi;
          return e;
        }
        if (is_function(t.text)) {
          e.kind = Expr::Kind::Call;
          e.name = t.text;
          expect(Tok::LParen, "'(' after function name");
          e.operands.push_back(parse_expr());
          expect(Tok::RParen, "')'");
          return e;
        }
        e.kind = Expr::Kind::Param;
        e.name = t.text;
        return e;
      default:
        fail(t, "expected expression, found " + describe(t));
    }
  }

  static Expr binary(Expr::Kind kind, Expr lhs, Expr rhs, SourcePos pos) {
    Expr e;
    e.kind = kind;
    e.pos = pos;
    e.operands.push_back(std::move(lhs));
    e.operands.push_back(std::move(rhs));
    return e;
  }

  // --- semantic checks ----------------------------------------------------

  struct Signature {
    std::size_t params;
    std::size_t qubits;
  };

  Signature signature_of(const GateCall& call) const {
    if (call.name == kBuiltinU) return {3, 1};
    if (call.name == kBuiltinCX) return {0, 2};
    auto it = ast_.gates.find(call.name);
    if (it == ast_.gates.end()) fail(call.pos, "undefined gate '" + call.name + "'");
    return {it->second.params.size(), it->second.qargs.size()};
  }

  void check_arity(const GateCall& call) const {
    const Signature sig = signature_of(call);
    if (call.params.size() != sig.params) {
      fail(call.pos, "gate '" + call.name + "' expects " + std::to_string(sig.params) + " parameter(s), got " +
                         std::to_string(call.params.size()));
    }
    if (call.args.size() != sig.qubits) {
      fail(call.pos, "gate '" + call.name + "' expects " + std::to_string(sig.qubits) + " qubit argument(s), got " +
                         std::to_string(call.args.size()));
    }
  }

  void check_expr_params(const Expr& e, const std::vector<std::string>& allowed) const {
    if (e.kind == Expr::Kind::Param &&
        std::find(allowed.begin(), allowed.end(), e.name) == allowed.end()) {
      fail(e.pos, "unknown identifier '" + e.name + "' in expression");
    }
    for (const auto& op : e.operands) check_expr_params(op, allowed);
  }

  void check_body_arg(const GateDecl& decl, const QubitRef& ref) const {
    if (ref.index) fail(ref.pos, "indexed qubit inside a gate body");
    if (std::find(decl.qargs.begin(), decl.qargs.end(), ref.reg) == decl.qargs.end()) {
      fail(ref.pos, "'" + ref.reg + "' is not an argument of gate '" + decl.name + "'");
    }
  }

  void check_body_call(const GateDecl& decl, const GateCall& call) const {
    if (call.name == decl.name) fail(call.pos, "gate '" + decl.name + "' cannot call itself");
    check_arity(call);
    for (const auto& p : call.params) check_expr_params(p, decl.params);
    std::set<std::string> seen;
    for (const auto& ref : call.args) {
      check_body_arg(decl, ref);
      if (!seen.insert(ref.reg).second) fail(ref.pos, "qubit '" + ref.reg + "' used twice in one gate");
    }
  }

  void check_qreg_ref(const QubitRef& ref) const {
    if (ast_.find_qreg(ref.reg) == nullptr) fail(ref.pos, "'" + ref.reg + "' is not a quantum register");
  }

  void check_top_call(const GateCall& call) const {
    check_arity(call);
    for (const auto& p : call.params) check_expr_params(p, {});
    std::optional<std::size_t> width;
    for (const auto& ref : call.args) {
      check_qreg_ref(ref);
      const auto qubits = ast_.resolve(ref);
      if (!ref.index) {
        if (width && *width != qubits.size()) fail(ref.pos, "register size mismatch in broadcast");
        width = qubits.size();
      }
    }
    const std::size_t n = width.value_or(1);
    for (std::size_t k = 0; k < n; ++k) {
      std::set<int> used;
      for (const auto& ref : call.args) {
        const auto qubits = ast_.resolve(ref);
        const int q = ref.index ? qubits.front() : qubits[k];
        if (!used.insert(q).second) fail(ref.pos, "qubit used twice in one gate application");
      }
    }
  }

  void check_measure(const Measure& m) const {
    check_qreg_ref(m.qubit);
    if (ast_.find_creg(m.bit.reg) == nullptr) fail(m.bit.pos, "'" + m.bit.reg + "' is not a classical register");
    const auto q = ast_.resolve(m.qubit);
    const auto c = ast_.resolve(m.bit);
    if (m.qubit.index.has_value() != m.bit.index.has_value() || q.size() != c.size()) {
      fail(m.pos, "measure operands differ in size");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  CircuitAst& ast_;
  bool library_;
};

}  // namespace

double Expr::evaluate(const std::unordered_map<std::string, double>& env) const {
  auto arg = [&](std::size_t k) { return operands.at(k).evaluate(env); };
  switch (kind) {
    case Kind::Number: return number;
    case Kind::Pi: return std::numbers::pi;
    case Kind::Param: {
      auto it = env.find(name);
      if (it == env.end()) throw ParseError(pos.line, pos.column, "unbound parameter '" + name + "'");
      return it->second;
    }
    case Kind::Neg: return -arg(0);
    case Kind::Add: return arg(0) + arg(1);
    case Kind::Sub: return arg(0) - arg(1);
    case Kind::Mul: return arg(0) * arg(1);
    case Kind::Div: return arg(0) / arg(1);
    case Kind::Pow: return std::pow(arg(0), arg(1));
    case Kind::Call: {
      const double x = arg(0);
      if (name == "sin") return std::sin(x);
      if (name == "cos") return std::cos(x);
      if (name == "tan") return std::tan(x);
      if (name == "exp") return std::exp(x);
      if (name == "ln") {
        if (x <= 0) throw ParseError(pos.line, pos.column, "ln of a non-positive value");
        return std::log(x);
      }
      if (x < 0) throw ParseError(pos.line, pos.column, "sqrt of a negative value");
      return std::sqrt(x);
    }
  }
  return 0.0;
}

int CircuitAst::qubit_count() const noexcept {
  return qregs.empty() ? 0 : qregs.back().offset + qregs.back().size;
}

const Register* CircuitAst::find_qreg(std::string_view name) const noexcept {
  for (const auto& r : qregs) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

const Register* CircuitAst::find_creg(std::string_view name) const noexcept {
  for (const auto& r : cregs) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

std::vector<int> CircuitAst::resolve(const QubitRef& ref) const {
  const Register* reg = find_qreg(ref.reg);
  if (reg == nullptr) reg = find_creg(ref.reg);
  if (reg == nullptr) throw ParseError(ref.pos.line, ref.pos.column, "undeclared register '" + ref.reg + "'");
  if (ref.index) {
    if (*ref.index < 0 || *ref.index >= reg->size) {
      throw ParseError(ref.pos.line, ref.pos.column,
                       "index " + std::to_string(*ref.index) + " out of range for register '" + ref.reg + "[" +
                           std::to_string(reg->size) + "]'");
    }
    return {reg->offset + *ref.index};
  }
  std::vector<int> out(static_cast<std::size_t>(reg->size));
  for (int k = 0; k < reg->size; ++k) out[static_cast<std::size_t>(k)] = reg->offset + k;
  return out;
}

std::string CircuitAst::line_text(int line) const {
  if (line < 1 || line > static_cast<int>(source_lines.size())) return {};
  const std::string& s = source_lines[static_cast<std::size_t>(line - 1)];
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string_view qelib1_source() noexcept { return kQelib1; }

CircuitAst parse_qasm(std::string_view source) {
  CircuitAst ast;
  std::size_t start = 0;
  while (start <= source.size()) {
    const auto nl = source.find('\n', start);
    const auto end = nl == std::string_view::npos ? source.size() : nl;
    ast.source_lines.emplace_back(source.substr(start, end - start));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  Parser(source, ast, false).parse_program();
  return ast;
}

}  // namespace amaretto::qasm
