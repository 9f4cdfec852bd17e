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

#include <stdexcept>
#include <string>

namespace amaretto {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a precondition (mismatched formats, bad configuration).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// An instruction field does not fit its configured width.
class EncodeError : public Error {
 public:
  EncodeError(std::string field, const std::string& message)
      : Error("field '" + field + "': " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A machine word or program file is not a valid encoding.
class DecodeError : public Error {
 public:
  using Error::Error;
};

/// Lexical, syntactic or semantic error in OpenQASM input, with a source position.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// A parsed circuit cannot be lowered to the instruction set.
class CompileError : public Error {
 public:
  CompileError(int line, const std::string& message)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// An instruction stream violates the program invariants at run time.
class ProgramError : public Error {
 public:
  using Error::Error;
};

}  // namespace amaretto
