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

#include "amaretto/program_io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "amaretto/compiler.hpp"
#include "amaretto/error.hpp"

using namespace amaretto;
using namespace amaretto::isa;

namespace {

Program bell() {
  return compiler::compile_qasm(
      "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\nh q[0];\ncx q[0],q[1];\n");
}

}  // namespace

TEST(Ambin, HeaderLayout) {
  const auto bytes = to_ambin(bell());
  ASSERT_EQ(bytes.size(), 4u + 1 + 1 + 1 + 2 + 4 + 4 * 4);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "AMAR");
  EXPECT_EQ(bytes[4], 1);   // version
  EXPECT_EQ(bytes[5], 2);   // int bits
  EXPECT_EQ(bytes[6], 18);  // frac bits
  EXPECT_EQ(bytes[7] | bytes[8] << 8, 4);
  EXPECT_EQ(bytes[9] | bytes[10] << 8 | bytes[11] << 16 | bytes[12] << 24, 4);
  // first word SET_NQ 2, little-endian
  EXPECT_EQ(bytes[13], 2);
  EXPECT_EQ(bytes[14] | bytes[15] | bytes[16], 0);
  // H word 0x28010000
  EXPECT_EQ(bytes[17], 0x00);
  EXPECT_EQ(bytes[18], 0x00);
  EXPECT_EQ(bytes[19], 0x01);
  EXPECT_EQ(bytes[20], 0x28);
}

TEST(Ambin, RoundTrip) {
  const Program p = bell();
  const Program q = from_ambin(to_ambin(p));
  EXPECT_EQ(q.config, p.config);
  EXPECT_EQ(q.qubit_count, 2u);
  EXPECT_EQ(q.instructions, p.instructions);
  EXPECT_FALSE(q.has_source_map());
}

TEST(Ambin, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "amaretto_io_test.ambin";
  save_ambin(bell(), path);
  EXPECT_EQ(load_ambin(path).instructions, bell().instructions);
  std::filesystem::remove(path);
  EXPECT_THROW(load_ambin(path), Error);
}

TEST(Ambin, RejectsCorruptInput) {
  auto bytes = to_ambin(bell());
  auto bad = bytes;
  bad[0] = 'X';
  EXPECT_THROW(from_ambin(bad), DecodeError);
  bad = bytes;
  bad[4] = 9;
  EXPECT_THROW(from_ambin(bad), DecodeError);
  bad = bytes;
  bad.pop_back();
  EXPECT_THROW(from_ambin(bad), DecodeError);
  bad = bytes;
  bad.push_back(0);
  EXPECT_THROW(from_ambin(bad), DecodeError);
  bad = bytes;
  bad[20] = 0xF8;  // opcode 31
  EXPECT_THROW(from_ambin(bad), DecodeError);
  EXPECT_THROW(from_ambin({}), DecodeError);
}

TEST(Listing, LinesCarrySource) {
  std::ostringstream os;
  write_listing(bell(), os);
  EXPECT_EQ(os.str(),
            "SET_NQ 0 0 0x00002\n"
            "H 0 0 0x10000 # line 4: h q[0];\n"
            "X 1 0 0x20000 # line 5: cx q[0],q[1];\n"
            "READ_STATE 0 0 0x00000\n");
}

TEST(Listing, NegativeImmediateIsMasked) {
  EXPECT_EQ(listing_line(Instruction::gate(Opcode::Tdg, 3, -65536), MachineConfig{}), "TDG 3 3 0x70000");
}
