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

// Program containers on disk.
//
// Binary (.ambin), all integers little-endian:
//   "AMAR" | version:u8 | int_bits:u8 | frac_bits:u8 | qubit_field_bits:u16 |
//   instruction_count:u32 | instruction words:u32...
//
// Text listing, one instruction per line:
//   OPCODE tgt ctl imm_hex # source

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "amaretto/isa.hpp"

namespace amaretto::isa {

inline constexpr std::uint8_t kAmbinVersion = 1;

std::vector<std::uint8_t> to_ambin(const Program& program);
/// Throws DecodeError on a bad header, truncated data or an invalid word.
Program from_ambin(const std::vector<std::uint8_t>& bytes);

void save_ambin(const Program& program, const std::filesystem::path& path);
Program load_ambin(const std::filesystem::path& path);

/// Immediate rendered as the hex value of its field bits.
std::string listing_line(const Instruction& ins, const MachineConfig& cfg, const SourceRef* source = nullptr);
void write_listing(const Program& program, std::ostream& out);

}  // namespace amaretto::isa
