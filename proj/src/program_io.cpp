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

#include <fstream>
#include <iomanip>
#include <iterator>
#include <ostream>
#include <sstream>

#include "amaretto/error.hpp"

namespace amaretto::isa {

namespace {

constexpr char kMagic[4] = {'A', 'M', 'A', 'R'};
constexpr std::size_t kHeaderSize = 4 + 1 + 1 + 1 + 2 + 4;

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) | (std::uint32_t{p[2]} << 16) |
         (std::uint32_t{p[3]} << 24);
}

}  // namespace

std::vector<std::uint8_t> to_ambin(const Program& program) {
  program.validate();
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  out.push_back(kAmbinVersion);
  out.push_back(static_cast<std::uint8_t>(program.config.int_bits));
  out.push_back(static_cast<std::uint8_t>(program.config.frac_bits));
  put_u16(out, static_cast<std::uint16_t>(program.config.qubit_field_bits));
  put_u32(out, static_cast<std::uint32_t>(program.instructions.size()));
  for (const auto& ins : program.instructions) put_u32(out, encode_instruction(ins, program.config));
  return out;
}

Program from_ambin(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < kHeaderSize || !std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) {
    throw DecodeError("not an .ambin program (bad magic)");
  }
  if (bytes[4] != kAmbinVersion) throw DecodeError("unsupported .ambin version " + std::to_string(bytes[4]));

  Program program;
  program.config.int_bits = bytes[5];
  program.config.frac_bits = bytes[6];
  program.config.qubit_field_bits = bytes[7] | (bytes[8] << 8);
  try {
    program.config.validate();
  } catch (const UsageError& e) {
    throw DecodeError(std::string("bad .ambin header: ") + e.what());
  }
  const std::uint32_t count = get_u32(&bytes[9]);
  if (bytes.size() != kHeaderSize + std::size_t{count} * 4) {
    throw DecodeError("instruction count " + std::to_string(count) + " does not match file size");
  }
  program.instructions.reserve(count);
  for (std::uint32_t k = 0; k < count; ++k) {
    program.instructions.push_back(decode_instruction(get_u32(&bytes[kHeaderSize + 4 * k]), program.config));
  }
  if (!program.instructions.empty() && program.instructions.front().opcode == Opcode::SetNq) {
    program.qubit_count = static_cast<std::uint32_t>(program.instructions.front().immediate);
  }
  try {
    program.validate();
  } catch (const ProgramError& e) {
    throw DecodeError(std::string("invalid program: ") + e.what());
  }
  return program;
}

void save_ambin(const Program& program, const std::filesystem::path& path) {
  const auto bytes = to_ambin(program);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("failed writing " + path.string());
}

Program load_ambin(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return from_ambin(bytes);
}

std::string listing_line(const Instruction& ins, const MachineConfig& cfg, const SourceRef* source) {
  const int imm_bits = cfg.immediate_bits();
  const std::uint32_t field = static_cast<std::uint32_t>(ins.immediate) &
                              (imm_bits >= 32 ? 0xFFFFFFFFu : (std::uint32_t{1} << imm_bits) - 1);
  std::ostringstream os;
  os << mnemonic(ins.opcode) << ' ' << ins.target << ' ' << ins.control << " 0x" << std::uppercase
     << std::hex << std::setw((imm_bits + 3) / 4) << std::setfill('0') << field;
  if (source != nullptr && (source->line > 0 || !source->text.empty())) {
    os << " # ";
    if (source->line > 0) os << "line " << std::dec << source->line << ": ";
    os << source->text;
  }
  return os.str();
}

void write_listing(const Program& program, std::ostream& out) {
  for (std::size_t k = 0; k < program.instructions.size(); ++k) {
    const SourceRef* src = program.has_source_map() ? &program.source_map[k] : nullptr;
    out << listing_line(program.instructions[k], program.config, src) << '\n';
  }
}

}  // namespace amaretto::isa
