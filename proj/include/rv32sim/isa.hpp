#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace rv32 {

// The 37 modeled RV32I instructions (FENCE, ECALL and EBREAK are excluded).
enum class Mnemonic : std::uint8_t {
  // R-type
  Add, Sub, Sll, Slt, Sltu, Xor, Srl, Sra, Or, And,
  // OP-IMM
  Addi, Slti, Sltiu, Xori, Ori, Andi, Slli, Srli, Srai,
  // LOAD
  Lb, Lh, Lw, Lbu, Lhu,
  // STORE
  Sb, Sh, Sw,
  // BRANCH
  Beq, Bne, Blt, Bge, Bltu, Bgeu,
  // Jumps and upper immediates
  Jalr, Jal, Lui, Auipc,
};

inline constexpr std::size_t kNumMnemonics = 37;

// ShiftI is the I-type layout with funct7 in bits 31..25 and a 5-bit shamt.
enum class Format : std::uint8_t { R, I, ShiftI, S, B, U, J };

namespace opcode {
inline constexpr std::uint32_t kOp = 0b0110011;
inline constexpr std::uint32_t kOpImm = 0b0010011;
inline constexpr std::uint32_t kLoad = 0b0000011;
inline constexpr std::uint32_t kStore = 0b0100011;
inline constexpr std::uint32_t kBranch = 0b1100011;
inline constexpr std::uint32_t kJalr = 0b1100111;
inline constexpr std::uint32_t kJal = 0b1101111;
inline constexpr std::uint32_t kLui = 0b0110111;
inline constexpr std::uint32_t kAuipc = 0b0010111;
}  // namespace opcode

// Static encoding row for one mnemonic. funct3 is unused for U/J formats and
// funct7 is only meaningful for R and ShiftI.
struct InstructionSpec {
  Mnemonic mnemonic;
  std::string_view name;
  Format format;
  std::uint32_t opcode;
  std::uint32_t funct3;
  std::uint32_t funct7;
};

inline constexpr std::array<InstructionSpec, kNumMnemonics> kInstructionSpecs{{
    {Mnemonic::Add, "add", Format::R, opcode::kOp, 0x0, 0x00},
    {Mnemonic::Sub, "sub", Format::R, opcode::kOp, 0x0, 0x20},
    {Mnemonic::Sll, "sll", Format::R, opcode::kOp, 0x1, 0x00},
    {Mnemonic::Slt, "slt", Format::R, opcode::kOp, 0x2, 0x00},
    {Mnemonic::Sltu, "sltu", Format::R, opcode::kOp, 0x3, 0x00},
    {Mnemonic::Xor, "xor", Format::R, opcode::kOp, 0x4, 0x00},
    {Mnemonic::Srl, "srl", Format::R, opcode::kOp, 0x5, 0x00},
    {Mnemonic::Sra, "sra", Format::R, opcode::kOp, 0x5, 0x20},
    {Mnemonic::Or, "or", Format::R, opcode::kOp, 0x6, 0x00},
    {Mnemonic::And, "and", Format::R, opcode::kOp, 0x7, 0x00},

    {Mnemonic::Addi, "addi", Format::I, opcode::kOpImm, 0x0, 0},
    {Mnemonic::Slti, "slti", Format::I, opcode::kOpImm, 0x2, 0},
    {Mnemonic::Sltiu, "sltiu", Format::I, opcode::kOpImm, 0x3, 0},
    {Mnemonic::Xori, "xori", Format::I, opcode::kOpImm, 0x4, 0},
    {Mnemonic::Ori, "ori", Format::I, opcode::kOpImm, 0x6, 0},
    {Mnemonic::Andi, "andi", Format::I, opcode::kOpImm, 0x7, 0},
    {Mnemonic::Slli, "slli", Format::ShiftI, opcode::kOpImm, 0x1, 0x00},
    {Mnemonic::Srli, "srli", Format::ShiftI, opcode::kOpImm, 0x5, 0x00},
    {Mnemonic::Srai, "srai", Format::ShiftI, opcode::kOpImm, 0x5, 0x20},

    {Mnemonic::Lb, "lb", Format::I, opcode::kLoad, 0x0, 0},
    {Mnemonic::Lh, "lh", Format::I, opcode::kLoad, 0x1, 0},
    {Mnemonic::Lw, "lw", Format::I, opcode::kLoad, 0x2, 0},
    {Mnemonic::Lbu, "lbu", Format::I, opcode::kLoad, 0x4, 0},
    {Mnemonic::Lhu, "lhu", Format::I, opcode::kLoad, 0x5, 0},

    {Mnemonic::Sb, "sb", Format::S, opcode::kStore, 0x0, 0},
    {Mnemonic::Sh, "sh", Format::S, opcode::kStore, 0x1, 0},
    {Mnemonic::Sw, "sw", Format::S, opcode::kStore, 0x2, 0},

    {Mnemonic::Beq, "beq", Format::B, opcode::kBranch, 0x0, 0},
    {Mnemonic::Bne, "bne", Format::B, opcode::kBranch, 0x1, 0},
    {Mnemonic::Blt, "blt", Format::B, opcode::kBranch, 0x4, 0},
    {Mnemonic::Bge, "bge", Format::B, opcode::kBranch, 0x5, 0},
    {Mnemonic::Bltu, "bltu", Format::B, opcode::kBranch, 0x6, 0},
    {Mnemonic::Bgeu, "bgeu", Format::B, opcode::kBranch, 0x7, 0},

    {Mnemonic::Jalr, "jalr", Format::I, opcode::kJalr, 0x0, 0},
    {Mnemonic::Jal, "jal", Format::J, opcode::kJal, 0, 0},
    {Mnemonic::Lui, "lui", Format::U, opcode::kLui, 0, 0},
    {Mnemonic::Auipc, "auipc", Format::U, opcode::kAuipc, 0, 0},
}};

constexpr const InstructionSpec& spec_of(Mnemonic m) noexcept {
  return kInstructionSpecs[static_cast<std::size_t>(m)];
}

constexpr std::string_view name_of(Mnemonic m) noexcept { return spec_of(m).name; }

constexpr Format format_of(Mnemonic m) noexcept { return spec_of(m).format; }

constexpr std::optional<Mnemonic> mnemonic_from_name(std::string_view name) noexcept {
  for (const auto& spec : kInstructionSpecs) {
    if (spec.name == name) return spec.mnemonic;
  }
  return std::nullopt;
}

// Table order must match the enum.
static_assert([] {
  for (std::size_t i = 0; i < kInstructionSpecs.size(); ++i) {
    if (static_cast<std::size_t>(kInstructionSpecs[i].mnemonic) != i) return false;
  }
  return true;
}());

}  // namespace rv32
