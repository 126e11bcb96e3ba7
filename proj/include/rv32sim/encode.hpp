#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

#include "rv32sim/bits.hpp"
#include "rv32sim/decode.hpp"
#include "rv32sim/isa.hpp"

namespace rv32 {

// Format encoders. Register arguments keep their low 5 bits and immediates
// are truncated to the field width, so every argument tuple encodes.
constexpr Word encode_r(const InstructionSpec& spec, Word rs1, Word rs2, Word rd) noexcept {
  return (spec.funct7 << 25) | (n05(rs2) << 20) | (n05(rs1) << 15) | (spec.funct3 << 12) |
         (n05(rd) << 7) | spec.opcode;
}

constexpr Word encode_i(const InstructionSpec& spec, Word rs1, Word imm, Word rd) noexcept {
  return (bit_range(imm, 11, 0) << 20) | (n05(rs1) << 15) | (spec.funct3 << 12) | (n05(rd) << 7) |
         spec.opcode;
}

constexpr Word encode_shift(const InstructionSpec& spec, Word rs1, Word shamt, Word rd) noexcept {
  return (spec.funct7 << 25) | (n05(shamt) << 20) | (n05(rs1) << 15) | (spec.funct3 << 12) |
         (n05(rd) << 7) | spec.opcode;
}

constexpr Word encode_s(const InstructionSpec& spec, Word rs1, Word rs2, Word imm) noexcept {
  return (bit_range(imm, 11, 5) << 25) | (n05(rs2) << 20) | (n05(rs1) << 15) |
         (spec.funct3 << 12) | (bit_range(imm, 4, 0) << 7) | spec.opcode;
}

// imm is a byte offset; bit 0 has no slot in the format and is dropped.
constexpr Word encode_b(const InstructionSpec& spec, Word rs1, Word rs2, Word imm) noexcept {
  return (bit_range(imm, 12, 12) << 31) | (bit_range(imm, 10, 5) << 25) | (n05(rs2) << 20) |
         (n05(rs1) << 15) | (spec.funct3 << 12) | (bit_range(imm, 4, 1) << 8) |
         (bit_range(imm, 11, 11) << 7) | spec.opcode;
}

// imm is the 32-bit value whose bits 31..12 form the upper immediate.
constexpr Word encode_u(const InstructionSpec& spec, Word imm, Word rd) noexcept {
  return (imm & 0xFFFFF000u) | (n05(rd) << 7) | spec.opcode;
}

constexpr Word encode_j(const InstructionSpec& spec, Word imm, Word rd) noexcept {
  return (bit_range(imm, 20, 20) << 31) | (bit_range(imm, 10, 1) << 21) |
         (bit_range(imm, 11, 11) << 20) | (bit_range(imm, 19, 12) << 12) | (n05(rd) << 7) |
         spec.opcode;
}

// Per-instruction encoders. Argument order by format:
//   R: (rs1, rs2, rd)   I and loads, jalr: (rs1, imm, rd)   shifts: (rs1, shamt, rd)
//   S, B: (rs1, rs2, imm)   U, J: (imm, rd)
constexpr Word asm_add(Word rs1, Word rs2, Word rd) noexcept { return encode_r(spec_of(Mnemonic::Add), rs1, rs2, rd); }
constexpr Word asm_sub(Word rs1, Word rs2, Word rd) noexcept { return encode_r(spec_of(Mnemonic::Sub), rs1, rs2, rd); }
constexpr Word asm_sll(Word rs1, Word rs2, Word rd) noexcept { return encode_r(spec_of(Mnemonic::Sll), rs1, rs2, rd); }
constexpr Word asm_slt(Word rs1, Word rs2, Word rd) noexcept { return encode_r(spec_of(Mnemonic::Slt), rs1, rs2, rd); }
constexpr Word asm_sltu(Word rs1, Word rs2, Word rd) noexcept { return encode_r(spec_of(Mnemonic::Sltu), rs1, rs2, rd); }
constexpr Word asm_xor(Word rs1, Word rs2, Word rd) noexcept { return encode_r(spec_of(Mnemonic::Xor), rs1, rs2, rd); }
constexpr Word asm_srl(Word rs1, Word rs2, Word rd) noexcept { return encode_r(spec_of(Mnemonic::Srl), rs1, rs2, rd); }
constexpr Word asm_sra(Word rs1, Word rs2, Word rd) noexcept { return encode_r(spec_of(Mnemonic::Sra), rs1, rs2, rd); }
constexpr Word asm_or(Word rs1, Word rs2, Word rd) noexcept { return encode_r(spec_of(Mnemonic::Or), rs1, rs2, rd); }
constexpr Word asm_and(Word rs1, Word rs2, Word rd) noexcept { return encode_r(spec_of(Mnemonic::And), rs1, rs2, rd); }

constexpr Word asm_addi(Word rs1, Word imm, Word rd) noexcept { return encode_i(spec_of(Mnemonic::Addi), rs1, imm, rd); }
constexpr Word asm_slti(Word rs1, Word imm, Word rd) noexcept { return encode_i(spec_of(Mnemonic::Slti), rs1, imm, rd); }
constexpr Word asm_sltiu(Word rs1, Word imm, Word rd) noexcept { return encode_i(spec_of(Mnemonic::Sltiu), rs1, imm, rd); }
constexpr Word asm_xori(Word rs1, Word imm, Word rd) noexcept { return encode_i(spec_of(Mnemonic::Xori), rs1, imm, rd); }
constexpr Word asm_ori(Word rs1, Word imm, Word rd) noexcept { return encode_i(spec_of(Mnemonic::Ori), rs1, imm, rd); }
constexpr Word asm_andi(Word rs1, Word imm, Word rd) noexcept { return encode_i(spec_of(Mnemonic::Andi), rs1, imm, rd); }
constexpr Word asm_slli(Word rs1, Word shamt, Word rd) noexcept { return encode_shift(spec_of(Mnemonic::Slli), rs1, shamt, rd); }
constexpr Word asm_srli(Word rs1, Word shamt, Word rd) noexcept { return encode_shift(spec_of(Mnemonic::Srli), rs1, shamt, rd); }
constexpr Word asm_srai(Word rs1, Word shamt, Word rd) noexcept { return encode_shift(spec_of(Mnemonic::Srai), rs1, shamt, rd); }

constexpr Word asm_lb(Word rs1, Word imm, Word rd) noexcept { return encode_i(spec_of(Mnemonic::Lb), rs1, imm, rd); }
constexpr Word asm_lh(Word rs1, Word imm, Word rd) noexcept { return encode_i(spec_of(Mnemonic::Lh), rs1, imm, rd); }
constexpr Word asm_lw(Word rs1, Word imm, Word rd) noexcept { return encode_i(spec_of(Mnemonic::Lw), rs1, imm, rd); }
constexpr Word asm_lbu(Word rs1, Word imm, Word rd) noexcept { return encode_i(spec_of(Mnemonic::Lbu), rs1, imm, rd); }
constexpr Word asm_lhu(Word rs1, Word imm, Word rd) noexcept { return encode_i(spec_of(Mnemonic::Lhu), rs1, imm, rd); }

constexpr Word asm_sb(Word rs1, Word rs2, Word imm) noexcept { return encode_s(spec_of(Mnemonic::Sb), rs1, rs2, imm); }
constexpr Word asm_sh(Word rs1, Word rs2, Word imm) noexcept { return encode_s(spec_of(Mnemonic::Sh), rs1, rs2, imm); }
constexpr Word asm_sw(Word rs1, Word rs2, Word imm) noexcept { return encode_s(spec_of(Mnemonic::Sw), rs1, rs2, imm); }

constexpr Word asm_beq(Word rs1, Word rs2, Word imm) noexcept { return encode_b(spec_of(Mnemonic::Beq), rs1, rs2, imm); }
constexpr Word asm_bne(Word rs1, Word rs2, Word imm) noexcept { return encode_b(spec_of(Mnemonic::Bne), rs1, rs2, imm); }
constexpr Word asm_blt(Word rs1, Word rs2, Word imm) noexcept { return encode_b(spec_of(Mnemonic::Blt), rs1, rs2, imm); }
constexpr Word asm_bge(Word rs1, Word rs2, Word imm) noexcept { return encode_b(spec_of(Mnemonic::Bge), rs1, rs2, imm); }
constexpr Word asm_bltu(Word rs1, Word rs2, Word imm) noexcept { return encode_b(spec_of(Mnemonic::Bltu), rs1, rs2, imm); }
constexpr Word asm_bgeu(Word rs1, Word rs2, Word imm) noexcept { return encode_b(spec_of(Mnemonic::Bgeu), rs1, rs2, imm); }

constexpr Word asm_jalr(Word rs1, Word imm, Word rd) noexcept { return encode_i(spec_of(Mnemonic::Jalr), rs1, imm, rd); }
constexpr Word asm_jal(Word imm, Word rd) noexcept { return encode_j(spec_of(Mnemonic::Jal), imm, rd); }
constexpr Word asm_lui(Word imm, Word rd) noexcept { return encode_u(spec_of(Mnemonic::Lui), imm, rd); }
constexpr Word asm_auipc(Word imm, Word rd) noexcept { return encode_u(spec_of(Mnemonic::Auipc), imm, rd); }

// Encodes a decoded instruction, using the fields its format owns.
constexpr Word encode(const Instruction& in) noexcept {
  const InstructionSpec& spec = spec_of(in.op);
  switch (spec.format) {
    case Format::R: return encode_r(spec, in.rs1, in.rs2, in.rd);
    case Format::I: return encode_i(spec, in.rs1, in.imm, in.rd);
    case Format::ShiftI: return encode_shift(spec, in.rs1, in.imm, in.rd);
    case Format::S: return encode_s(spec, in.rs1, in.rs2, in.imm);
    case Format::B: return encode_b(spec, in.rs1, in.rs2, in.imm);
    case Format::U: return encode_u(spec, in.imm, in.rd);
    case Format::J: return encode_j(spec, in.imm, in.rd);
  }
  return 0;
}

// Number of arguments the encoder for this format takes.
constexpr std::size_t arity(Format f) noexcept {
  return (f == Format::U || f == Format::J) ? 2 : 3;
}

class EncodeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void require_range(bool ok, std::string_view what, std::int64_t v) {
  if (!ok) throw EncodeError(std::string(what) + " out of range: " + std::to_string(v));
}

inline void check_reg(std::int64_t v) { require_range(v >= 0 && v <= 31, "register", v); }

inline void check_strict(Format f, std::span<const std::int64_t> a) {
  switch (f) {
    case Format::R:
      for (auto r : a) check_reg(r);
      break;
    case Format::I:
    case Format::ShiftI:
      check_reg(a[0]);
      check_reg(a[2]);
      if (f == Format::I) {
        require_range(a[1] >= -2048 && a[1] <= 2047, "12-bit immediate", a[1]);
      } else {
        require_range(a[1] >= 0 && a[1] <= 31, "shift amount", a[1]);
      }
      break;
    case Format::S:
      check_reg(a[0]);
      check_reg(a[1]);
      require_range(a[2] >= -2048 && a[2] <= 2047, "12-bit immediate", a[2]);
      break;
    case Format::B:
      check_reg(a[0]);
      check_reg(a[1]);
      require_range(a[2] >= -4096 && a[2] <= 4094 && a[2] % 2 == 0, "branch offset", a[2]);
      break;
    case Format::U:
      require_range(a[0] >= INT32_MIN && a[0] <= UINT32_MAX && (a[0] & 0xFFF) == 0,
                    "upper immediate", a[0]);
      check_reg(a[1]);
      break;
    case Format::J:
      require_range(a[0] >= -(1 << 20) && a[0] <= (1 << 20) - 2 && a[0] % 2 == 0, "jump offset",
                    a[0]);
      check_reg(a[1]);
      break;
  }
}

}  // namespace detail

// Encodes mnemonic m from arguments in its asm_* order. Arguments are
// truncated to the field widths unless strict is set, in which case any value
// that would not survive the round trip throws EncodeError.
inline Word assemble(Mnemonic m, std::span<const std::int64_t> args, bool strict = false) {
  const InstructionSpec& spec = spec_of(m);
  if (args.size() != arity(spec.format)) {
    throw EncodeError(std::string(spec.name) + " takes " + std::to_string(arity(spec.format)) +
                      " arguments, got " + std::to_string(args.size()));
  }
  if (strict) detail::check_strict(spec.format, args);
  const auto w = [&](std::size_t i) { return static_cast<Word>(args[i]); };
  switch (spec.format) {
    case Format::R: return encode_r(spec, w(0), w(1), w(2));
    case Format::I: return encode_i(spec, w(0), w(1), w(2));
    case Format::ShiftI: return encode_shift(spec, w(0), w(1), w(2));
    case Format::S: return encode_s(spec, w(0), w(1), w(2));
    case Format::B: return encode_b(spec, w(0), w(1), w(2));
    case Format::U: return encode_u(spec, w(0), w(1));
    case Format::J: return encode_j(spec, w(0), w(1));
  }
  return 0;
}

}  // namespace rv32
