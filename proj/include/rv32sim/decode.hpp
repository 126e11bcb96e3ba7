#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>

#include "rv32sim/bits.hpp"
#include "rv32sim/isa.hpp"

namespace rv32 {

// Field extractors. Each reads only its own bit range.
constexpr Word get_opcode(Word w) noexcept { return bit_range(w, 6, 0); }
constexpr RegIndex get_rd(Word w) noexcept { return bit_range(w, 11, 7); }
constexpr Word get_funct3(Word w) noexcept { return bit_range(w, 14, 12); }
constexpr RegIndex get_rs1(Word w) noexcept { return bit_range(w, 19, 15); }
constexpr RegIndex get_rs2(Word w) noexcept { return bit_range(w, 24, 20); }
constexpr Word get_funct7(Word w) noexcept { return bit_range(w, 31, 25); }
constexpr Word get_shamt(Word w) noexcept { return bit_range(w, 24, 20); }

// Immediate reconstruction, sign-extended to 32 bits except imm_u which is
// the already-shifted upper immediate.
constexpr Word imm_i(Word w) noexcept { return sign_extend<12>(bit_range(w, 31, 20)); }

constexpr Word imm_s(Word w) noexcept {
  return sign_extend<12>((bit_range(w, 31, 25) << 5) | bit_range(w, 11, 7));
}

constexpr Word imm_b(Word w) noexcept {
  return sign_extend<13>((bit_range(w, 31, 31) << 12) | (bit_range(w, 7, 7) << 11) |
                         (bit_range(w, 30, 25) << 5) | (bit_range(w, 11, 8) << 1));
}

constexpr Word imm_u(Word w) noexcept { return w & 0xFFFFF000u; }

constexpr Word imm_j(Word w) noexcept {
  return sign_extend<21>((bit_range(w, 31, 31) << 20) | (bit_range(w, 19, 12) << 12) |
                         (bit_range(w, 20, 20) << 11) | (bit_range(w, 30, 21) << 1));
}

// A decoded instruction. Fields the format does not have are zero:
//   R       rd rs1 rs2
//   I       rd rs1 imm
//   ShiftI  rd rs1 imm (= shamt)
//   S, B    rs1 rs2 imm
//   U, J    rd imm
// imm is always the fully reconstructed 32-bit value.
struct Instruction {
  Mnemonic op = Mnemonic::Add;
  RegIndex rd = 0;
  RegIndex rs1 = 0;
  RegIndex rs2 = 0;
  Word imm = 0;

  Format format() const noexcept { return format_of(op); }

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

namespace detail {

constexpr Instruction r_type(Mnemonic m, Word w) noexcept { return {m, get_rd(w), get_rs1(w), get_rs2(w), 0}; }
constexpr Instruction i_type(Mnemonic m, Word w) noexcept { return {m, get_rd(w), get_rs1(w), 0, imm_i(w)}; }
constexpr Instruction shift_type(Mnemonic m, Word w) noexcept { return {m, get_rd(w), get_rs1(w), 0, get_shamt(w)}; }
constexpr Instruction s_type(Mnemonic m, Word w) noexcept { return {m, 0, get_rs1(w), get_rs2(w), imm_s(w)}; }
constexpr Instruction b_type(Mnemonic m, Word w) noexcept { return {m, 0, get_rs1(w), get_rs2(w), imm_b(w)}; }

constexpr std::optional<Instruction> decode_op(Word w) noexcept {
  const Word f3 = get_funct3(w);
  const Word f7 = get_funct7(w);
  if (f7 == 0x00) {
    switch (f3) {
      case 0x0: return r_type(Mnemonic::Add, w);
      case 0x1: return r_type(Mnemonic::Sll, w);
      case 0x2: return r_type(Mnemonic::Slt, w);
      case 0x3: return r_type(Mnemonic::Sltu, w);
      case 0x4: return r_type(Mnemonic::Xor, w);
      case 0x5: return r_type(Mnemonic::Srl, w);
      case 0x6: return r_type(Mnemonic::Or, w);
      case 0x7: return r_type(Mnemonic::And, w);
    }
  } else if (f7 == 0x20) {
    if (f3 == 0x0) return r_type(Mnemonic::Sub, w);
    if (f3 == 0x5) return r_type(Mnemonic::Sra, w);
  }
  return std::nullopt;
}

constexpr std::optional<Instruction> decode_op_imm(Word w) noexcept {
  const Word f7 = get_funct7(w);
  switch (get_funct3(w)) {
    case 0x0: return i_type(Mnemonic::Addi, w);
    case 0x2: return i_type(Mnemonic::Slti, w);
    case 0x3: return i_type(Mnemonic::Sltiu, w);
    case 0x4: return i_type(Mnemonic::Xori, w);
    case 0x6: return i_type(Mnemonic::Ori, w);
    case 0x7: return i_type(Mnemonic::Andi, w);
    case 0x1:
      if (f7 == 0x00) return shift_type(Mnemonic::Slli, w);
      break;
    case 0x5:
      if (f7 == 0x00) return shift_type(Mnemonic::Srli, w);
      if (f7 == 0x20) return shift_type(Mnemonic::Srai, w);
      break;
  }
  return std::nullopt;
}

constexpr std::optional<Instruction> decode_load(Word w) noexcept {
  switch (get_funct3(w)) {
    case 0x0: return i_type(Mnemonic::Lb, w);
    case 0x1: return i_type(Mnemonic::Lh, w);
    case 0x2: return i_type(Mnemonic::Lw, w);
    case 0x4: return i_type(Mnemonic::Lbu, w);
    case 0x5: return i_type(Mnemonic::Lhu, w);
  }
  return std::nullopt;
}

constexpr std::optional<Instruction> decode_store(Word w) noexcept {
  switch (get_funct3(w)) {
    case 0x0: return s_type(Mnemonic::Sb, w);
    case 0x1: return s_type(Mnemonic::Sh, w);
    case 0x2: return s_type(Mnemonic::Sw, w);
  }
  return std::nullopt;
}

constexpr std::optional<Instruction> decode_branch(Word w) noexcept {
  switch (get_funct3(w)) {
    case 0x0: return b_type(Mnemonic::Beq, w);
    case 0x1: return b_type(Mnemonic::Bne, w);
    case 0x4: return b_type(Mnemonic::Blt, w);
    case 0x5: return b_type(Mnemonic::Bge, w);
    case 0x6: return b_type(Mnemonic::Bltu, w);
    case 0x7: return b_type(Mnemonic::Bgeu, w);
  }
  return std::nullopt;
}

}  // namespace detail

// Identifies the instruction in w, or nullopt when w is not one of the 37
// modeled instructions (FENCE, ECALL, EBREAK and every unassigned encoding).
constexpr std::optional<Instruction> decode(Word w) noexcept {
  switch (get_opcode(w)) {
    case opcode::kOp: return detail::decode_op(w);
    case opcode::kOpImm: return detail::decode_op_imm(w);
    case opcode::kLoad: return detail::decode_load(w);
    case opcode::kStore: return detail::decode_store(w);
    case opcode::kBranch: return detail::decode_branch(w);
    case opcode::kJalr:
      if (get_funct3(w) == 0) return detail::i_type(Mnemonic::Jalr, w);
      return std::nullopt;
    case opcode::kJal: return Instruction{Mnemonic::Jal, get_rd(w), 0, 0, imm_j(w)};
    case opcode::kLui: return Instruction{Mnemonic::Lui, get_rd(w), 0, 0, imm_u(w)};
    case opcode::kAuipc: return Instruction{Mnemonic::Auipc, get_rd(w), 0, 0, imm_u(w)};
  }
  return std::nullopt;
}

// Assembly-style rendering, e.g. "add x3, x1, x2" or "lw x5, -4(x2)".
inline std::string to_string(const Instruction& in) {
  std::ostringstream os;
  const auto x = [](RegIndex r) { return "x" + std::to_string(r); };
  const auto simm = [&] { return std::to_string(as_signed(in.imm)); };
  os << name_of(in.op) << ' ';
  switch (in.format()) {
    case Format::R: os << x(in.rd) << ", " << x(in.rs1) << ", " << x(in.rs2); break;
    case Format::ShiftI: os << x(in.rd) << ", " << x(in.rs1) << ", " << in.imm; break;
    case Format::I:
      if (in.op == Mnemonic::Jalr || spec_of(in.op).opcode == opcode::kLoad) {
        os << x(in.rd) << ", " << simm() << '(' << x(in.rs1) << ')';
      } else {
        os << x(in.rd) << ", " << x(in.rs1) << ", " << simm();
      }
      break;
    case Format::S: os << x(in.rs2) << ", " << simm() << '(' << x(in.rs1) << ')'; break;
    case Format::B: os << x(in.rs1) << ", " << x(in.rs2) << ", " << simm(); break;
    case Format::U: os << x(in.rd) << ", 0x" << std::hex << (in.imm >> 12); break;
    case Format::J: os << x(in.rd) << ", " << simm(); break;
  }
  return os.str();
}

}  // namespace rv32
