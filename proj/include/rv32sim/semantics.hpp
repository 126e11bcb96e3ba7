#pragma once

#include <cassert>

#include "rv32sim/bits.hpp"
#include "rv32sim/decode.hpp"
#include "rv32sim/isa.hpp"
#include "rv32sim/machine_state.hpp"

namespace rv32 {

// Instruction semantic functions. Each takes already decoded fields (register
// indices in 0..31, immediates sign-extended) and a running state, and returns
// the state after exactly one instruction. All arithmetic wraps modulo 2^32.

namespace detail {

// Shared by the register-register and register-immediate forms.
constexpr Word alu(Mnemonic m, Word a, Word b) noexcept {
  switch (m) {
    case Mnemonic::Add: case Mnemonic::Addi: return a + b;
    case Mnemonic::Sub: return a - b;
    case Mnemonic::Sll: case Mnemonic::Slli: return a << (b & 0x1F);
    case Mnemonic::Slt: case Mnemonic::Slti: return as_signed(a) < as_signed(b) ? 1 : 0;
    case Mnemonic::Sltu: case Mnemonic::Sltiu: return a < b ? 1 : 0;
    case Mnemonic::Xor: case Mnemonic::Xori: return a ^ b;
    case Mnemonic::Srl: case Mnemonic::Srli: return a >> (b & 0x1F);
    case Mnemonic::Sra: case Mnemonic::Srai:
      return static_cast<Word>(as_signed(a) >> (b & 0x1F));
    case Mnemonic::Or: case Mnemonic::Ori: return a | b;
    case Mnemonic::And: case Mnemonic::Andi: return a & b;
    default: break;
  }
  assert(false && "not an ALU mnemonic");
  return 0;
}

constexpr bool branch_taken(Mnemonic m, Word a, Word b) noexcept {
  switch (m) {
    case Mnemonic::Beq: return a == b;
    case Mnemonic::Bne: return a != b;
    case Mnemonic::Blt: return as_signed(a) < as_signed(b);
    case Mnemonic::Bge: return as_signed(a) >= as_signed(b);
    case Mnemonic::Bltu: return a < b;
    case Mnemonic::Bgeu: return a >= b;
    default: break;
  }
  assert(false && "not a branch mnemonic");
  return false;
}

inline void advance_pc(MachineState& s) noexcept { s.set_pc(s.pc() + 4); }

}  // namespace detail

// ADD SUB SLL SLT SLTU XOR SRL SRA OR AND
inline MachineState exec_op_r(Mnemonic m, RegIndex rd, RegIndex rs1, RegIndex rs2, MachineState s) {
  s.set_reg(rd, detail::alu(m, s.reg(rs1), s.reg(rs2)));
  detail::advance_pc(s);
  return s;
}

// ADDI SLTI SLTIU XORI ORI ANDI SLLI SRLI SRAI; imm is the shamt for shifts.
inline MachineState exec_op_imm(Mnemonic m, RegIndex rd, RegIndex rs1, Word imm, MachineState s) {
  s.set_reg(rd, detail::alu(m, s.reg(rs1), imm));
  detail::advance_pc(s);
  return s;
}

// LB LH LW LBU LHU
inline MachineState exec_load(Mnemonic m, RegIndex rd, RegIndex rs1, Word imm, MachineState s) {
  const Word addr = s.reg(rs1) + imm;
  const Memory& mem = s.mem();
  Word value = 0;
  switch (m) {
    case Mnemonic::Lb: value = sign_extend<8>(mem.read8(addr)); break;
    case Mnemonic::Lh: value = sign_extend<16>(mem.read16(addr)); break;
    case Mnemonic::Lw: value = mem.read32(addr); break;
    case Mnemonic::Lbu: value = mem.read8(addr); break;
    case Mnemonic::Lhu: value = mem.read16(addr); break;
    default: assert(false && "not a load mnemonic");
  }
  s.set_reg(rd, value);
  detail::advance_pc(s);
  return s;
}

// SB SH SW
inline MachineState exec_store(Mnemonic m, RegIndex rs1, RegIndex rs2, Word imm, MachineState s) {
  const Word addr = s.reg(rs1) + imm;
  const Word value = s.reg(rs2);
  switch (m) {
    case Mnemonic::Sb: s.mem().write8(addr, n08(value)); break;
    case Mnemonic::Sh: s.mem().write16(addr, n16(value)); break;
    case Mnemonic::Sw: s.mem().write32(addr, value); break;
    default: assert(false && "not a store mnemonic");
  }
  detail::advance_pc(s);
  return s;
}

// BEQ BNE BLT BGE BLTU BGEU
inline MachineState exec_branch(Mnemonic m, RegIndex rs1, RegIndex rs2, Word imm, MachineState s) {
  if (detail::branch_taken(m, s.reg(rs1), s.reg(rs2))) {
    s.set_pc(s.pc() + imm);
  } else {
    detail::advance_pc(s);
  }
  return s;
}

inline MachineState exec_jal(RegIndex rd, Word imm, MachineState s) {
  const Word link = s.pc() + 4;
  s.set_pc(s.pc() + imm);
  s.set_reg(rd, link);
  return s;
}

// Target is read before rd is written, so rd == rs1 sees the old value.
inline MachineState exec_jalr(RegIndex rd, RegIndex rs1, Word imm, MachineState s) {
  const Word link = s.pc() + 4;
  const Word target = (s.reg(rs1) + imm) & ~Word{1};
  s.set_pc(target);
  s.set_reg(rd, link);
  return s;
}

inline MachineState exec_lui(RegIndex rd, Word imm, MachineState s) {
  s.set_reg(rd, imm);
  detail::advance_pc(s);
  return s;
}

inline MachineState exec_auipc(RegIndex rd, Word imm, MachineState s) {
  s.set_reg(rd, s.pc() + imm);
  detail::advance_pc(s);
  return s;
}

// Dispatches a decoded instruction to its semantic function.
inline MachineState execute(const Instruction& in, MachineState s) {
  switch (in.format()) {
    case Format::R: return exec_op_r(in.op, in.rd, in.rs1, in.rs2, std::move(s));
    case Format::ShiftI: return exec_op_imm(in.op, in.rd, in.rs1, in.imm, std::move(s));
    case Format::I:
      if (in.op == Mnemonic::Jalr) return exec_jalr(in.rd, in.rs1, in.imm, std::move(s));
      if (spec_of(in.op).opcode == opcode::kLoad) return exec_load(in.op, in.rd, in.rs1, in.imm, std::move(s));
      return exec_op_imm(in.op, in.rd, in.rs1, in.imm, std::move(s));
    case Format::S: return exec_store(in.op, in.rs1, in.rs2, in.imm, std::move(s));
    case Format::B: return exec_branch(in.op, in.rs1, in.rs2, in.imm, std::move(s));
    case Format::U:
      if (in.op == Mnemonic::Lui) return exec_lui(in.rd, in.imm, std::move(s));
      return exec_auipc(in.rd, in.imm, std::move(s));
    case Format::J: return exec_jal(in.rd, in.imm, std::move(s));
  }
  return s;
}

}  // namespace rv32
