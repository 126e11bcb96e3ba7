#pragma once

#include <array>
#include <functional>
#include <vector>

#include "rv32sim/rv32sim.hpp"

namespace testutil {

using rv32::Mnemonic;
using rv32::Word;

// Calls the asm_* wrapper for m with args in its declared order (the third
// argument is ignored for U/J).
using Wrapper = std::function<Word(Word, Word, Word)>;

inline Wrapper wrapper_for(Mnemonic m) {
  using namespace rv32;
#define RV32_W3(name) [](Word a, Word b, Word c) { return asm_##name(a, b, c); }
#define RV32_W2(name) [](Word a, Word b, Word) { return asm_##name(a, b); }
  switch (m) {
    case Mnemonic::Add: return RV32_W3(add);
    case Mnemonic::Sub: return RV32_W3(sub);
    case Mnemonic::Sll: return RV32_W3(sll);
    case Mnemonic::Slt: return RV32_W3(slt);
    case Mnemonic::Sltu: return RV32_W3(sltu);
    case Mnemonic::Xor: return RV32_W3(xor);
    case Mnemonic::Srl: return RV32_W3(srl);
    case Mnemonic::Sra: return RV32_W3(sra);
    case Mnemonic::Or: return RV32_W3(or);
    case Mnemonic::And: return RV32_W3(and);
    case Mnemonic::Addi: return RV32_W3(addi);
    case Mnemonic::Slti: return RV32_W3(slti);
    case Mnemonic::Sltiu: return RV32_W3(sltiu);
    case Mnemonic::Xori: return RV32_W3(xori);
    case Mnemonic::Ori: return RV32_W3(ori);
    case Mnemonic::Andi: return RV32_W3(andi);
    case Mnemonic::Slli: return RV32_W3(slli);
    case Mnemonic::Srli: return RV32_W3(srli);
    case Mnemonic::Srai: return RV32_W3(srai);
    case Mnemonic::Lb: return RV32_W3(lb);
    case Mnemonic::Lh: return RV32_W3(lh);
    case Mnemonic::Lw: return RV32_W3(lw);
    case Mnemonic::Lbu: return RV32_W3(lbu);
    case Mnemonic::Lhu: return RV32_W3(lhu);
    case Mnemonic::Sb: return RV32_W3(sb);
    case Mnemonic::Sh: return RV32_W3(sh);
    case Mnemonic::Sw: return RV32_W3(sw);
    case Mnemonic::Beq: return RV32_W3(beq);
    case Mnemonic::Bne: return RV32_W3(bne);
    case Mnemonic::Blt: return RV32_W3(blt);
    case Mnemonic::Bge: return RV32_W3(bge);
    case Mnemonic::Bltu: return RV32_W3(bltu);
    case Mnemonic::Bgeu: return RV32_W3(bgeu);
    case Mnemonic::Jalr: return RV32_W3(jalr);
    case Mnemonic::Jal: return RV32_W2(jal);
    case Mnemonic::Lui: return RV32_W2(lui);
    case Mnemonic::Auipc: return RV32_W2(auipc);
  }
#undef RV32_W3
#undef RV32_W2
  return {};
}

// One inversion obligation: the decoder-side view of a field must equal the
// masked argument.
struct FieldCheck {
  const char* field;
  Word got;
  Word want;
};

// All constrained fields of asm_X(a, b, c) with their expected values.
inline std::vector<FieldCheck> field_obligations(Mnemonic m, Word a, Word b, Word c) {
  using namespace rv32;
  const Word w = wrapper_for(m)(a, b, c);
  const InstructionSpec& spec = spec_of(m);
  std::vector<FieldCheck> out{{"opcode", get_opcode(w), spec.opcode}};
  const auto f3 = [&] { out.push_back({"funct3", get_funct3(w), spec.funct3}); };
  switch (spec.format) {
    case Format::R:
      f3();
      out.push_back({"funct7", get_funct7(w), spec.funct7});
      out.push_back({"rs1", get_rs1(w), n05(a)});
      out.push_back({"rs2", get_rs2(w), n05(b)});
      out.push_back({"rd", get_rd(w), n05(c)});
      break;
    case Format::I:
      f3();
      out.push_back({"rs1", get_rs1(w), n05(a)});
      out.push_back({"imm_i", imm_i(w), sign_extend<12>(b)});
      out.push_back({"rd", get_rd(w), n05(c)});
      break;
    case Format::ShiftI:
      f3();
      out.push_back({"funct7", get_funct7(w), spec.funct7});
      out.push_back({"rs1", get_rs1(w), n05(a)});
      out.push_back({"shamt", get_shamt(w), n05(b)});
      out.push_back({"rd", get_rd(w), n05(c)});
      break;
    case Format::S:
      f3();
      out.push_back({"rs1", get_rs1(w), n05(a)});
      out.push_back({"rs2", get_rs2(w), n05(b)});
      out.push_back({"imm_s", imm_s(w), sign_extend<12>(c)});
      break;
    case Format::B:
      f3();
      out.push_back({"rs1", get_rs1(w), n05(a)});
      out.push_back({"rs2", get_rs2(w), n05(b)});
      out.push_back({"imm_b", imm_b(w), sign_extend<13>(c) & ~Word{1}});
      break;
    case Format::U:
      out.push_back({"imm_u", imm_u(w), a & 0xFFFFF000u});
      out.push_back({"rd", get_rd(w), n05(b)});
      break;
    case Format::J:
      out.push_back({"imm_j", imm_j(w), sign_extend<21>(a) & ~Word{1}});
      out.push_back({"rd", get_rd(w), n05(b)});
      break;
  }
  return out;
}

// The instruction decode(asm_X(a, b, c)) must produce.
inline rv32::Instruction expected_decode(Mnemonic m, Word a, Word b, Word c) {
  using namespace rv32;
  switch (format_of(m)) {
    case Format::R: return {m, n05(c), n05(a), n05(b), 0};
    case Format::I: return {m, n05(c), n05(a), 0, sign_extend<12>(b)};
    case Format::ShiftI: return {m, n05(c), n05(a), 0, n05(b)};
    case Format::S: return {m, 0, n05(a), n05(b), sign_extend<12>(c)};
    case Format::B: return {m, 0, n05(a), n05(b), sign_extend<13>(c) & ~Word{1}};
    case Format::U: return {m, n05(b), 0, 0, a & 0xFFFFF000u};
    case Format::J: return {m, n05(b), 0, 0, sign_extend<21>(a) & ~Word{1}};
  }
  return {};
}

}  // namespace testutil
