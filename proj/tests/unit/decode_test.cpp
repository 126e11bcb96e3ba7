#include <gtest/gtest.h>

#include <set>

#include "golden.hpp"
#include "random_state.hpp"
#include "rv32sim/rv32sim.hpp"

namespace {

using namespace rv32;
using testutil::Rng;

TEST(Decode, ExtractorExamples) {
  EXPECT_EQ(get_opcode(0x00000033), 0b0110011u);
  // add x3, x1, x2
  EXPECT_EQ(get_rd(0x002081B3), 3u);
  EXPECT_EQ(get_rs1(0x002081B3), 1u);
  EXPECT_EQ(get_rs2(0x002081B3), 2u);
  EXPECT_EQ(get_funct3(0x002081B3), 0u);
  EXPECT_EQ(get_funct7(0x002081B3), 0u);
  EXPECT_EQ(get_funct7(0), 0u);
  EXPECT_EQ(get_rd(0), 0u);
}

TEST(Decode, ImmediateExamples) {
  EXPECT_EQ(imm_i(0xFFF00013), 0xFFFFFFFFu);  // addi x0, x0, -1
  EXPECT_EQ(imm_u(0x000000B7), 0u);           // lui x1, 0
  EXPECT_EQ(imm_b(asm_beq(1, 2, 0xFFE)) & 1, 0u);
  EXPECT_EQ(imm_b(asm_beq(1, 2, 0xFFE)), 0xFFEu);
  EXPECT_EQ(imm_b(0x80208063), static_cast<Word>(-4096));  // beq x1, x2, -4096
  EXPECT_EQ(imm_j(0x7FFFF2EF), 1048574u);                  // jal x5, 1048574
  EXPECT_EQ(imm_j(0xFFFFF2EF), static_cast<Word>(-2));     // jal x5, -2
  EXPECT_EQ(imm_s(0x8020A023), static_cast<Word>(-2048));  // sw x2, -2048(x1)
}

TEST(Decode, Examples) {
  EXPECT_EQ(decode(0x002081B3), (Instruction{Mnemonic::Add, 3, 1, 2, 0}));
  EXPECT_FALSE(decode(0x00000000).has_value());
  EXPECT_EQ(decode(0x123453B7), (Instruction{Mnemonic::Lui, 7, 0, 0, 0x12345000}));
}

TEST(Decode, EnvironmentInstructionsAreIllegal) {
  EXPECT_FALSE(decode(0x00000073).has_value());  // ecall
  EXPECT_FALSE(decode(0x00100073).has_value());  // ebreak
  EXPECT_FALSE(decode(0x0FF0000F).has_value());  // fence
}

TEST(Decode, StrictShiftAndJalrRows) {
  EXPECT_FALSE(decode(asm_slli(1, 3, 2) | (1u << 30)).has_value());
  EXPECT_FALSE(decode(asm_srli(1, 3, 2) | (1u << 25)).has_value());
  EXPECT_FALSE(decode(asm_jalr(1, 0, 2) | (1u << 12)).has_value());
  EXPECT_EQ(decode(asm_srai(1, 3, 2))->op, Mnemonic::Srai);
}

TEST(Decode, ExtractorsReadOnlyTheirBits) {
  struct Field {
    Word (*get)(Word);
    unsigned hi, lo;
  };
  const Field fields[] = {
      {[](Word w) { return get_opcode(w); }, 6, 0},  {[](Word w) { return get_rd(w); }, 11, 7},
      {[](Word w) { return get_funct3(w); }, 14, 12}, {[](Word w) { return get_rs1(w); }, 19, 15},
      {[](Word w) { return get_rs2(w); }, 24, 20},   {[](Word w) { return get_funct7(w); }, 31, 25},
  };
  Rng rng(20);
  for (int n = 0; n < 20000; ++n) {
    const Word w = rng.word();
    const unsigned bit = static_cast<unsigned>(rng.below(32));
    for (const auto& f : fields) {
      if (bit < f.lo || bit > f.hi) ASSERT_EQ(f.get(w ^ (1u << bit)), f.get(w));
    }
  }
}

TEST(Decode, RTypeFieldsPartitionTheWord) {
  Rng rng(21);
  for (int n = 0; n < 100000; ++n) {
    const Word w = rng.word();
    const Word rebuilt = (get_funct7(w) << 25) + (get_rs2(w) << 20) + (get_rs1(w) << 15) + (get_funct3(w) << 12) +
                         (get_rd(w) << 7) + get_opcode(w);
    ASSERT_EQ(rebuilt, w);
  }
}

TEST(Decode, SignExtensionFollowsBit31) {
  Rng rng(22);
  for (int n = 0; n < 100000; ++n) {
    const Word w = rng.word();
    const bool neg = (w >> 31) != 0;
    ASSERT_EQ(as_signed(imm_i(w)) < 0, neg);
    ASSERT_EQ(as_signed(imm_s(w)) < 0, neg);
    ASSERT_EQ(as_signed(imm_b(w)) < 0, neg);
    ASSERT_EQ(as_signed(imm_j(w)) < 0, neg);
    ASSERT_EQ(imm_b(w) & 1, 0u);
    ASSERT_EQ(imm_j(w) & 1, 0u);
    ASSERT_EQ(imm_u(w) & 0xFFF, 0u);
    ASSERT_GE(as_signed(imm_b(w)), -4096);
    ASSERT_LE(as_signed(imm_b(w)), 4094);
    ASSERT_GE(as_signed(imm_j(w)), -(1 << 20));
    ASSERT_LE(as_signed(imm_j(w)), (1 << 20) - 2);
  }
}

// Which table rows accept the (opcode, funct3, funct7) of w.
std::vector<Mnemonic> matching_rows(Word w) {
  std::vector<Mnemonic> out;
  for (const auto& spec : kInstructionSpecs) {
    if (spec.opcode != get_opcode(w)) continue;
    const bool has_f3 = spec.format != Format::U && spec.format != Format::J;
    const bool has_f7 = spec.format == Format::R || spec.format == Format::ShiftI;
    if (has_f3 && spec.funct3 != get_funct3(w)) continue;
    if (has_f7 && spec.funct7 != get_funct7(w)) continue;
    out.push_back(spec.mnemonic);
  }
  return out;
}

TEST(Decode, ExhaustiveRowScanAgreesWithTable) {
  Rng rng(23);
  std::set<Mnemonic> seen;
  for (Word op = 0; op < 128; ++op) {
    for (Word f3 = 0; f3 < 8; ++f3) {
      for (Word f7 = 0; f7 < 128; ++f7) {
        const Word w = (f7 << 25) | (rng.word() & 0x01FF8F80u) | (f3 << 12) | op;
        const auto rows = matching_rows(w);
        ASSERT_LE(rows.size(), 1u) << std::hex << w;
        const auto d = decode(w);
        if (rows.empty()) {
          ASSERT_FALSE(d.has_value()) << std::hex << w;
        } else {
          ASSERT_TRUE(d.has_value()) << std::hex << w;
          ASSERT_EQ(d->op, rows.front()) << std::hex << w;
          seen.insert(d->op);
        }
      }
    }
  }
  EXPECT_EQ(seen.size(), kNumMnemonics);
}

TEST(Decode, TotalOnRandomWordsAndReencodes) {
  Rng rng(24);
  for (int n = 0; n < 1000000; ++n) {
    const Word w = rng.word();
    const auto d = decode(w);
    if (!d) continue;
    // Re-encoding reproduces w on every bit the format owns; U/J own all bits.
    ASSERT_EQ(encode(*d), w) << std::hex << w;
  }
}

TEST(Decode, AssemblerGoldenSet) {
  for (const auto& row : testutil::load_golden(RV32SIM_GOLDEN_FILE)) {
    const auto d = decode(row.word);
    ASSERT_TRUE(d.has_value()) << row.mnemonic;
    EXPECT_EQ(name_of(d->op), row.mnemonic) << std::hex << row.word;
  }
}

TEST(Decode, Disassembly) {
  EXPECT_EQ(to_string(*decode(0x002081B3)), "add x3, x1, x2");
  EXPECT_EQ(to_string(*decode(asm_lw(2, static_cast<Word>(-4), 5))), "lw x5, -4(x2)");
  EXPECT_EQ(to_string(*decode(asm_sw(1, 2, 8))), "sw x2, 8(x1)");
  EXPECT_EQ(to_string(*decode(0x123453B7)), "lui x7, 0x12345");
  EXPECT_EQ(to_string(*decode(asm_srai(2, 31, 1))), "srai x1, x2, 31");
}

}  // namespace
