#pragma once

#include <array>
#include <cassert>
#include <cstdint>
#include <ostream>
#include <utility>
#include <variant>

#include "rv32sim/bits.hpp"
#include "rv32sim/memory.hpp"

namespace rv32 {

// Model status: a debugging/halting field carried beside the architectural
// state. Anything other than Running freezes the machine.
struct Running {
  friend bool operator==(const Running&, const Running&) = default;
};

struct IllegalInstruction {
  Word word = 0;
  Word pc = 0;
  friend bool operator==(const IllegalInstruction&, const IllegalInstruction&) = default;
};

struct Halted {
  std::uint32_t reason = 0;
  friend bool operator==(const Halted&, const Halted&) = default;
};

using ModelStatus = std::variant<Running, IllegalInstruction, Halted>;

inline bool is_running(const ModelStatus& ms) noexcept { return std::holds_alternative<Running>(ms); }

inline std::ostream& operator<<(std::ostream& os, const ModelStatus& ms) {
  if (std::holds_alternative<Running>(ms)) return os << "running";
  if (const auto* ill = std::get_if<IllegalInstruction>(&ms)) {
    return os << "illegal(word=" << std::hex << ill->word << ", pc=" << ill->pc << std::dec << ')';
  }
  return os << "halted(" << std::get<Halted>(ms).reason << ')';
}

// The whole simulator state: register file, pc, memory and model status.
//
// Member functions update in place; the free functions below are the value
// forms (state in, new state out). x0 reads as zero and writes to it are
// dropped, so regs_[0] is zero for every reachable state.
class MachineState {
 public:
  static constexpr RegIndex kNumRegs = 32;

  Word reg(RegIndex i) const noexcept {
    assert(i < kNumRegs);
    return regs_[i];
  }

  void set_reg(RegIndex i, Word v) noexcept {
    assert(i < kNumRegs);
    if (i != 0) regs_[i] = v;
  }

  Word pc() const noexcept { return pc_; }
  void set_pc(Word v) noexcept { pc_ = v; }

  const ModelStatus& ms() const noexcept { return ms_; }
  void set_ms(ModelStatus m) noexcept { ms_ = m; }

  const Memory& mem() const noexcept { return mem_; }
  Memory& mem() noexcept { return mem_; }

  const std::array<Word, kNumRegs>& regs() const noexcept { return regs_; }

  bool well_formed() const noexcept { return regs_[0] == 0 && mem_.well_formed(); }

  // Structural equality; memory compares canonically.
  friend bool operator==(const MachineState&, const MachineState&) = default;

 private:
  std::array<Word, kNumRegs> regs_{};
  Word pc_ = 0;
  Memory mem_;
  ModelStatus ms_ = Running{};
};

inline MachineState init_state() { return MachineState{}; }

inline bool well_formed(const MachineState& s) noexcept { return s.well_formed(); }

inline Word rgfi(RegIndex i, const MachineState& s) noexcept { return s.reg(i); }

inline MachineState write_rgfi(RegIndex i, Word v, MachineState s) {
  s.set_reg(i, v);
  return s;
}

inline Word xpc(const MachineState& s) noexcept { return s.pc(); }

inline MachineState set_xpc(Word v, MachineState s) {
  s.set_pc(v);
  return s;
}

inline const ModelStatus& get_ms(const MachineState& s) noexcept { return s.ms(); }

inline MachineState set_ms(ModelStatus m, MachineState s) {
  s.set_ms(m);
  return s;
}

inline Byte rm08(Word addr, const MachineState& s) noexcept { return s.mem().read8(addr); }
inline Half rm16(Word addr, const MachineState& s) noexcept { return s.mem().read16(addr); }
inline Word rm32(Word addr, const MachineState& s) noexcept { return s.mem().read32(addr); }

inline MachineState wm08(Word addr, Byte v, MachineState s) {
  s.mem().write8(addr, v);
  return s;
}

inline MachineState wm16(Word addr, Half v, MachineState s) {
  s.mem().write16(addr, v);
  return s;
}

inline MachineState wm32(Word addr, Word v, MachineState s) {
  s.mem().write32(addr, v);
  return s;
}

}  // namespace rv32
