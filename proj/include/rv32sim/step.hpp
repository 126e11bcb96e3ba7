#pragma once

#include <cstdint>
#include <utility>

#include "rv32sim/decode.hpp"
#include "rv32sim/machine_state.hpp"
#include "rv32sim/semantics.hpp"

namespace rv32 {

// One fetch-decode-execute cycle. A frozen state (ms not Running) is returned
// unchanged; an undecodable word freezes the machine with pc left in place.
inline MachineState step(MachineState s) {
  if (!is_running(s.ms())) return s;
  const Word pc = s.pc();
  const Word word = s.mem().read32(pc);
  const auto in = decode(word);
  if (!in) {
    s.set_ms(IllegalInstruction{word, pc});
    return s;
  }
  return execute(*in, std::move(s));
}

enum class StopReason { BudgetExhausted, NotRunning };

struct RunOutcome {
  MachineState final_state;
  std::uint64_t steps_executed = 0;
  StopReason stop_reason = StopReason::BudgetExhausted;
};

// Steps until `budget` cycles have run or the machine stops running. The
// cycle that freezes the machine counts as executed.
inline RunOutcome run(MachineState s, std::uint64_t budget) {
  std::uint64_t n = 0;
  while (n < budget && is_running(s.ms())) {
    s = step(std::move(s));
    ++n;
  }
  const StopReason reason = is_running(s.ms()) ? StopReason::BudgetExhausted : StopReason::NotRunning;
  return {std::move(s), n, reason};
}

}  // namespace rv32
