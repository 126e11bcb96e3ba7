#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"
#include "rv32sim/decode.hpp"
#include "rv32sim/machine_state.hpp"
#include "rv32sim/step.hpp"

namespace rv32 {

struct StateWrite {
  enum class Kind { Reg, Mem };
  Kind kind = Kind::Reg;
  Word location = 0;  // register index or byte address
  Word old_value = 0;
  Word new_value = 0;
  friend bool operator==(const StateWrite&, const StateWrite&) = default;
};

// One executed cycle: where it ran, what it fetched, and the exact state diff.
struct TraceRecord {
  std::uint64_t cycle = 0;
  Word pc = 0;
  Word raw = 0;
  std::string mnemonic;  // "illegal" when the word did not decode
  std::vector<StateWrite> writes;
  Word next_pc = 0;
  bool froze = false;  // this cycle moved ms out of Running
};

// Executes one cycle on s in place and describes what changed.
inline TraceRecord step_traced(MachineState& s, std::uint64_t cycle) {
  TraceRecord rec;
  rec.cycle = cycle;
  rec.pc = s.pc();
  rec.raw = s.mem().read32(rec.pc);
  const auto in = decode(rec.raw);
  rec.mnemonic = in ? std::string(name_of(in->op)) : "illegal";

  // Only stores touch memory; snapshot their target bytes.
  std::vector<std::pair<Word, Byte>> before;
  if (in && in->format() == Format::S) {
    const Word addr = s.reg(in->rs1) + in->imm;
    const Word width = in->op == Mnemonic::Sb ? 1 : in->op == Mnemonic::Sh ? 2 : 4;
    for (Word k = 0; k < width; ++k) before.emplace_back(addr + k, s.mem().read8(addr + k));
  }
  const auto regs_before = s.regs();
  const bool was_running = is_running(s.ms());

  s = step(std::move(s));

  for (RegIndex i = 0; i < MachineState::kNumRegs; ++i) {
    if (regs_before[i] != s.reg(i)) {
      rec.writes.push_back({StateWrite::Kind::Reg, i, regs_before[i], s.reg(i)});
    }
  }
  for (const auto& [addr, old] : before) {
    const Byte now = s.mem().read8(addr);
    if (now != old) rec.writes.push_back({StateWrite::Kind::Mem, addr, old, now});
  }
  rec.next_pc = s.pc();
  rec.froze = was_running && !is_running(s.ms());
  return rec;
}

// Re-applies a recorded cycle to s. Replaying every record of a run onto its
// initial state reproduces the final state.
inline void replay(const TraceRecord& rec, MachineState& s) {
  for (const auto& w : rec.writes) {
    if (w.kind == StateWrite::Kind::Reg) {
      s.set_reg(w.location, w.new_value);
    } else {
      s.mem().write8(w.location, n08(w.new_value));
    }
  }
  s.set_pc(rec.next_pc);
  if (rec.froze) s.set_ms(IllegalInstruction{rec.raw, rec.pc});
}

namespace detail {
inline std::string hex32(Word v) {
  char buf[11];
  std::snprintf(buf, sizeof buf, "0x%08x", v);
  return buf;
}
}  // namespace detail

inline nlohmann::json to_json(const TraceRecord& rec) {
  nlohmann::json writes = nlohmann::json::array();
  for (const auto& w : rec.writes) {
    if (w.kind == StateWrite::Kind::Reg) {
      writes.push_back({{"reg", w.location}, {"old", detail::hex32(w.old_value)},
                        {"new", detail::hex32(w.new_value)}});
    } else {
      writes.push_back({{"mem", detail::hex32(w.location)}, {"old", w.old_value}, {"new", w.new_value}});
    }
  }
  nlohmann::json j = {{"cycle", rec.cycle},          {"pc", detail::hex32(rec.pc)},
                      {"raw", detail::hex32(rec.raw)}, {"mnemonic", rec.mnemonic},
                      {"writes", std::move(writes)},   {"next_pc", detail::hex32(rec.next_pc)}};
  if (rec.froze) j["froze"] = true;
  return j;
}

inline TraceRecord trace_record_from_json(const nlohmann::json& j) {
  const auto hex = [](const nlohmann::json& v) {
    return static_cast<Word>(std::stoul(v.get<std::string>(), nullptr, 16));
  };
  TraceRecord rec;
  rec.cycle = j.at("cycle").get<std::uint64_t>();
  rec.pc = hex(j.at("pc"));
  rec.raw = hex(j.at("raw"));
  rec.mnemonic = j.at("mnemonic").get<std::string>();
  rec.next_pc = hex(j.at("next_pc"));
  rec.froze = j.value("froze", false);
  for (const auto& w : j.at("writes")) {
    if (w.contains("reg")) {
      rec.writes.push_back({StateWrite::Kind::Reg, w.at("reg").get<Word>(), hex(w.at("old")), hex(w.at("new"))});
    } else {
      rec.writes.push_back({StateWrite::Kind::Mem, hex(w.at("mem")), w.at("old").get<Word>(), w.at("new").get<Word>()});
    }
  }
  return rec;
}

}  // namespace rv32
