#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rv32sim/rv32sim.hpp"

namespace {

enum ExitCode : int { kOk = 0, kUsage = 1, kIllegal = 2, kBudget = 3 };

// The conventional end-of-program marker: an all-zero word decodes as illegal.
constexpr rv32::Word kSentinelWord = 0x00000000;

std::uint64_t parse_number(const std::string& s) {
  std::size_t used = 0;
  const std::uint64_t v = std::stoull(s, &used, 0);
  if (used != s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

rv32::Word parse_word(const std::string& s) {
  std::string t = s;
  if (t.rfind("0x", 0) != 0 && t.rfind("0X", 0) != 0) t = "0x" + t;
  const std::uint64_t v = parse_number(t);
  if (v > 0xFFFFFFFFu) throw std::invalid_argument("'" + s + "' does not fit in 32 bits");
  return static_cast<rv32::Word>(v);
}

// Decimal, 0x-hex, negative, or a register name such as x7.
std::int64_t parse_field(const std::string& s) {
  if (s.size() > 1 && (s[0] == 'x' || s[0] == 'X') && std::isdigit(static_cast<unsigned char>(s[1]))) {
    return static_cast<std::int64_t>(parse_number(s.substr(1)));
  }
  std::size_t used = 0;
  const std::int64_t v = std::stoll(s, &used, 0);
  if (used != s.size()) throw std::invalid_argument("bad field '" + s + "'");
  return v;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct RunOptions {
  std::string image;
  std::uint64_t steps = 10000;
  std::optional<std::string> base;
  std::optional<std::string> entry;
  std::vector<std::string> regs;
  std::string trace;
  bool dump_regs = false;
  std::vector<std::string> dump_mem;
  bool allow_budget = false;
};

int cmd_run(const RunOptions& opt) {
  rv32::ProgramImage img;
  if (ends_with(opt.image, ".bin")) {
    const rv32::Word base = opt.base ? parse_word(*opt.base) : 0;
    img = rv32::read_flat_binary(opt.image, base, base);
  } else {
    img = rv32::parse_image_file(opt.image);
  }
  if (opt.entry) img.entry = parse_word(*opt.entry);
  for (const auto& r : opt.regs) {
    const auto eq = r.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--reg expects N=HEX, got '" + r + "'");
    const std::int64_t idx = parse_field(r.substr(0, eq));
    if (idx < 0 || idx > 0xFFFFFFFF) throw std::invalid_argument("bad register '" + r + "'");
    img.regs.emplace_back(static_cast<rv32::RegIndex>(idx), parse_word(r.substr(eq + 1)));
  }

  rv32::MachineState s = rv32::load_image(img, rv32::init_state());
  std::uint64_t executed = 0;
  if (!opt.trace.empty()) {
    std::ofstream out(opt.trace);
    if (!out) throw std::runtime_error("cannot open " + opt.trace);
    while (executed < opt.steps && rv32::is_running(s.ms())) {
      out << rv32::to_json(rv32::step_traced(s, executed)).dump() << '\n';
      ++executed;
    }
  } else {
    auto outcome = rv32::run(std::move(s), opt.steps);
    s = std::move(outcome.final_state);
    executed = outcome.steps_executed;
  }

  if (opt.dump_regs) rv32::dump_registers(std::cout, s);
  if (!opt.dump_mem.empty()) {
    rv32::dump_memory(std::cout, s, parse_word(opt.dump_mem[0]), parse_number(opt.dump_mem[1]));
  }

  char pc_buf[16];
  std::snprintf(pc_buf, sizeof pc_buf, "%08X", s.pc());
  if (rv32::is_running(s.ms())) {
    std::cerr << "stopped: budget of " << opt.steps << " steps exhausted at pc " << pc_buf << '\n';
    return opt.allow_budget ? kOk : kBudget;
  }
  if (const auto* ill = std::get_if<rv32::IllegalInstruction>(&s.ms()); ill && ill->word == kSentinelWord) {
    std::cerr << "halted: sentinel at pc " << pc_buf << " after " << executed << " steps\n";
    return kOk;
  }
  std::cerr << "stopped: " << s.ms() << " after " << executed << " steps\n";
  return kIllegal;
}

int cmd_asm_word(const std::string& name, const std::vector<std::string>& fields, bool strict) {
  const auto m = rv32::mnemonic_from_name(name);
  if (!m) throw std::invalid_argument("unknown mnemonic '" + name + "'");
  std::vector<std::int64_t> args;
  for (const auto& f : fields) args.push_back(parse_field(f));
  std::printf("%08X\n", rv32::assemble(*m, args, strict));
  return kOk;
}

int cmd_decode_word(const std::string& text) {
  const rv32::Word w = parse_word(text);
  if (const auto in = rv32::decode(w)) {
    std::cout << rv32::to_string(*in) << '\n';
    return kOk;
  }
  std::printf("illegal %08X\n", w);
  return kIllegal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RV32I instruction-set simulator"};
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run = app.add_subcommand("run", "Load a program image and execute it");
  run->add_option("image", run_opt.image, "Hex image (.hex or any other name) or flat binary (.bin)")->required();
  run->add_option("--steps", run_opt.steps, "Step budget")->capture_default_str();
  run->add_option("--base", run_opt.base, "Load address for flat binaries (hex)");
  run->add_option("--entry", run_opt.entry, "Initial pc (hex), overrides the image");
  run->add_option("--reg", run_opt.regs, "Initial register, N=HEX (repeatable)");
  run->add_option("--trace", run_opt.trace, "Write one JSON trace record per cycle to PATH");
  run->add_flag("--dump-regs", run_opt.dump_regs, "Print registers and pc after the run");
  run->add_option("--dump-mem", run_opt.dump_mem, "Print LEN bytes at ADDR after the run")->expected(2)->type_name("ADDR LEN");
  run->add_flag("--allow-budget", run_opt.allow_budget, "Exit 0 when the step budget runs out");

  std::string asm_name;
  std::vector<std::string> asm_fields;
  bool strict = false;
  auto* asm_word = app.add_subcommand("asm-word", "Encode one instruction; fields in encoder order");
  asm_word->add_option("mnemonic", asm_name)->required();
  asm_word->add_option("fields", asm_fields)->allow_extra_args();
  asm_word->add_flag("--strict-encode", strict, "Reject fields that do not fit their slots");

  std::string word_text;
  auto* decode_word = app.add_subcommand("decode-word", "Disassemble one 32-bit word");
  decode_word->add_option("word", word_text, "Hex word")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmd_run(run_opt);
    if (*asm_word) return cmd_asm_word(asm_name, asm_fields, strict);
    if (*decode_word) return cmd_decode_word(word_text);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
