#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "rv32sim/rv32sim.hpp"

namespace {

struct Result {
  int status = -1;
  std::string out;
};

// Runs the CLI through the shell, capturing stdout; stderr is discarded.
Result cli(const std::string& args) {
  const std::string cmd = std::string(RV32SIM_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
  const int raw = pclose(p);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string fixture(const char* name) { return std::string(RV32SIM_FIXTURE_DIR) + "/" + name; }

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("rv32sim_cli_test_" + name);
}

TEST(Cli, AsmWord) {
  EXPECT_EQ(cli("asm-word add 1 2 3").out, "002081B3\n");
  EXPECT_EQ(cli("asm-word add x1 x2 x3").out, "002081B3\n");
  EXPECT_EQ(cli("asm-word addi 0 -1 0").out, "FFF00013\n");
  EXPECT_EQ(cli("asm-word lui 0x12345000 7").out, "123453B7\n");
  EXPECT_EQ(cli("asm-word add 33 2 3").out, "002081B3\n");
}

TEST(Cli, AsmWordErrors) {
  EXPECT_EQ(cli("asm-word add 33 2 3 --strict-encode").status, 1);
  EXPECT_EQ(cli("asm-word frob 1 2 3").status, 1);
  EXPECT_EQ(cli("asm-word add 1 2").status, 1);
}

TEST(Cli, DecodeWord) {
  EXPECT_EQ(cli("decode-word 002081B3").out, "add x3, x1, x2\n");
  const auto r = cli("decode-word 0x00000000");
  EXPECT_EQ(r.out, "illegal 00000000\n");
  EXPECT_EQ(r.status, 2);
}

TEST(Cli, RunFibDumpRegs) {
  const auto r = cli("run " + fixture("fib.hex") + " --steps 10000 --dump-regs");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("x10 00000037\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("pc  00000024\n"), std::string::npos) << r.out;
  std::istringstream lines(r.out);
  int n = 0;
  for (std::string l; std::getline(lines, l);) ++n;
  EXPECT_EQ(n, 33);
}

TEST(Cli, RunFlatBinary) {
  const auto r = cli("run " + fixture("fib.bin") + " --base 0x0 --entry 0x0 --dump-regs");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("x10 00000037\n"), std::string::npos);
}

TEST(Cli, BudgetExhaustion) {
  EXPECT_EQ(cli("run " + fixture("fib.hex") + " --steps 5").status, 3);
  EXPECT_EQ(cli("run " + fixture("fib.hex") + " --steps 5 --allow-budget").status, 0);
}

TEST(Cli, UnexpectedIllegalWordExits2) {
  const auto img = temp_path("ecall.hex");
  std::ofstream(img) << "@00000000 73 00 00 00\n";
  EXPECT_EQ(cli("run " + img.string()).status, 2);
}

TEST(Cli, UsageAndParseErrors) {
  EXPECT_EQ(cli("").status, 1);
  EXPECT_EQ(cli("run /nonexistent/file.hex").status, 1);
  const auto img = temp_path("bad.hex");
  std::ofstream(img) << "@0 zz\n";
  EXPECT_EQ(cli("run " + img.string()).status, 1);
}

TEST(Cli, RegisterFlag) {
  const auto img = temp_path("add.hex");
  // add x3, x1, x2 then the sentinel
  std::ofstream(img) << "@00000000 B3 81 20 00 00 00 00 00\n";
  const auto r = cli("run " + img.string() + " --reg 1=10 --reg x2=0x20 --dump-regs");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("x3  00000030\n"), std::string::npos) << r.out;
  EXPECT_EQ(cli("run " + img.string() + " --reg 0=1").status, 1);
}

TEST(Cli, MemcpyDumpMatchesSource) {
  const auto src = cli("run " + fixture("memcpy.hex") + " --steps 0 --allow-budget --dump-mem 0x1000 64");
  const auto dst = cli("run " + fixture("memcpy.hex") + " --dump-mem 0x2000 64");
  ASSERT_EQ(dst.status, 0);
  // Same bytes, different addresses.
  auto strip = [](std::string s) {
    std::string out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out += l.substr(l.find(' ')) + "\n";
    return out;
  };
  EXPECT_EQ(strip(src.out), strip(dst.out));
  EXPECT_EQ(std::count(dst.out.begin(), dst.out.end(), '\n'), 4);
}

TEST(Cli, TraceIsDeterministicAndReplays) {
  const auto t1 = temp_path("t1.jsonl"), t2 = temp_path("t2.jsonl");
  ASSERT_EQ(cli("run " + fixture("memcpy.hex") + " --trace " + t1.string()).status, 0);
  ASSERT_EQ(cli("run " + fixture("memcpy.hex") + " --trace " + t2.string()).status, 0);
  std::ifstream a(t1), b(t2);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());

  auto s = rv32::load_image(rv32::parse_image_file(fixture("memcpy.hex")), rv32::init_state());
  const auto expected = rv32::run(s, 10000).final_state;
  std::istringstream lines(sa.str());
  std::size_t n = 0;
  for (std::string l; std::getline(lines, l); ++n) {
    rv32::replay(rv32::trace_record_from_json(nlohmann::json::parse(l)), s);
  }
  EXPECT_EQ(s, expected);
  EXPECT_GT(n, 64u * 7);
}

}  // namespace
