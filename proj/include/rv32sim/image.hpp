#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rv32sim/bits.hpp"
#include "rv32sim/machine_state.hpp"

// Program images.
//
// Text format, one directive per line, '#' starts a comment:
//
//   @XXXXXXXX bb bb bb ...   segment: bytes at consecutive addresses
//   entry XXXXXXXX           initial pc
//   reg xN XXXXXXXX          initial register value
//
// Addresses and values are hex (an optional 0x prefix is accepted); each
// segment byte is one or two hex digits. Flat binary files load as a single
// segment at a caller-chosen base.

namespace rv32 {

struct Segment {
  Word base = 0;
  std::vector<Byte> bytes;
  friend bool operator==(const Segment&, const Segment&) = default;
};

struct ProgramImage {
  std::vector<Segment> segments;
  Word entry = 0;
  std::vector<std::pair<RegIndex, Word>> regs;
  friend bool operator==(const ProgramImage&, const ProgramImage&) = default;
};

class ImageError : public std::runtime_error {
 public:
  enum class Kind { OverlappingSegments, RegisterIndexOutOfRange, InitWritesX0, SyntaxError, AddressOutOfRange, Io };

  ImageError(Kind kind, const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), kind_(kind), line_(line) {}

  Kind kind() const noexcept { return kind_; }
  // 1-based line number for parse errors, 0 otherwise.
  std::size_t line() const noexcept { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

namespace detail {

inline bool parse_hex(std::string_view tok, std::uint64_t& out) {
  if (tok.size() > 2 && tok[0] == '0' && (tok[1] == 'x' || tok[1] == 'X')) tok.remove_prefix(2);
  if (tok.empty() || tok.size() > 16) return false;
  std::uint64_t v = 0;
  for (char c : tok) {
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    else return false;
    v = (v << 4) | static_cast<std::uint64_t>(d);
  }
  out = v;
  return true;
}

inline Word parse_hex32(std::string_view tok, std::size_t line, std::string_view what) {
  std::uint64_t v = 0;
  if (!parse_hex(tok, v)) {
    throw ImageError(ImageError::Kind::SyntaxError, "malformed " + std::string(what) + " '" + std::string(tok) + "'", line);
  }
  if (v > 0xFFFFFFFFu) {
    throw ImageError(ImageError::Kind::AddressOutOfRange, std::string(what) + " '" + std::string(tok) + "' exceeds 32 bits", line);
  }
  return static_cast<Word>(v);
}

// Half-open [lo, hi) pieces of a segment's wrapped footprint.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> footprint(const Segment& seg) {
  const std::uint64_t lo = seg.base;
  const std::uint64_t hi = lo + seg.bytes.size();
  if (seg.bytes.empty()) return {};
  if (hi <= kAddressSpaceSize) return {{lo, hi}};
  return {{lo, kAddressSpaceSize}, {0, hi - kAddressSpaceSize}};
}

}  // namespace detail

inline ProgramImage parse_image(std::istream& in) {
  ProgramImage img;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (auto hash = text.find('#'); hash != std::string::npos) text.resize(hash);
    std::istringstream ls(text);
    std::vector<std::string> toks{std::istream_iterator<std::string>(ls), std::istream_iterator<std::string>()};
    if (toks.empty()) continue;

    const std::string& head = toks[0];
    if (head[0] == '@') {
      Segment seg;
      seg.base = detail::parse_hex32(std::string_view(head).substr(1), line_no, "address");
      for (std::size_t i = 1; i < toks.size(); ++i) {
        std::uint64_t b = 0;
        if (toks[i].size() > 2 || !detail::parse_hex(toks[i], b)) {
          throw ImageError(ImageError::Kind::SyntaxError, "malformed byte '" + toks[i] + "'", line_no);
        }
        seg.bytes.push_back(static_cast<Byte>(b));
      }
      img.segments.push_back(std::move(seg));
    } else if (head == "entry") {
      if (toks.size() != 2) throw ImageError(ImageError::Kind::SyntaxError, "expected 'entry ADDR'", line_no);
      img.entry = detail::parse_hex32(toks[1], line_no, "entry");
    } else if (head == "reg") {
      if (toks.size() != 3 || toks[1].size() < 2 || toks[1][0] != 'x') {
        throw ImageError(ImageError::Kind::SyntaxError, "expected 'reg xN VALUE'", line_no);
      }
      const std::string_view idx = std::string_view(toks[1]).substr(1);
      if (idx.size() > 9 || !std::all_of(idx.begin(), idx.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw ImageError(ImageError::Kind::SyntaxError, "malformed register '" + toks[1] + "'", line_no);
      }
      img.regs.emplace_back(static_cast<RegIndex>(std::stoul(std::string(idx))),
                            detail::parse_hex32(toks[2], line_no, "register value"));
    } else {
      throw ImageError(ImageError::Kind::SyntaxError, "unknown directive '" + head + "'", line_no);
    }
  }
  return img;
}

inline ProgramImage parse_image_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ImageError(ImageError::Kind::Io, "cannot open " + path);
  return parse_image(in);
}

inline ProgramImage read_flat_binary(const std::string& path, Word base, Word entry) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageError(ImageError::Kind::Io, "cannot open " + path);
  Segment seg{base, {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}};
  if (seg.bytes.size() > kAddressSpaceSize) {
    throw ImageError(ImageError::Kind::AddressOutOfRange, path + " is larger than the address space");
  }
  return {{std::move(seg)}, entry, {}};
}

// Writes the image into s: segment bytes, then registers, then pc := entry.
inline MachineState load_image(const ProgramImage& img, MachineState s) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> spans;
  for (const auto& seg : img.segments) {
    if (seg.bytes.size() > kAddressSpaceSize) {
      throw ImageError(ImageError::Kind::AddressOutOfRange, "segment larger than the address space");
    }
    for (auto piece : detail::footprint(seg)) spans.push_back(piece);
  }
  std::sort(spans.begin(), spans.end());
  for (std::size_t i = 1; i < spans.size(); ++i) {
    if (spans[i].first < spans[i - 1].second) {
      throw ImageError(ImageError::Kind::OverlappingSegments, "segments overlap at address 0x" + [&] {
        std::ostringstream os;
        os << std::hex << std::setw(8) << std::setfill('0') << spans[i].first;
        return os.str();
      }());
    }
  }
  for (const auto& [idx, value] : img.regs) {
    if (idx > 31) throw ImageError(ImageError::Kind::RegisterIndexOutOfRange, "register x" + std::to_string(idx) + " does not exist");
    if (idx == 0) throw ImageError(ImageError::Kind::InitWritesX0, "x0 cannot be initialized");
  }

  for (const auto& seg : img.segments) {
    Word addr = seg.base;
    for (Byte b : seg.bytes) s.mem().write8(addr++, b);
  }
  for (const auto& [idx, value] : img.regs) s.set_reg(idx, value);
  s.set_pc(img.entry);
  return s;
}

namespace detail {

inline void write_bytes_line(std::ostream& os, Word addr, const Byte* bytes, std::size_t n) {
  os << '@' << std::uppercase << std::hex << std::setfill('0') << std::setw(8) << addr;
  for (std::size_t i = 0; i < n; ++i) os << ' ' << std::setw(2) << static_cast<unsigned>(bytes[i]);
  os << std::dec << std::nouppercase << '\n';
}

}  // namespace detail

// Dumps len bytes starting at addr as image segment lines, 16 bytes per line.
inline void dump_memory(std::ostream& os, const MachineState& s, Word addr, std::uint64_t len) {
  std::vector<Byte> line;
  Word start = addr;
  for (std::uint64_t i = 0; i < len; ++i) {
    line.push_back(s.mem().read8(static_cast<Word>(addr + i)));
    if (line.size() == 16 || i + 1 == len) {
      detail::write_bytes_line(os, start, line.data(), line.size());
      start += static_cast<Word>(line.size());
      line.clear();
    }
  }
}

// Writes the 32 registers and pc, one "xN XXXXXXXX" line each.
inline void dump_registers(std::ostream& os, const MachineState& s) {
  const auto flags = os.flags();
  for (RegIndex i = 0; i < MachineState::kNumRegs; ++i) {
    os << 'x' << std::dec << std::left << std::setw(2) << std::setfill(' ') << i << ' ' << std::right
       << std::uppercase << std::hex << std::setw(8) << std::setfill('0') << s.reg(i) << '\n';
  }
  os << "pc  " << std::uppercase << std::hex << std::setw(8) << std::setfill('0') << s.pc() << '\n';
  os.flags(flags);
}

// Serializes s as a loadable image: entry = pc, non-zero registers and every
// 16-byte line of memory that holds a non-zero byte. Loading the result into
// init_state() reproduces s, apart from ms.
inline void write_image(std::ostream& os, const MachineState& s) {
  os << "entry " << std::uppercase << std::hex << std::setw(8) << std::setfill('0') << s.pc() << '\n';
  for (RegIndex i = 1; i < MachineState::kNumRegs; ++i) {
    if (s.reg(i) != 0) {
      os << "reg x" << std::dec << i << ' ' << std::hex << std::setw(8) << std::setfill('0') << s.reg(i) << '\n';
    }
  }
  os << std::dec << std::nouppercase;
  s.mem().for_each_page([&](Word base, const Memory::Page& page) {
    for (std::size_t off = 0; off < page.size(); off += 16) {
      const Byte* p = page.data() + off;
      if (std::any_of(p, p + 16, [](Byte b) { return b != 0; })) {
        detail::write_bytes_line(os, base + static_cast<Word>(off), p, 16);
      }
    }
  });
}

}  // namespace rv32
