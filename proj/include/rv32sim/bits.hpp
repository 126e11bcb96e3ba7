#pragma once

#include <cstdint>

namespace rv32 {

using Word = std::uint32_t;
using Half = std::uint16_t;
using Byte = std::uint8_t;

// Register index, always in 0..31 once masked.
using RegIndex = std::uint32_t;

inline constexpr std::uint64_t kAddressSpaceSize = std::uint64_t{1} << 32;

// Width normalizers: keep the low 5 / 8 / 16 bits.
constexpr RegIndex n05(std::uint64_t x) noexcept { return static_cast<RegIndex>(x & 0x1Fu); }
constexpr Byte n08(std::uint64_t x) noexcept { return static_cast<Byte>(x & 0xFFu); }
constexpr Half n16(std::uint64_t x) noexcept { return static_cast<Half>(x & 0xFFFFu); }
constexpr Word n32(std::uint64_t x) noexcept { return static_cast<Word>(x); }

// Wrapping 32-bit addition.
constexpr Word n32_add(Word a, Word b) noexcept { return static_cast<Word>(a + b); }

// Bits hi..lo of w, right-aligned.
constexpr Word bit_range(Word w, unsigned hi, unsigned lo) noexcept {
  const unsigned width = hi - lo + 1;
  const Word mask = width >= 32 ? ~Word{0} : ((Word{1} << width) - 1);
  return (w >> lo) & mask;
}

// Sign-extends the low `width` bits of x to 32 bits.
template <unsigned width>
constexpr Word sign_extend(Word x) noexcept {
  static_assert(width >= 1 && width <= 32);
  if constexpr (width == 32) {
    return x;
  } else {
    const Word m = Word{1} << (width - 1);
    x &= (Word{1} << width) - 1;
    return (x ^ m) - m;
  }
}

constexpr std::int32_t as_signed(Word x) noexcept { return static_cast<std::int32_t>(x); }

}  // namespace rv32
