#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>

#include "rv32sim/bits.hpp"

namespace rv32 {

// Sparse little-endian byte memory covering the full 2^32 address space.
//
// Storage is 4 KiB pages allocated on the first non-zero write. Pages are
// shared between copies and cloned on write, so copying a Memory costs one
// pointer per resident page. Unmapped bytes read as zero, and equality treats
// an all-zero page the same as an absent one.
class Memory {
 public:
  static constexpr unsigned kPageBits = 12;
  static constexpr std::size_t kPageSize = std::size_t{1} << kPageBits;
  static constexpr Word kPageMask = static_cast<Word>(kPageSize - 1);
  static constexpr Word kPageCount = Word{1} << (32 - kPageBits);

  using Page = std::array<Byte, kPageSize>;

  Byte read8(Word addr) const noexcept {
    auto it = pages_.find(addr >> kPageBits);
    return it == pages_.end() ? Byte{0} : (*it->second)[addr & kPageMask];
  }

  void write8(Word addr, Byte value) {
    const Word page_no = addr >> kPageBits;
    auto it = pages_.find(page_no);
    if (it == pages_.end()) {
      if (value == 0) return;
      it = pages_.emplace(page_no, std::make_shared<Page>()).first;
      it->second->fill(0);
    } else if (it->second.use_count() > 1) {
      it->second = std::make_shared<Page>(*it->second);
    }
    (*it->second)[addr & kPageMask] = value;
  }

  Half read16(Word addr) const noexcept {
    return static_cast<Half>(read8(addr) | (read8(addr + 1) << 8));
  }

  void write16(Word addr, Half value) {
    write8(addr, n08(value));
    write8(addr + 1, n08(value >> 8));
  }

  Word read32(Word addr) const noexcept {
    return static_cast<Word>(read8(addr)) | (static_cast<Word>(read8(addr + 1)) << 8) |
           (static_cast<Word>(read8(addr + 2)) << 16) | (static_cast<Word>(read8(addr + 3)) << 24);
  }

  void write32(Word addr, Word value) {
    for (Word k = 0; k < 4; ++k) write8(addr + k, n08(value >> (8 * k)));
  }

  // Drops pages whose bytes are all zero.
  void canonicalize() {
    std::erase_if(pages_, [](const auto& kv) { return is_zero(*kv.second); });
  }

  std::size_t resident_pages() const noexcept { return pages_.size(); }

  // Visits resident pages in ascending address order as (base address, bytes).
  void for_each_page(const std::function<void(Word, const Page&)>& fn) const {
    for (const auto& [page_no, page] : pages_) fn(page_no << kPageBits, *page);
  }

  // Page numbers fit in 20 bits and every page pointer is live.
  bool well_formed() const noexcept {
    for (const auto& [page_no, page] : pages_) {
      if (page_no >= kPageCount || !page) return false;
    }
    return true;
  }

  friend bool operator==(const Memory& a, const Memory& b) {
    return a.covers_equal(b) && b.covers_equal(a);
  }

 private:
  static bool is_zero(const Page& p) noexcept {
    for (Byte b : p) {
      if (b != 0) return false;
    }
    return true;
  }

  // Every resident page of *this matches the corresponding page of other.
  bool covers_equal(const Memory& other) const {
    for (const auto& [page_no, page] : pages_) {
      auto it = other.pages_.find(page_no);
      if (it == other.pages_.end()) {
        if (!is_zero(*page)) return false;
      } else if (page != it->second && *page != *it->second) {
        return false;
      }
    }
    return true;
  }

  std::map<Word, std::shared_ptr<Page>> pages_;
};

}  // namespace rv32
