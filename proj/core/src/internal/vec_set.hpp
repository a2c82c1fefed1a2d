#pragma once

#include <cstdint>
#include <cstring>
#include <vector>

namespace satfrac::detail {

// Append-only hash set of fixed-length int32 vectors, stored contiguously.
// Open addressing; the table holds 1-based indices into the arena.  Used to
// deduplicate the millions of candidate vectors a subset sweep produces.
class VecSet {
 public:
  explicit VecSet(int vec_len) : len_(vec_len), table_(1024, 0) {}

  std::size_t size() const { return count_; }
  const std::int32_t* at(std::size_t i) const { return &arena_[i * len_]; }

  // Inserts a copy of v (length vec_len); returns true when newly added.
  bool insert(const std::int32_t* v) {
    if ((count_ + 1) * 10 >= table_.size() * 7) grow();
    const std::uint64_t h = hash(v);
    std::size_t slot = h & (table_.size() - 1);
    for (;;) {
      const std::uint64_t entry = table_[slot];
      if (entry == 0) {
        arena_.insert(arena_.end(), v, v + len_);
        ++count_;
        table_[slot] = count_;  // 1-based
        return true;
      }
      if (std::memcmp(at(entry - 1), v, sizeof(std::int32_t) * len_) == 0) {
        return false;
      }
      slot = (slot + 1) & (table_.size() - 1);
    }
  }

 private:
  std::uint64_t hash(const std::int32_t* v) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    const unsigned char* bytes = reinterpret_cast<const unsigned char*>(v);
    for (std::size_t i = 0; i < sizeof(std::int32_t) * len_; ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ULL;
    }
    return h;
  }

  void grow() {
    std::vector<std::uint64_t> bigger(table_.size() * 2, 0);
    for (std::uint64_t entry : table_) {
      if (entry == 0) continue;
      std::size_t slot = hash(at(entry - 1)) & (bigger.size() - 1);
      while (bigger[slot] != 0) slot = (slot + 1) & (bigger.size() - 1);
      bigger[slot] = entry;
    }
    table_.swap(bigger);
  }

  int len_;
  std::size_t count_ = 0;
  std::vector<std::int32_t> arena_;
  std::vector<std::uint64_t> table_;
};

}  // namespace satfrac::detail
