#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pmce/errors.hpp"

namespace pmce {

/// Fixed-capacity bit vector over local vertex ids.
///
/// Capacity is chosen once (normally the graph degeneracy rounded up to a
/// whole word) and every set-algebra operation requires both operands to
/// share it. Bits at positions >= capacity are always zero.
class Bitset {
 public:
  using word_type = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Bitset() = default;
  explicit Bitset(std::size_t capacity)
      : words_(words_for(capacity), 0), capacity_(capacity) {}

  static constexpr std::size_t words_for(std::size_t bits) noexcept {
    return (bits + kWordBits - 1) / kWordBits;
  }

  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  std::span<const word_type> words() const noexcept { return words_; }

  void set(std::size_t i) {
    check_index(i);
    words_[i / kWordBits] |= word_type{1} << (i % kWordBits);
  }
  void reset(std::size_t i) {
    check_index(i);
    words_[i / kWordBits] &= ~(word_type{1} << (i % kWordBits));
  }
  bool test(std::size_t i) const {
    check_index(i);
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
  }

  void clear() noexcept {
    for (auto& w : words_) w = 0;
  }

  bool none() const noexcept {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }
  bool any() const noexcept { return !none(); }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  /// Lowest set index, or npos.
  std::size_t find_first() const noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] != 0)
        return k * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[k]));
    return npos;
  }

  /// Lowest set index strictly greater than `i`, or npos.
  std::size_t find_next(std::size_t i) const noexcept {
    std::size_t pos = i + 1;
    if (pos >= capacity_) return npos;
    std::size_t k = pos / kWordBits;
    word_type w = words_[k] & (~word_type{0} << (pos % kWordBits));
    while (true) {
      if (w != 0) return k * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
      if (++k == words_.size()) return npos;
      w = words_[k];
    }
  }

  /// Removes and returns the lowest set index, or npos when empty.
  std::size_t pop_first() noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      if (words_[k] != 0) {
        const auto b = static_cast<std::size_t>(std::countr_zero(words_[k]));
        words_[k] &= words_[k] - 1;
        return k * kWordBits + b;
      }
    }
    return npos;
  }

  // In-place algebra. All operands must share this bitset's capacity.

  Bitset& operator&=(const Bitset& o) {
    check_same(o);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) {
    check_same(o);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  /// this = this - o
  Bitset& subtract(const Bitset& o) {
    check_same(o);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    return *this;
  }

  /// this = a & b, without allocating.
  void assign_and(const Bitset& a, const Bitset& b) {
    check_same(a);
    check_same(b);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] = a.words_[k] & b.words_[k];
  }
  /// this = a - b, without allocating.
  void assign_andnot(const Bitset& a, const Bitset& b) {
    check_same(a);
    check_same(b);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] = a.words_[k] & ~b.words_[k];
  }
  /// Copies the bits of `o` into this bitset (same capacity, no allocation).
  void assign(const Bitset& o) {
    check_same(o);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] = o.words_[k];
  }

  /// |a & b| without materializing the intersection.
  static std::size_t intersection_count(const Bitset& a, const Bitset& b) {
    a.check_same(b);
    std::size_t c = 0;
    for (std::size_t k = 0; k < a.words_.size(); ++k)
      c += static_cast<std::size_t>(std::popcount(a.words_[k] & b.words_[k]));
    return c;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      word_type w = words_[k];
      while (w != 0) {
        f(k * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> to_vector() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  std::size_t allocated_bytes() const noexcept { return words_.size() * sizeof(word_type); }

  friend bool operator==(const Bitset& a, const Bitset& b) noexcept {
    return a.capacity_ == b.capacity_ && a.words_ == b.words_;
  }

 private:
  void check_index(std::size_t i) const {
    if (i >= capacity_) throw ContractViolation("bitset index out of capacity");
  }
  void check_same(const Bitset& o) const {
    if (o.capacity_ != capacity_) throw ContractViolation("bitset capacity mismatch");
  }

  std::vector<word_type> words_;
  std::size_t capacity_ = 0;
};

inline Bitset intersect(const Bitset& a, const Bitset& b) {
  Bitset r(a.capacity());
  r.assign_and(a, b);
  return r;
}

inline Bitset subtract(const Bitset& a, const Bitset& b) {
  Bitset r(a.capacity());
  r.assign_andnot(a, b);
  return r;
}

inline std::size_t popcount(const Bitset& a) noexcept { return a.count(); }

/// Set members in ascending order.
inline std::vector<std::size_t> iterate(const Bitset& a) { return a.to_vector(); }

}  // namespace pmce
