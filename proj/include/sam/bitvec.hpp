#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sam {

/// Fixed-size bit vector backed by 64-bit words. The word view is exposed so
/// score kernels can run AND+popcount over whole rows.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t nbits)
      : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  std::size_t size() const { return nbits_; }
  std::size_t word_count() const { return words_.size(); }

  void set(std::size_t i) { words_[i >> 6] |= (1ULL << (i & 63)); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(1ULL << (i & 63)); }
  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1ULL;
  }
  void clear() { std::fill(words_.begin(), words_.end(), 0ULL); }

  std::size_t count() const {
    std::size_t s = 0;
    for (auto w : words_) s += std::popcount(w);
    return s;
  }

  std::span<std::uint64_t> words() { return words_; }
  std::span<const std::uint64_t> words() const { return words_; }

  bool operator==(const BitVec&) const = default;

 private:
  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

inline std::size_t and_popcount(std::span<const std::uint64_t> a,
                                std::span<const std::uint64_t> b) {
  std::size_t n = a.size() < b.size() ? a.size() : b.size();
  std::size_t s = 0;
  for (std::size_t i = 0; i < n; ++i) s += std::popcount(a[i] & b[i]);
  return s;
}

inline bool and_any(std::span<const std::uint64_t> a,
                    std::span<const std::uint64_t> b) {
  std::size_t n = a.size() < b.size() ? a.size() : b.size();
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

}  // namespace sam
