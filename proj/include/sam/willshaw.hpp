#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sam/bitvec.hpp"
#include "sam/pattern.hpp"
#include "sam/space.hpp"

namespace sam {

/// Binary (clipped) associative memory. J_ij = 1 iff some stored message
/// activates i and j together; the diagonal J_ii = 1 iff neuron i appears in
/// any stored message. Scores include the diagonal term (the self influence
/// of active neurons).
///
/// Weights are kept as a full symmetric bitmap so a neuron's score is one
/// row-AND-popcount against the state.
class WillshawNetwork {
 public:
  explicit WillshawNetwork(NeuronSpace space, bool retain_stored = true);

  void store(const Pattern& pattern);

  /// Score S̄_i = sum_j J_ij * state_j, j = i included.
  std::uint32_t score(const Pattern& state, std::uint32_t i) const;

  void scores(const BitVec& state, std::vector<std::uint32_t>& out) const;

  /// True iff every pair of distinct active neurons is connected.
  bool recognize(const Pattern& pattern) const;

  bool weight(std::uint32_t i, std::uint32_t j) const {
    return (rows_[std::size_t(i) * words_per_row_ + (j >> 6)] >>
            (j & 63)) & 1ULL;
  }

  std::span<const std::uint64_t> row(std::uint32_t i) const {
    return {rows_.data() + std::size_t(i) * words_per_row_, words_per_row_};
  }

  const NeuronSpace& space() const { return space_; }
  std::uint64_t stored_count() const { return stored_count_; }
  bool retains_stored() const { return retain_stored_; }
  const std::vector<Pattern>& stored() const { return stored_; }
  std::size_t words_per_row() const { return words_per_row_; }

  void reset();

  bool operator==(const WillshawNetwork&) const = default;

 private:
  void set(std::uint32_t i, std::uint32_t j) {
    rows_[std::size_t(i) * words_per_row_ + (j >> 6)] |= 1ULL << (j & 63);
  }

  NeuronSpace space_;
  std::uint64_t stored_count_ = 0;
  std::size_t words_per_row_;
  std::vector<std::uint64_t> rows_;  // n rows, symmetric incl. diagonal
  bool retain_stored_;
  std::vector<Pattern> stored_;

  friend class NetworkCodec;
};

}  // namespace sam
