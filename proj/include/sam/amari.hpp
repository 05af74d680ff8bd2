#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sam/pattern.hpp"
#include "sam/space.hpp"

namespace sam {

/// Integer-count associative memory: J_ij counts the stored messages in which
/// neurons i and j are jointly active (i != j; the diagonal stays zero and is
/// excluded from fields).
class AmariNetwork {
 public:
  explicit AmariNetwork(NeuronSpace space, bool retain_stored = true);

  void store(const Pattern& pattern);

  /// Local field S_i = sum_{j != i} J_ij * state_j.
  std::uint64_t field(const Pattern& state, std::uint32_t i) const;

  /// Fields of all neurons at once (the retrieval hot path).
  void fields(const std::vector<std::uint32_t>& active,
              std::vector<std::uint64_t>& out) const;

  std::uint32_t weight(std::uint32_t i, std::uint32_t j) const {
    return i == j ? 0 : weights_[std::size_t(i) * space_.size() + j];
  }

  const NeuronSpace& space() const { return space_; }
  std::uint64_t stored_count() const { return stored_count_; }
  bool retains_stored() const { return retain_stored_; }
  const std::vector<Pattern>& stored() const { return stored_; }

  void reset();

  bool operator==(const AmariNetwork&) const = default;

 private:
  NeuronSpace space_;
  std::uint64_t stored_count_ = 0;
  std::vector<std::uint32_t> weights_;  // dense n*n, symmetric, zero diagonal
  bool retain_stored_;
  std::vector<Pattern> stored_;

  friend class NetworkCodec;
};

}  // namespace sam
