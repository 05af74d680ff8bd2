#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sam/bitvec.hpp"
#include "sam/pattern.hpp"
#include "sam/space.hpp"

namespace sam {

/// A pattern's active bits grouped per cluster, for block score kernels.
struct ClusterBits {
  std::uint32_t clusters = 0;
  std::uint32_t words_per_cluster = 0;
  std::vector<std::uint64_t> words;  // clusters * words_per_cluster

  static ClusterBits from_pattern(const Pattern& p);

  std::span<const std::uint64_t> cluster(std::uint32_t b) const {
    return {words.data() + std::size_t(b) * words_per_cluster,
            words_per_cluster};
  }
  bool cluster_empty(std::uint32_t b) const {
    auto w = cluster(b);
    for (auto x : w)
      if (x) return false;
    return true;
  }
};

/// Block-structured binary memory over c clusters of l neurons. Inter-cluster
/// weights live in l x l bit blocks; within a cluster only the self entry
/// W_{(a,k),(a,k)} can be 1, and it is 1 exactly when neuron (a,k) appears in
/// a stored message.
class GBNetwork {
 public:
  explicit GBNetwork(NeuronSpace space, bool retain_stored = true);

  /// Requires a GB-valid pattern (one active neuron per cluster).
  void store(const Pattern& pattern);

  /// S_{(a,k)} = number of active neurons connected to (a,k), self included.
  std::uint32_t field(const Pattern& state, std::uint32_t i) const;

  /// SUM-OF-MAX score: number of clusters holding at least one active neuron
  /// connected to (a,k), self included.
  std::uint32_t som_score(const Pattern& state, std::uint32_t i) const;

  std::uint32_t field(const ClusterBits& state, std::uint32_t i) const;
  std::uint32_t som_score(const ClusterBits& state, std::uint32_t i) const;

  /// True iff every pair of active neurons in distinct clusters is connected.
  /// Requires a GB-valid pattern.
  bool recognize(const Pattern& pattern) const;

  bool weight(std::uint32_t i, std::uint32_t j) const;
  bool self_active(std::uint32_t i) const { return self_.test(i); }

  std::span<const std::uint64_t> block_row(std::uint32_t a, std::uint32_t b,
                                           std::uint32_t k) const {
    return {blocks_.data() + block_offset(a, b) +
                std::size_t(k) * words_per_cluster_,
            words_per_cluster_};
  }

  const NeuronSpace& space() const { return space_; }
  std::uint64_t stored_count() const { return stored_count_; }
  bool retains_stored() const { return retain_stored_; }
  const std::vector<Pattern>& stored() const { return stored_; }

  void reset();

  bool operator==(const GBNetwork&) const = default;

 private:
  std::size_t block_offset(std::uint32_t a, std::uint32_t b) const {
    return (std::size_t(a) * clusters_ + b) * cluster_size_ *
           words_per_cluster_;
  }
  void set(std::uint32_t a, std::uint32_t ka, std::uint32_t b,
           std::uint32_t kb) {
    blocks_[block_offset(a, b) + std::size_t(ka) * words_per_cluster_ +
            (kb >> 6)] |= 1ULL << (kb & 63);
  }

  NeuronSpace space_;
  std::uint32_t clusters_;
  std::uint32_t cluster_size_;
  std::uint32_t words_per_cluster_;
  std::uint64_t stored_count_ = 0;
  // c*c blocks of l rows; row k of block (a,b) holds the cluster-b neighbors
  // of neuron (a,k). Both orientations are kept so rows are contiguous.
  std::vector<std::uint64_t> blocks_;
  BitVec self_;
  bool retain_stored_;
  std::vector<Pattern> stored_;

  friend class NetworkCodec;
};

}  // namespace sam
