#pragma once

#include <cstdint>
#include <vector>

#include "sam/bitvec.hpp"
#include "sam/rng.hpp"
#include "sam/space.hpp"

namespace sam {

/// A sparse 0-1 message over a NeuronSpace, held as its sorted active set.
/// Immutable after construction.
class Pattern {
 public:
  Pattern(NeuronSpace space, std::vector<std::uint32_t> active);

  static Pattern empty(NeuronSpace space) { return Pattern(space, {}); }

  const NeuronSpace& space() const { return space_; }
  const std::vector<std::uint32_t>& active() const { return active_; }
  std::uint32_t weight() const {
    return static_cast<std::uint32_t>(active_.size());
  }
  bool is_empty() const { return active_.empty(); }
  bool contains(std::uint32_t i) const;

  /// Exactly one active neuron in every cluster of the space's layout.
  bool is_gb_valid() const;

  BitVec to_bits() const;

  bool operator==(const Pattern&) const = default;

 private:
  NeuronSpace space_;
  std::vector<std::uint32_t> active_;  // sorted, unique, each < space.size()
};

/// How many of a pattern's 1s to delete, and how to pick them.
struct ErasureSpec {
  enum class Mode {
    active,   // uniform over active bits
    cluster,  // uniform over clusters; removes the cluster's single active bit
  };

  static ErasureSpec count(std::uint32_t f, Mode mode = Mode::active) {
    return ErasureSpec{mode, f, -1.0};
  }
  static ErasureSpec fraction(double rho, Mode mode = Mode::active);

  /// Deleted-bit count for a pattern of the given weight.
  std::uint32_t resolve_count(std::uint32_t weight) const;

  Mode mode = Mode::active;
  std::uint32_t erase_count = 0;
  double rho = -1.0;  // < 0 means "use erase_count"
};

/// Each neuron active independently with probability p. An all-zero draw is
/// a legal pattern; callers decide whether to reject it.
Pattern gen_iid(const NeuronSpace& space, double p, RngStream& rng);

/// Uniformly random pattern with exactly `count` active neurons.
Pattern gen_exact_count(const NeuronSpace& space, std::uint32_t count,
                        RngStream& rng);

/// One uniformly random active neuron per cluster, independent across
/// clusters. Requires a cluster layout.
Pattern gen_gb(const NeuronSpace& space, RngStream& rng);

/// Delete active bits per `spec`; the surviving set is a uniformly random
/// subset of the input's active set of the implied size.
Pattern erase(const Pattern& pattern, const ErasureSpec& spec, RngStream& rng);

}  // namespace sam
