#include "sam/gb.hpp"

#include <stdexcept>

namespace sam {

ClusterBits ClusterBits::from_pattern(const Pattern& p) {
  const auto& space = p.space();
  ClusterBits bits;
  bits.clusters = space.clusters();
  bits.words_per_cluster = (space.cluster_size() + 63) / 64;
  bits.words.assign(std::size_t(bits.clusters) * bits.words_per_cluster, 0);
  for (auto i : p.active()) {
    auto a = space.cluster_of(i);
    auto k = space.offset_of(i);
    bits.words[std::size_t(a) * bits.words_per_cluster + (k >> 6)] |=
        1ULL << (k & 63);
  }
  return bits;
}

GBNetwork::GBNetwork(NeuronSpace space, bool retain_stored)
    : space_(space), retain_stored_(retain_stored) {
  if (!space_.has_layout())
    throw std::invalid_argument("GBNetwork: space has no cluster layout");
  clusters_ = space_.clusters();
  cluster_size_ = space_.cluster_size();
  words_per_cluster_ = (cluster_size_ + 63) / 64;
  const std::size_t total = std::size_t(clusters_) * clusters_ *
                            cluster_size_ * words_per_cluster_;
  if (total > (std::size_t(1) << 28))
    throw std::invalid_argument("GBNetwork: layout too large");
  blocks_.assign(total, 0);
  self_ = BitVec(space_.size());
}

void GBNetwork::store(const Pattern& pattern) {
  if (pattern.space() != space_)
    throw std::invalid_argument("store: pattern space mismatch");
  if (!pattern.is_gb_valid())
    throw std::invalid_argument("store: pattern is not GB-valid");
  const auto& act = pattern.active();
  for (std::uint32_t a = 0; a < clusters_; ++a) {
    self_.set(act[a]);
    const std::uint32_t ka = space_.offset_of(act[a]);
    for (std::uint32_t b = a + 1; b < clusters_; ++b) {
      const std::uint32_t kb = space_.offset_of(act[b]);
      set(a, ka, b, kb);
      set(b, kb, a, ka);
    }
  }
  ++stored_count_;
  if (retain_stored_) stored_.push_back(pattern);
}

std::uint32_t GBNetwork::field(const Pattern& state, std::uint32_t i) const {
  if (state.space() != space_)
    throw std::invalid_argument("field: state space mismatch");
  auto bits = ClusterBits::from_pattern(state);
  return field(bits, i);
}

std::uint32_t GBNetwork::field(const ClusterBits& state,
                               std::uint32_t i) const {
  const std::uint32_t a = space_.cluster_of(i);
  const std::uint32_t k = space_.offset_of(i);
  std::uint32_t s = 0;
  for (std::uint32_t b = 0; b < clusters_; ++b) {
    if (b == a) continue;
    s += static_cast<std::uint32_t>(
        and_popcount(block_row(a, b, k), state.cluster(b)));
  }
  // within the own cluster only the self entry can contribute
  if (self_.test(i) &&
      (state.cluster(a)[k >> 6] >> (k & 63) & 1ULL))
    ++s;
  return s;
}

std::uint32_t GBNetwork::som_score(const Pattern& state,
                                   std::uint32_t i) const {
  if (state.space() != space_)
    throw std::invalid_argument("som_score: state space mismatch");
  auto bits = ClusterBits::from_pattern(state);
  return som_score(bits, i);
}

std::uint32_t GBNetwork::som_score(const ClusterBits& state,
                                   std::uint32_t i) const {
  const std::uint32_t a = space_.cluster_of(i);
  const std::uint32_t k = space_.offset_of(i);
  std::uint32_t s = 0;
  for (std::uint32_t b = 0; b < clusters_; ++b) {
    if (b == a) continue;
    s += and_any(block_row(a, b, k), state.cluster(b)) ? 1 : 0;
  }
  if (self_.test(i) &&
      (state.cluster(a)[k >> 6] >> (k & 63) & 1ULL))
    ++s;
  return s;
}

bool GBNetwork::recognize(const Pattern& pattern) const {
  if (pattern.space() != space_)
    throw std::invalid_argument("recognize: pattern space mismatch");
  if (!pattern.is_gb_valid())
    throw std::invalid_argument("recognize: pattern is not GB-valid");
  const auto& act = pattern.active();
  for (std::uint32_t a = 0; a < clusters_; ++a)
    for (std::uint32_t b = a + 1; b < clusters_; ++b)
      if (!weight(act[a], act[b])) return false;
  return true;
}

bool GBNetwork::weight(std::uint32_t i, std::uint32_t j) const {
  const std::uint32_t a = space_.cluster_of(i);
  const std::uint32_t b = space_.cluster_of(j);
  if (a == b) return i == j && self_.test(i);
  const std::uint32_t ka = space_.offset_of(i);
  const std::uint32_t kb = space_.offset_of(j);
  return (block_row(a, b, ka)[kb >> 6] >> (kb & 63)) & 1ULL;
}

void GBNetwork::reset() {
  std::fill(blocks_.begin(), blocks_.end(), 0ULL);
  self_.clear();
  stored_count_ = 0;
  stored_.clear();
}

}  // namespace sam
