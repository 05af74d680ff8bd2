#include "sam/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sam {

Pattern::Pattern(NeuronSpace space, std::vector<std::uint32_t> active)
    : space_(space), active_(std::move(active)) {
  std::sort(active_.begin(), active_.end());
  if (std::adjacent_find(active_.begin(), active_.end()) != active_.end())
    throw std::invalid_argument("Pattern: duplicate active index");
  if (!active_.empty() && active_.back() >= space_.size())
    throw std::invalid_argument("Pattern: active index out of range");
}

bool Pattern::contains(std::uint32_t i) const {
  return std::binary_search(active_.begin(), active_.end(), i);
}

bool Pattern::is_gb_valid() const {
  if (!space_.has_layout()) return false;
  if (active_.size() != space_.clusters()) return false;
  for (std::uint32_t a = 0; a < space_.clusters(); ++a)
    if (space_.cluster_of(active_[a]) != a) return false;
  return true;
}

BitVec Pattern::to_bits() const {
  BitVec bits(space_.size());
  for (auto i : active_) bits.set(i);
  return bits;
}

ErasureSpec ErasureSpec::fraction(double rho, Mode mode) {
  if (!(rho >= 0.0 && rho < 1.0))
    throw std::invalid_argument("ErasureSpec: rho must be in [0,1)");
  ErasureSpec spec;
  spec.mode = mode;
  spec.rho = rho;
  return spec;
}

std::uint32_t ErasureSpec::resolve_count(std::uint32_t weight) const {
  if (rho >= 0.0)
    return static_cast<std::uint32_t>(std::lround(rho * weight));
  return erase_count;
}

Pattern gen_iid(const NeuronSpace& space, double p, RngStream& rng) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("gen_iid: p must be in (0,1)");
  return Pattern(space, rng.bernoulli_indices(space.size(), p));
}

Pattern gen_exact_count(const NeuronSpace& space, std::uint32_t count,
                        RngStream& rng) {
  if (count < 1 || count > space.size())
    throw std::invalid_argument("gen_exact_count: count out of range");
  return Pattern(space, rng.subset(space.size(), count));
}

Pattern gen_gb(const NeuronSpace& space, RngStream& rng) {
  if (!space.has_layout())
    throw std::invalid_argument("gen_gb: space has no cluster layout");
  std::vector<std::uint32_t> active(space.clusters());
  for (std::uint32_t a = 0; a < space.clusters(); ++a)
    active[a] = space.flat_index(a, rng.below32(space.cluster_size()));
  return Pattern(space, std::move(active));
}

Pattern erase(const Pattern& pattern, const ErasureSpec& spec,
              RngStream& rng) {
  const std::uint32_t weight = pattern.weight();
  const std::uint32_t f = spec.resolve_count(weight);
  if (f > weight) throw std::invalid_argument("erase: count exceeds weight");
  if (f == 0) return pattern;

  if (spec.mode == ErasureSpec::Mode::cluster) {
    if (!pattern.is_gb_valid())
      throw std::invalid_argument("erase: cluster mode needs a GB pattern");
    // one active neuron per cluster, so dropping f clusters drops f bits
    auto doomed = rng.subset(pattern.space().clusters(), f);
    std::vector<std::uint32_t> kept;
    kept.reserve(weight - f);
    for (auto i : pattern.active()) {
      auto a = pattern.space().cluster_of(i);
      if (!std::binary_search(doomed.begin(), doomed.end(), a))
        kept.push_back(i);
    }
    return Pattern(pattern.space(), std::move(kept));
  }

  auto doomed = rng.subset(weight, f);
  std::vector<std::uint32_t> kept;
  kept.reserve(weight - f);
  std::uint32_t d = 0;
  for (std::uint32_t pos = 0; pos < weight; ++pos) {
    if (d < f && doomed[d] == pos) {
      ++d;
      continue;
    }
    kept.push_back(pattern.active()[pos]);
  }
  return Pattern(pattern.space(), std::move(kept));
}

}  // namespace sam
