#include "sam/willshaw.hpp"

#include <bit>
#include <stdexcept>

namespace sam {

namespace {
constexpr std::uint32_t kMaxWillshawNeurons = 65536;  // 512 MiB bitmap
}

WillshawNetwork::WillshawNetwork(NeuronSpace space, bool retain_stored)
    : space_(space),
      words_per_row_((space.size() + 63) / 64),
      retain_stored_(retain_stored) {
  if (space_.size() > kMaxWillshawNeurons)
    throw std::invalid_argument("WillshawNetwork: n too large");
  rows_.assign(std::size_t(space_.size()) * words_per_row_, 0);
}

void WillshawNetwork::store(const Pattern& pattern) {
  if (pattern.space() != space_)
    throw std::invalid_argument("store: pattern space mismatch");
  const auto& act = pattern.active();
  for (std::size_t a = 0; a < act.size(); ++a) {
    set(act[a], act[a]);  // memory effect: used neurons get a self loop
    for (std::size_t b = a + 1; b < act.size(); ++b) {
      set(act[a], act[b]);
      set(act[b], act[a]);
    }
  }
  ++stored_count_;
  if (retain_stored_) stored_.push_back(pattern);
}

std::uint32_t WillshawNetwork::score(const Pattern& state,
                                     std::uint32_t i) const {
  if (state.space() != space_)
    throw std::invalid_argument("score: state space mismatch");
  std::uint32_t s = 0;
  for (auto j : state.active()) s += weight(i, j);
  return s;
}

void WillshawNetwork::scores(const BitVec& state,
                             std::vector<std::uint32_t>& out) const {
  const std::size_t n = space_.size();
  out.resize(n);
  auto sw = state.words();
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t* r = rows_.data() + i * words_per_row_;
    std::uint32_t s = 0;
    for (std::size_t w = 0; w < words_per_row_; ++w)
      s += std::popcount(r[w] & sw[w]);
    out[i] = s;
  }
}

bool WillshawNetwork::recognize(const Pattern& pattern) const {
  if (pattern.space() != space_)
    throw std::invalid_argument("recognize: pattern space mismatch");
  const auto& act = pattern.active();
  for (std::size_t a = 0; a < act.size(); ++a)
    for (std::size_t b = a + 1; b < act.size(); ++b)
      if (!weight(act[a], act[b])) return false;
  return true;
}

void WillshawNetwork::reset() {
  std::fill(rows_.begin(), rows_.end(), 0ULL);
  stored_count_ = 0;
  stored_.clear();
}

}  // namespace sam
