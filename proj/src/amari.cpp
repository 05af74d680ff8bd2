#include "sam/amari.hpp"

#include <limits>
#include <stdexcept>

namespace sam {

namespace {
constexpr std::uint32_t kMaxAmariNeurons = 16384;  // 1 GiB of counts
}

AmariNetwork::AmariNetwork(NeuronSpace space, bool retain_stored)
    : space_(space), retain_stored_(retain_stored) {
  if (space_.size() > kMaxAmariNeurons)
    throw std::invalid_argument("AmariNetwork: n too large for dense counts");
  weights_.assign(std::size_t(space_.size()) * space_.size(), 0);
}

void AmariNetwork::store(const Pattern& pattern) {
  if (pattern.space() != space_)
    throw std::invalid_argument("store: pattern space mismatch");
  const auto& act = pattern.active();
  const std::size_t n = space_.size();
  for (std::size_t a = 0; a < act.size(); ++a) {
    for (std::size_t b = a + 1; b < act.size(); ++b) {
      ++weights_[std::size_t(act[a]) * n + act[b]];
      ++weights_[std::size_t(act[b]) * n + act[a]];
    }
  }
  ++stored_count_;
  if (retain_stored_) stored_.push_back(pattern);
}

std::uint64_t AmariNetwork::field(const Pattern& state,
                                  std::uint32_t i) const {
  if (state.space() != space_)
    throw std::invalid_argument("field: state space mismatch");
  const std::size_t n = space_.size();
  std::uint64_t s = 0;
  for (auto j : state.active())
    if (j != i) s += weights_[std::size_t(i) * n + j];
  return s;
}

void AmariNetwork::fields(const std::vector<std::uint32_t>& active,
                          std::vector<std::uint64_t>& out) const {
  const std::size_t n = space_.size();
  out.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t* row = weights_.data() + i * n;
    std::uint64_t s = 0;
    for (auto j : active) s += row[j];  // diagonal is zero, no branch needed
    out[i] = s;
  }
}

void AmariNetwork::reset() {
  std::fill(weights_.begin(), weights_.end(), 0);
  stored_count_ = 0;
  stored_.clear();
}

}  // namespace sam
