#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

namespace sam {

/// c clusters of l neurons each; neuron (a, k) lives at flat index a*l + k.
struct ClusterLayout {
  std::uint32_t clusters = 0;      // c
  std::uint32_t cluster_size = 0;  // l

  bool operator==(const ClusterLayout&) const = default;
};

/// The neuron universe a pattern or network is defined over: n neurons,
/// optionally organized into clusters (n = c*l).
class NeuronSpace {
 public:
  explicit NeuronSpace(std::uint32_t n) : n_(n) {
    if (n < 2) throw std::invalid_argument("NeuronSpace: need n >= 2");
  }

  NeuronSpace(std::uint32_t clusters, std::uint32_t cluster_size)
      : n_(clusters * cluster_size),
        layout_(ClusterLayout{clusters, cluster_size}) {
    if (clusters < 2 || cluster_size < 1)
      throw std::invalid_argument("NeuronSpace: need c >= 2 and l >= 1");
    if (n_ < 2) throw std::invalid_argument("NeuronSpace: need n >= 2");
  }

  std::uint32_t size() const { return n_; }
  bool has_layout() const { return layout_.has_value(); }
  const std::optional<ClusterLayout>& layout() const { return layout_; }

  std::uint32_t clusters() const { return require_layout().clusters; }
  std::uint32_t cluster_size() const { return require_layout().cluster_size; }

  std::uint32_t flat_index(std::uint32_t cluster, std::uint32_t k) const {
    return cluster * require_layout().cluster_size + k;
  }
  std::uint32_t cluster_of(std::uint32_t i) const {
    return i / require_layout().cluster_size;
  }
  std::uint32_t offset_of(std::uint32_t i) const {
    return i % require_layout().cluster_size;
  }

  bool operator==(const NeuronSpace&) const = default;

 private:
  const ClusterLayout& require_layout() const {
    if (!layout_) throw std::logic_error("NeuronSpace: no cluster layout");
    return *layout_;
  }

  std::uint32_t n_;
  std::optional<ClusterLayout> layout_;
};

}  // namespace sam
