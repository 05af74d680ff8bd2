#include "sam/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sam {

std::vector<std::uint32_t> RngStream::subset(std::uint32_t n, std::uint32_t k) {
  if (k > n) throw std::invalid_argument("subset: k > n");
  std::vector<std::uint32_t> out;
  out.reserve(k);
  if (k == 0) return out;
  if (k * 2 <= n || n > (1u << 20)) {
    // Floyd's algorithm; membership scan is fine at the k we use
    for (std::uint32_t j = n - k; j < n; ++j) {
      std::uint32_t t = below32(j + 1);
      if (std::find(out.begin(), out.end(), t) != out.end()) t = j;
      out.push_back(t);
    }
  } else {
    // dense k: partial Fisher-Yates over an explicit index array
    std::vector<std::uint32_t> idx(n);
    for (std::uint32_t i = 0; i < n; ++i) idx[i] = i;
    for (std::uint32_t i = 0; i < k; ++i) {
      std::uint32_t j = i + below32(n - i);
      std::swap(idx[i], idx[j]);
    }
    out.assign(idx.begin(), idx.begin() + k);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint32_t> RngStream::bernoulli_indices(std::uint32_t n,
                                                        double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("bernoulli_indices: p must be in (0,1)");
  std::vector<std::uint32_t> out;
  const double denom = std::log1p(-p);
  std::uint64_t i = 0;
  while (i < n) {
    double u = 1.0 - unit();  // (0, 1]
    double gap = std::floor(std::log(u) / denom);
    i += gap >= static_cast<double>(n) ? static_cast<std::uint64_t>(n)
                                       : static_cast<std::uint64_t>(gap);
    if (i >= n) break;
    out.push_back(static_cast<std::uint32_t>(i));
    ++i;
  }
  return out;
}

}  // namespace sam
