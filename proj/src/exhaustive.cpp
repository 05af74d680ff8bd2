#include <algorithm>
#include <stdexcept>

#include "sam/dynamics.hpp"

namespace sam {

namespace {

using Status = ExhaustiveResult::Status;

struct BudgetExceeded {};

/// Completion search over a generic binary adjacency oracle. Candidates are
/// scanned in index order; a depth-first walk keeps only mutually connected
/// choices. Every visited search node spends one unit of budget.
template <typename Connected, typename OnLeaf>
void enumerate_cliques(const std::vector<std::uint32_t>& candidates,
                       std::uint32_t need, Connected&& connected,
                       OnLeaf&& on_leaf, std::uint64_t max_candidates) {
  std::vector<std::uint32_t> chosen;
  chosen.reserve(need);
  std::uint64_t budget = 0;

  auto recurse = [&](auto&& self, std::size_t from) -> void {
    if (chosen.size() == need) {
      on_leaf(chosen);
      return;
    }
    const std::size_t remaining = need - chosen.size();
    if (candidates.size() - from < remaining) return;
    for (std::size_t idx = from; idx < candidates.size(); ++idx) {
      if (++budget > max_candidates) throw BudgetExceeded{};
      const std::uint32_t cand = candidates[idx];
      bool ok = true;
      for (auto c : chosen)
        if (!connected(c, cand)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      chosen.push_back(cand);
      self(self, idx + 1);
      chosen.pop_back();
    }
  };
  recurse(recurse, 0);
}

template <typename Weight>
ExhaustiveResult search_flat(const NeuronSpace& space,
                             const Pattern& partial,
                             std::uint32_t target_size,
                             std::uint64_t max_candidates, RngStream& rng,
                             Weight&& weight, bool maximize_weight) {
  ExhaustiveResult result;
  const auto& known = partial.active();
  if (known.size() > target_size)
    throw std::invalid_argument("retrieve_exhaustive: partial too large");

  // the partial itself must span a clique, otherwise nothing completes it
  for (std::size_t a = 0; a < known.size(); ++a)
    for (std::size_t b = a + 1; b < known.size(); ++b)
      if (weight(known[a], known[b]) == 0) return result;

  std::vector<std::uint32_t> candidates;
  for (std::uint32_t i = 0; i < space.size(); ++i) {
    if (partial.contains(i)) continue;
    bool ok = true;
    for (auto p : known)
      if (weight(p, i) == 0) {
        ok = false;
        break;
      }
    if (ok) candidates.push_back(i);
  }

  const std::uint32_t need =
      target_size - static_cast<std::uint32_t>(known.size());
  std::uint64_t partial_weight = 0;
  for (std::size_t a = 0; a < known.size(); ++a)
    for (std::size_t b = a + 1; b < known.size(); ++b)
      partial_weight += weight(known[a], known[b]);

  std::vector<std::uint32_t> best;
  std::uint64_t best_weight = 0;
  std::uint64_t best_count = 0;

  auto on_leaf = [&](const std::vector<std::uint32_t>& chosen) {
    ++result.completions;
    if (maximize_weight) {
      std::uint64_t w = partial_weight;
      for (std::size_t a = 0; a < chosen.size(); ++a) {
        for (auto p : known) w += weight(chosen[a], p);
        for (std::size_t b = a + 1; b < chosen.size(); ++b)
          w += weight(chosen[a], chosen[b]);
      }
      if (best_count == 0 || w > best_weight) {
        best_weight = w;
        best_count = 1;
        best = chosen;
      } else if (w == best_weight) {
        ++best_count;
        if (rng.below(best_count) == 0) best = chosen;
      }
    } else {
      // uniform choice among all valid completions
      if (rng.below(result.completions) == 0) best = chosen;
    }
  };

  try {
    enumerate_cliques(candidates, need,
                      [&](std::uint32_t a, std::uint32_t b) {
                        return weight(a, b) != 0;
                      },
                      on_leaf, max_candidates);
  } catch (const BudgetExceeded&) {
    result.status = Status::capacity_exceeded;
    return result;
  }

  if (result.completions == 0) return result;  // not_found
  std::vector<std::uint32_t> act(known);
  act.insert(act.end(), best.begin(), best.end());
  result.status = Status::found;
  result.pattern = Pattern(space, std::move(act));
  return result;
}

ExhaustiveResult search_gb(const GBNetwork& net, const Pattern& partial,
                           std::uint32_t target_size,
                           std::uint64_t max_candidates, RngStream& rng) {
  ExhaustiveResult result;
  const auto& space = net.space();
  const std::uint32_t c = space.clusters();
  if (target_size != c)
    throw std::invalid_argument(
        "retrieve_exhaustive: gb completions must span all clusters");

  std::vector<std::int64_t> occupant(c, -1);
  for (auto i : partial.active()) {
    auto a = space.cluster_of(i);
    if (occupant[a] >= 0)
      throw std::invalid_argument(
          "retrieve_exhaustive: partial has two neurons in one cluster");
    occupant[a] = i;
  }
  const auto& known = partial.active();
  for (std::size_t a = 0; a < known.size(); ++a)
    for (std::size_t b = a + 1; b < known.size(); ++b)
      if (!net.weight(known[a], known[b])) return result;

  std::vector<std::uint32_t> empty_clusters;
  for (std::uint32_t a = 0; a < c; ++a)
    if (occupant[a] < 0) empty_clusters.push_back(a);

  // per empty cluster, the neurons connected to every known neuron
  std::vector<std::vector<std::uint32_t>> options(empty_clusters.size());
  for (std::size_t e = 0; e < empty_clusters.size(); ++e) {
    const std::uint32_t b = empty_clusters[e];
    for (std::uint32_t k = 0; k < space.cluster_size(); ++k) {
      const std::uint32_t i = space.flat_index(b, k);
      bool ok = true;
      for (auto p : known)
        if (!net.weight(p, i)) {
          ok = false;
          break;
        }
      if (ok) options[e].push_back(i);
    }
  }

  std::vector<std::uint32_t> chosen(empty_clusters.size(), 0);
  std::vector<std::uint32_t> best;
  std::uint64_t budget = 0;

  auto recurse = [&](auto&& self, std::size_t depth) -> void {
    if (depth == empty_clusters.size()) {
      ++result.completions;
      if (rng.below(result.completions) == 0)
        best.assign(chosen.begin(), chosen.end());
      return;
    }
    for (auto cand : options[depth]) {
      if (++budget > max_candidates) throw BudgetExceeded{};
      bool ok = true;
      for (std::size_t d = 0; d < depth; ++d)
        if (!net.weight(chosen[d], cand)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      chosen[depth] = cand;
      self(self, depth + 1);
    }
  };

  try {
    recurse(recurse, 0);
  } catch (const BudgetExceeded&) {
    result.status = Status::capacity_exceeded;
    return result;
  }

  if (result.completions == 0) return result;
  std::vector<std::uint32_t> act(known);
  act.insert(act.end(), best.begin(), best.end());
  result.status = Status::found;
  result.pattern = Pattern(space, std::move(act));
  return result;
}

}  // namespace

ExhaustiveResult retrieve_exhaustive(const AnyNetwork& net,
                                     const Pattern& partial,
                                     std::uint32_t target_size,
                                     std::uint64_t max_candidates,
                                     RngStream& rng) {
  if (space_of(net) != partial.space())
    throw std::invalid_argument("retrieve_exhaustive: space mismatch");
  return std::visit(
      [&](const auto& n) -> ExhaustiveResult {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AmariNetwork>) {
          return search_flat(
              n.space(), partial, target_size, max_candidates, rng,
              [&](std::uint32_t a, std::uint32_t b) -> std::uint64_t {
                return n.weight(a, b);
              },
              /*maximize_weight=*/true);
        } else if constexpr (std::is_same_v<T, WillshawNetwork>) {
          return search_flat(
              n.space(), partial, target_size, max_candidates, rng,
              [&](std::uint32_t a, std::uint32_t b) -> std::uint64_t {
                return n.weight(a, b) ? 1 : 0;
              },
              /*maximize_weight=*/false);
        } else {
          return search_gb(n, partial, target_size, max_candidates, rng);
        }
      },
      net);
}

}  // namespace sam
