#include "sam/dynamics.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace sam {

namespace {

std::uint64_t pattern_hash(const Pattern& p) {
  std::uint64_t h = mix64(p.active().size());
  for (auto i : p.active()) h = mix64(h ^ (std::uint64_t(i) + 0x9e37));
  return h;
}

template <typename Score>
Pattern select_at_least(const NeuronSpace& space,
                        const std::vector<Score>& scores, std::uint64_t h) {
  std::vector<std::uint32_t> act;
  for (std::uint32_t i = 0; i < scores.size(); ++i)
    if (scores[i] >= h) act.push_back(i);
  return Pattern(space, std::move(act));
}

template <typename Score>
Pattern select_wta(const NeuronSpace& space, const std::vector<Score>& scores,
                   const RetrievalPolicy& policy) {
  Score cut;
  if (policy.kind == RetrievalPolicy::Kind::wta_max) {
    cut = *std::max_element(scores.begin(), scores.end());
  } else {
    std::uint32_t k = policy.keep_count;
    if (k == 0 || k > scores.size())
      throw std::invalid_argument("wta_kth: keep_count out of range");
    std::vector<Score> sorted(scores);
    std::nth_element(sorted.begin(), sorted.begin() + (k - 1), sorted.end(),
                     std::greater<Score>());
    cut = sorted[k - 1];  // k-th largest, multiplicity included
  }
  if (cut == 0) return Pattern::empty(space);  // no active evidence at all
  return select_at_least(space, scores, cut);
}

void gb_scores(const GBNetwork& net, const ClusterBits& state, bool use_som,
               std::vector<std::uint32_t>& out) {
  const std::uint32_t n = net.space().size();
  out.resize(n);
  for (std::uint32_t i = 0; i < n; ++i)
    out[i] = use_som ? net.som_score(state, i) : net.field(state, i);
}

Pattern gb_fill_empty(const GBNetwork& net, const Pattern& state) {
  const auto& space = net.space();
  auto bits = ClusterBits::from_pattern(state);
  std::vector<std::uint32_t> act(state.active());
  for (std::uint32_t a = 0; a < space.clusters(); ++a) {
    if (!bits.cluster_empty(a)) continue;
    for (std::uint32_t k = 0; k < space.cluster_size(); ++k)
      act.push_back(space.flat_index(a, k));
  }
  return Pattern(space, std::move(act));
}

/// SUM-OF-MAX threshold pass without the fill: keep score == c.
Pattern gb_som_keep(const GBNetwork& net, const Pattern& state) {
  auto bits = ClusterBits::from_pattern(state);
  const std::uint32_t c = net.space().clusters();
  std::vector<std::uint32_t> act;
  for (auto i : state.active())  // only active neurons can stay active
    if (net.som_score(bits, i) == c) act.push_back(i);
  return Pattern(net.space(), std::move(act));
}

}  // namespace

std::string RetrievalPolicy::name() const {
  switch (kind) {
    case Kind::fixed_threshold: return "fixed-h";
    case Kind::input_count: return "input-count";
    case Kind::wta_max: return "wta-max";
    case Kind::wta_kth: return "wta-kth";
    case Kind::gb_cluster_wta: return "cluster-wta";
    case Kind::gb_sum_of_max: return "som";
    case Kind::exhaustive: return "exhaustive";
  }
  return "?";
}

Pattern step_amari(const AmariNetwork& net, const Pattern& state,
                   std::uint64_t h) {
  if (state.space() != net.space())
    throw std::invalid_argument("step_amari: state space mismatch");
  std::vector<std::uint64_t> fields;
  net.fields(state.active(), fields);
  return select_at_least(net.space(), fields, h);
}

Pattern step_willshaw_threshold(const WillshawNetwork& net,
                                const Pattern& state, std::uint64_t h) {
  if (state.space() != net.space())
    throw std::invalid_argument("step_willshaw: state space mismatch");
  std::vector<std::uint32_t> scores;
  net.scores(state.to_bits(), scores);
  return select_at_least(net.space(), scores, h);
}

Pattern step_willshaw_wta(const WillshawNetwork& net, const Pattern& state,
                          const RetrievalPolicy& policy) {
  if (state.space() != net.space())
    throw std::invalid_argument("step_willshaw_wta: state space mismatch");
  if (state.is_empty()) return Pattern::empty(net.space());
  std::vector<std::uint32_t> scores;
  net.scores(state.to_bits(), scores);
  return select_wta(net.space(), scores, policy);
}

Pattern step_amari_wta(const AmariNetwork& net, const Pattern& state,
                       const RetrievalPolicy& policy) {
  if (state.space() != net.space())
    throw std::invalid_argument("step_amari_wta: state space mismatch");
  if (state.is_empty()) return Pattern::empty(net.space());
  std::vector<std::uint64_t> fields;
  net.fields(state.active(), fields);
  return select_wta(net.space(), fields, policy);
}

Pattern step_gb_threshold(const GBNetwork& net, const Pattern& state,
                          std::uint64_t h) {
  if (state.space() != net.space())
    throw std::invalid_argument("step_gb_threshold: state space mismatch");
  auto bits = ClusterBits::from_pattern(state);
  std::vector<std::uint32_t> scores;
  gb_scores(net, bits, /*use_som=*/false, scores);
  return select_at_least(net.space(), scores, h);
}

Pattern step_gb_wta(const GBNetwork& net, const Pattern& state, bool use_som) {
  if (state.space() != net.space())
    throw std::invalid_argument("step_gb_wta: state space mismatch");
  const auto& space = net.space();
  auto bits = ClusterBits::from_pattern(state);
  std::vector<std::uint32_t> scores;
  gb_scores(net, bits, use_som, scores);
  std::vector<std::uint32_t> act;
  for (std::uint32_t a = 0; a < space.clusters(); ++a) {
    const std::uint32_t base = space.flat_index(a, 0);
    std::uint32_t best = 0;
    for (std::uint32_t k = 0; k < space.cluster_size(); ++k)
      best = std::max(best, scores[base + k]);
    for (std::uint32_t k = 0; k < space.cluster_size(); ++k)
      if (scores[base + k] == best) act.push_back(base + k);
  }
  return Pattern(space, std::move(act));
}

Pattern step_gb_som(const GBNetwork& net, const Pattern& state) {
  if (state.space() != net.space())
    throw std::invalid_argument("step_gb_som: state space mismatch");
  return gb_som_keep(net, gb_fill_empty(net, state));
}

namespace {

Pattern apply_step(const AnyNetwork& net, const Pattern& state,
                   const RetrievalPolicy& policy, std::uint64_t fixed_h,
                   bool first_step) {
  using Kind = RetrievalPolicy::Kind;
  return std::visit(
      [&](const auto& n) -> Pattern {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AmariNetwork>) {
          switch (policy.kind) {
            case Kind::fixed_threshold:
            case Kind::input_count:
              return step_amari(n, state, fixed_h);
            case Kind::wta_max:
            case Kind::wta_kth:
              return step_amari_wta(n, state, policy);
            default:
              throw std::invalid_argument("policy not valid for amari");
          }
        } else if constexpr (std::is_same_v<T, WillshawNetwork>) {
          switch (policy.kind) {
            case Kind::fixed_threshold:
            case Kind::input_count:
              return step_willshaw_threshold(n, state, fixed_h);
            case Kind::wta_max:
            case Kind::wta_kth:
              return step_willshaw_wta(n, state, policy);
            default:
              throw std::invalid_argument("policy not valid for willshaw");
          }
        } else {
          switch (policy.kind) {
            case Kind::fixed_threshold:
            case Kind::input_count:
              return step_gb_threshold(n, state, fixed_h);
            case Kind::gb_cluster_wta:
              return step_gb_wta(n, state, policy.wta_uses_som);
            case Kind::gb_sum_of_max:
              return first_step ? step_gb_som(n, state)
                                : gb_som_keep(n, state);
            default:
              throw std::invalid_argument("policy not valid for gb");
          }
        }
      },
      net);
}

}  // namespace

Trajectory iterate(const AnyNetwork& net, const Pattern& input,
                   const RetrievalPolicy& policy, std::uint32_t max_iters) {
  if (max_iters < 1) throw std::invalid_argument("iterate: max_iters < 1");
  if (policy.kind == RetrievalPolicy::Kind::exhaustive)
    throw std::invalid_argument("iterate: exhaustive is not an iterated map");

  const std::uint64_t fixed_h =
      policy.kind == RetrievalPolicy::Kind::input_count ? input.weight()
                                                        : policy.threshold;

  Trajectory traj;
  traj.states.reserve(std::min<std::uint32_t>(max_iters + 1, 64));
  traj.states.push_back(input);

  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> seen;
  seen[pattern_hash(input)].push_back(0);

  for (std::uint32_t t = 1; t <= max_iters; ++t) {
    Pattern next =
        apply_step(net, traj.states.back(), policy, fixed_h, t == 1);
    const std::uint64_t h = pattern_hash(next);
    traj.states.push_back(std::move(next));
    const Pattern& cur = traj.states.back();

    if (auto it = seen.find(h); it != seen.end()) {
      for (std::uint32_t prev : it->second) {
        if (traj.states[prev] == cur) {
          if (prev == t - 1) {
            traj.outcome = Trajectory::Outcome::converged;
            traj.converged_at = t;
          } else {
            traj.outcome = Trajectory::Outcome::cycle;
            traj.cycle_entry = prev;
            traj.cycle_period = t - prev;
          }
          return traj;
        }
      }
    }
    seen[h].push_back(t);
  }
  traj.outcome = Trajectory::Outcome::truncated;
  return traj;
}

}  // namespace sam
